//! Core graph types: undirected weighted graphs, unweighted helper graphs,
//! and center sets.
//!
//! Graphs are immutable after construction and validated on entry: simple
//! (no loops, no parallel edges), vertex ids dense in `[0, n)`, and all edge
//! lengths finite and strictly positive. Disconnected graphs are accepted
//! here; operations that need connectivity check it themselves.

use std::collections::VecDeque;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::length::Length;
use crate::Result;

/// Index of a vertex, dense in `[0, n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub len: Length,
}

/// Grid cell for embedded graphs, `(row, col)`.
pub type Cell = (i64, i64);

/// An undirected weighted graph with optional name, grid coordinates, and
/// vertex labels.
///
/// Coordinates only make sense for (partial) subgrids and are validated for
/// distinctness; the stronger unit-step property is checked by the
/// operations that require it. Labels are display names used by the
/// instance formats and the CLI (for example the built-in instances label
/// vertices the way the worked examples do).
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(VertexId, Length)>>,
    name: Option<String>,
    coords: Option<Vec<Cell>>,
    labels: Option<Vec<String>>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, Length)>) -> Result<Self> {
        let mut es: Vec<Edge> = Vec::with_capacity(edges.len());
        for (a, b, len) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a},{b}) references a vertex outside [0,{n})"
                )));
            }
            if a == b {
                return Err(Error::invalid(format!("loop edge at vertex {a}")));
            }
            if !len.is_finite() || len.is_zero() {
                return Err(Error::invalid(format!(
                    "edge ({a},{b}) must have a finite positive length, got {len}"
                )));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            es.push(Edge {
                u: VertexId(u),
                v: VertexId(v),
                len,
            });
        }
        es.sort_by_key(|e| (e.u, e.v));
        if es.windows(2).any(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::invalid("duplicate edge"));
        }
        let mut adj: Vec<Vec<(VertexId, Length)>> = vec![Vec::new(); n];
        for e in &es {
            adj[e.u.0].push((e.v, e.len.clone()));
            adj[e.v.0].push((e.u, e.len.clone()));
        }
        for list in &mut adj {
            list.sort_by_key(|(v, _)| *v);
        }
        Ok(WeightedGraph {
            n,
            edges: es,
            adj,
            name: None,
            coords: None,
            labels: None,
        })
    }

    /// All edges get length one.
    pub fn uniform(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            edges.iter().map(|&(a, b)| (a, b, Length::one())).collect(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_coords(mut self, coords: Vec<Cell>) -> Result<Self> {
        if coords.len() != self.n {
            return Err(Error::invalid(format!(
                "coords cover {} vertices, graph has {}",
                coords.len(),
                self.n
            )));
        }
        let mut cells = coords.clone();
        cells.sort_unstable();
        if cells.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("two vertices share a grid cell"));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::invalid(format!(
                "labels cover {} vertices, graph has {}",
                labels.len(),
                self.n
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate vertex label"));
        }
        if labels.iter().any(|l| l.is_empty() || l.contains([' ', ','])) {
            return Err(Error::invalid("labels must be nonempty, without spaces or commas"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors with edge lengths, ascending by vertex id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, Length)] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn coords(&self) -> Option<&[Cell]> {
        self.coords.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The display label of a vertex: its label when present, else its id.
    pub fn label_of(&self, v: VertexId) -> String {
        match &self.labels {
            Some(ls) => ls[v.0].clone(),
            None => v.0.to_string(),
        }
    }

    /// Resolves a user-facing token to a vertex: label first, then numeric id.
    pub fn resolve_vertex(&self, token: &str) -> Result<VertexId> {
        if let Some(ls) = &self.labels {
            if let Some(i) = ls.iter().position(|l| l == token) {
                return Ok(VertexId(i));
            }
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.n => Ok(VertexId(i)),
            _ => Err(Error::invalid(format!("unknown vertex {token:?}"))),
        }
    }

    /// True when every edge has length exactly one.
    pub fn is_uniform(&self) -> bool {
        self.edges.iter().all(|e| e.len == Length::one())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([VertexId(0)]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for (w, _) in self.neighbors(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    count += 1;
                    queue.push_back(*w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Average degree `2m/n` as an exact rational.
    pub fn avg_degree(&self) -> BigRational {
        assert!(self.n > 0, "average degree of the empty graph");
        BigRational::new(BigInt::from(2 * self.edges.len()), BigInt::from(self.n))
    }

    /// Smallest and largest edge length, if the graph has edges.
    pub fn length_range(&self) -> Option<(Length, Length)> {
        let mut it = self.edges.iter().map(|e| &e.len);
        let first = it.next()?;
        let mut lo = first;
        let mut hi = first;
        for l in it {
            if l < lo {
                lo = l;
            }
            if l > hi {
                hi = l;
            }
        }
        Some((lo.clone(), hi.clone()))
    }

    /// The same graph with lengths dropped.
    pub fn to_unweighted(&self) -> UnweightedGraph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u.0, e.v.0)).collect();
        UnweightedGraph::new(self.n, &edges).expect("validated edges stay valid")
    }
}

/// A set of shelter vertices, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct CenterSet(Vec<VertexId>);

impl CenterSet {
    pub fn new(mut ids: Vec<VertexId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        CenterSet(ids)
    }

    pub fn from_indices(ids: &[usize]) -> Self {
        Self::new(ids.iter().copied().map(VertexId).collect())
    }

    pub fn empty() -> Self {
        CenterSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn validate_for(&self, g: &WeightedGraph) -> Result<()> {
        match self.0.iter().find(|v| v.0 >= g.n()) {
            Some(v) => Err(Error::invalid(format!(
                "center {v} outside the graph's {} vertices",
                g.n()
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for CenterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for CenterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<VertexId> for CenterSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        CenterSet::new(iter.into_iter().collect())
    }
}

/// An unweighted simple graph; used for threshold graphs and the
/// independence/domination subroutines.
#[derive(Clone, Debug)]
pub struct UnweightedGraph {
    n: usize,
    adj: Vec<Vec<VertexId>>,
}

impl UnweightedGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a},{b}) references a vertex outside [0,{n})"
                )));
            }
            if a == b {
                return Err(Error::invalid(format!("loop edge at vertex {a}")));
            }
            adj[a].push(VertexId(b));
            adj[b].push(VertexId(a));
        }
        for list in &mut adj {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("duplicate edge"));
            }
        }
        Ok(UnweightedGraph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.0].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }
}
