//! Shortest-path machinery: exact Dijkstra, scenario-restricted distances,
//! metric closure, threshold graphs, distance sets, and uniform edge
//! expansion.
//!
//! A scenario `s` turns the undirected graph into an operational digraph:
//! every edge incident to `s` is directed away from `s`, all other edges
//! stay two-way. Consequently no route may pass through or end at the
//! scenario vertex, while routes may still start there.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::Error;
use crate::graph::{CenterSet, UnweightedGraph, VertexId, WeightedGraph};
use crate::length::Length;
use crate::Result;

/// Dense matrix of pairwise distances; `Infinity` marks unreachable pairs.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Vec<Length>>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: VertexId, j: VertexId) -> &Length {
        &self.d[i.0][j.0]
    }

    pub fn row(&self, i: VertexId) -> &[Length] {
        &self.d[i.0]
    }

    /// Smallest distance from `i` into `set`; `Infinity` for an empty set.
    pub fn to_set(&self, i: VertexId, set: &CenterSet) -> Length {
        let mut best = Length::Infinity;
        for c in set.iter() {
            let d = self.get(i, c);
            if *d < best {
                best = d.clone();
            }
        }
        best
    }
}

fn dijkstra_from<F>(n: usize, sources: &[VertexId], mut arcs_from: F) -> Vec<Length>
where
    F: FnMut(VertexId) -> Vec<(VertexId, Length)>,
{
    let mut dist: Vec<Length> = vec![Length::Infinity; n];
    let mut heap: BinaryHeap<(Reverse<Length>, VertexId)> = BinaryHeap::new();
    for &s in sources {
        if dist[s.0] != Length::zero() {
            dist[s.0] = Length::zero();
            heap.push((Reverse(Length::zero()), s));
        }
    }
    while let Some((Reverse(d), v)) = heap.pop() {
        if d > dist[v.0] {
            continue;
        }
        for (w, len) in arcs_from(v) {
            let cand = &d + &len;
            if cand < dist[w.0] {
                dist[w.0] = cand.clone();
                heap.push((Reverse(cand), w));
            }
        }
    }
    dist
}

/// Single-source distances in the plain undirected graph.
pub fn dijkstra(g: &WeightedGraph, source: VertexId) -> Vec<Length> {
    dijkstra_from(g.n(), &[source], |v| g.neighbors(v).to_vec())
}

/// All-pairs distances by one Dijkstra run per source.
pub fn all_pairs_shortest(g: &WeightedGraph) -> DistanceMatrix {
    let d = (0..g.n()).map(|i| dijkstra(g, VertexId(i))).collect();
    DistanceMatrix { n: g.n(), d }
}

/// Single-source distances in the scenario digraph for `s`: arcs may never
/// enter `s`, so `d^s(j, s) = inf` for every `j != s`.
pub fn scenario_dijkstra(g: &WeightedGraph, s: VertexId, source: VertexId) -> Vec<Length> {
    dijkstra_from(g.n(), &[source], |v| {
        g.neighbors(v)
            .iter()
            .filter(|(w, _)| *w != s)
            .cloned()
            .collect()
    })
}

/// All-pairs distances of the scenario digraph for `s`.
pub fn scenario_distance_matrix(g: &WeightedGraph, s: VertexId) -> DistanceMatrix {
    let d = (0..g.n())
        .map(|i| scenario_dijkstra(g, s, VertexId(i)))
        .collect();
    DistanceMatrix { n: g.n(), d }
}

/// For every vertex `j`, the scenario distance `d^s(j, c)` to the nearest
/// shelter in `c`. Computed with one multi-source Dijkstra on the
/// arc-reversed scenario digraph, so the whole vector costs a single sweep.
///
/// The entry for `s` itself is `min over k in c of d^s(s, k)`; `s` may leave
/// along its out-arcs even though nothing may enter it. An empty `c` yields
/// `Infinity` everywhere.
pub fn distances_to_set_in_scenario(
    g: &WeightedGraph,
    s: VertexId,
    c: &CenterSet,
) -> Vec<Length> {
    let sources: Vec<VertexId> = c.iter().collect();
    // Reversed scenario arcs: from any vertex except s one may step to every
    // neighbor (stepping onto s in reverse = leaving s forward); s has no
    // reverse out-arcs because forward arcs never enter it.
    dijkstra_from(g.n(), &sources, |v| {
        if v == s {
            Vec::new()
        } else {
            g.neighbors(v).to_vec()
        }
    })
}

/// Plain (scenario-free) distances from every vertex to the nearest center.
pub fn distances_to_set(g: &WeightedGraph, c: &CenterSet) -> Vec<Length> {
    let sources: Vec<VertexId> = c.iter().collect();
    dijkstra_from(g.n(), &sources, |v| g.neighbors(v).to_vec())
}

/// Classic covering radius: the largest distance from any vertex to `c`.
pub fn covering_radius(g: &WeightedGraph, c: &CenterSet) -> Length {
    distances_to_set(g, c)
        .into_iter()
        .max()
        .unwrap_or_else(Length::zero)
}

/// Covering radius restricted to the demand vertices `u`.
pub fn partial_covering_radius(g: &WeightedGraph, c: &CenterSet, u: &[VertexId]) -> Length {
    let d = distances_to_set(g, c);
    u.iter()
        .map(|v| d[v.0].clone())
        .max()
        .unwrap_or_else(Length::zero)
}

/// Complete graph on the same vertices whose edge lengths are the shortest
/// path distances. Requires connectivity.
pub fn metric_closure(g: &WeightedGraph) -> Result<WeightedGraph> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = all_pairs_shortest(g);
    let mut edges = Vec::with_capacity(g.n() * (g.n().saturating_sub(1)) / 2);
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            edges.push((i, j, m.get(VertexId(i), VertexId(j)).clone()));
        }
    }
    let mut k = WeightedGraph::new(g.n(), edges)?;
    if let Some(name) = g.name() {
        k = k.with_name(format!("{name}/closure"));
    }
    Ok(k)
}

/// Threshold graph of a metric closure: vertices as in `k`, an edge wherever
/// the closure length is at most `d`.
pub fn threshold_graph(k: &WeightedGraph, d: &Length) -> Result<UnweightedGraph> {
    let n = k.n();
    if n >= 2 && k.edge_count() != n * (n - 1) / 2 {
        return Err(Error::invalid(
            "threshold graphs are built from a metric closure (complete graph)",
        ));
    }
    let edges: Vec<(usize, usize)> = k
        .edges()
        .iter()
        .filter(|e| e.len <= *d)
        .map(|e| (e.u.0, e.v.0))
        .collect();
    UnweightedGraph::new(n, &edges)
}

/// The sorted set of distinct finite pairwise distances, including 0.
///
/// This is the candidate radius list every radius search iterates over: an
/// optimal covering radius always equals some vertex-to-vertex distance.
#[derive(Clone, Debug)]
pub struct DistanceSet(Vec<Length>);

impl DistanceSet {
    pub fn from_matrix(m: &DistanceMatrix) -> Self {
        let mut vals: Vec<Length> = Vec::new();
        for i in 0..m.n {
            for j in i..m.n {
                let d = &m.d[i][j];
                if d.is_finite() {
                    vals.push(d.clone());
                }
            }
        }
        vals.sort();
        vals.dedup();
        DistanceSet(vals)
    }

    pub fn values(&self) -> &[Length] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The largest finite distance (the diameter for connected graphs).
    pub fn max(&self) -> Option<&Length> {
        self.0.last()
    }
}

/// Replaces every edge of a uniform graph by a path of `f` unit edges.
///
/// Original vertex ids are preserved; inserted vertices are appended per
/// edge, edges taken in sorted `(min,max)` order, numbered walking from the
/// smaller endpoint to the larger. Returns the expanded graph and, per
/// original edge, the inserted chain in that walk order.
pub fn f_expansion_with_chains(
    g: &WeightedGraph,
    f: usize,
) -> Result<(WeightedGraph, Vec<Vec<VertexId>>)> {
    if f == 0 {
        return Err(Error::invalid("expansion factor must be at least 1"));
    }
    if !g.is_uniform() {
        return Err(Error::invalid("expansion requires unit edge lengths"));
    }
    if let Some(coords) = g.coords() {
        for e in g.edges() {
            let (ru, cu) = coords[e.u.0];
            let (rv, cv) = coords[e.v.0];
            if (ru - rv).abs() + (cu - cv).abs() != 1 {
                return Err(Error::invalid(
                    "expansion of an embedded graph requires unit grid steps",
                ));
            }
        }
    }
    let n = g.n();
    let mut next = n;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut chains: Vec<Vec<VertexId>> = Vec::with_capacity(g.edge_count());
    let mut new_coords: Vec<(i64, i64)> = g
        .coords()
        .map(|cs| cs.iter().map(|&(r, c)| (r * f as i64, c * f as i64)).collect())
        .unwrap_or_default();
    for e in g.edges() {
        let mut chain = Vec::with_capacity(f - 1);
        let mut prev = e.u.0;
        for t in 1..f {
            let id = next;
            next += 1;
            chain.push(VertexId(id));
            edges.push((prev, id));
            if let Some(coords) = g.coords() {
                let (ru, cu) = coords[e.u.0];
                let (rv, cv) = coords[e.v.0];
                let t = t as i64;
                let f = f as i64;
                new_coords.push((ru * f + t * (rv - ru), cu * f + t * (cv - cu)));
            }
            prev = id;
        }
        edges.push((prev, e.v.0));
        chains.push(chain);
    }
    let mut out = WeightedGraph::uniform(next, &edges)?;
    if g.coords().is_some() {
        out = out.with_coords(new_coords)?;
    }
    if let Some(name) = g.name() {
        out = out.with_name(format!("{name}/x{f}"));
    }
    Ok((out, chains))
}

/// `f_expansion_with_chains` without the chain registry.
pub fn f_expansion(g: &WeightedGraph, f: usize) -> Result<WeightedGraph> {
    Ok(f_expansion_with_chains(g, f)?.0)
}
