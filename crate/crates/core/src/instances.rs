//! Instance fixtures, seeded generators, and the two on-disk formats.
//!
//! Instances travel either as canonical JSON documents or as a terse
//! whitespace text format for hand-authoring. Both keep lengths as exact
//! fraction strings; serialization always emits the canonical form
//! (endpoints ordered low to high, edges sorted lexicographically).

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Cell, WeightedGraph};
use crate::length::Length;
use crate::reduction::GridEmbedding;
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// One edge of a document, with the length kept as a fraction string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub u: usize,
    pub v: usize,
    pub len: String,
}

/// The JSON shape of an instance. Field order is the canonical key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub schema_version: u32,
    pub name: String,
    pub n: usize,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Cell>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Reserved for later probability models; only "uniform" is accepted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<String>,
}

impl InstanceDocument {
    pub fn from_graph(g: &WeightedGraph, p: Option<usize>) -> Self {
        InstanceDocument {
            schema_version: SCHEMA_VERSION,
            name: g.name().unwrap_or("instance").to_string(),
            n: g.n(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeSpec {
                    u: e.u.0,
                    v: e.v.0,
                    len: e.len.to_string(),
                })
                .collect(),
            p,
            coords: g.coords().map(|c| c.to_vec()),
            labels: g.labels().map(|l| l.to_vec()),
            probabilities: None,
        }
    }

    /// Validates the document and builds the graph it describes.
    pub fn to_graph(&self) -> Result<WeightedGraph> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "unknown schema version {}, this build reads {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        if let Some(prob) = &self.probabilities {
            if prob != "uniform" {
                return Err(Error::invalid(format!(
                    "probability model {prob:?} is not supported, only \"uniform\""
                )));
            }
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let len: Length = e.len.parse()?;
            edges.push((e.u, e.v, len));
        }
        let mut g = WeightedGraph::new(self.n, edges)?.with_name(self.name.clone());
        if let Some(coords) = &self.coords {
            g = g.with_coords(coords.clone())?;
        }
        if let Some(labels) = &self.labels {
            g = g.with_labels(labels.clone())?;
        }
        Ok(g)
    }

    /// The canonical form: validated, endpoints ordered, edges sorted,
    /// lengths reduced.
    pub fn canonical(&self) -> Result<InstanceDocument> {
        Ok(InstanceDocument::from_graph(&self.to_graph()?, self.p))
    }
}

/// Parses the JSON format, mapping syntax errors to positions.
pub fn parse_json(text: &str) -> Result<InstanceDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column().max(1),
        msg: e.to_string(),
    })
}

/// Serializes to canonical JSON. Equal instances produce identical bytes.
pub fn to_json(doc: &InstanceDocument) -> Result<String> {
    let canon = doc.canonical()?;
    let mut out =
        serde_json::to_string_pretty(&canon).map_err(|e| Error::Internal(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

fn parse_token<T: std::str::FromStr>(
    tok: &str,
    line: usize,
    col: usize,
    what: &str,
) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        col,
        msg: format!("expected {what}, found {tok:?}"),
    })
}

fn tokenize(content: &str) -> Vec<(usize, &str)> {
    let mut toks = Vec::new();
    let mut col = 1;
    for piece in content.split_inclusive(char::is_whitespace) {
        let tok = piece.trim();
        if !tok.is_empty() {
            toks.push((col, tok));
        }
        col += piece.chars().count();
    }
    toks
}

/// Parses the text format: a `ppcp <n> <m> [p]` header, then one `u v len`
/// line per edge. `#` starts a comment, blank lines are skipped, lengths
/// are integers or fractions.
pub fn parse_text(text: &str) -> Result<InstanceDocument> {
    let content_lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            (i + 1, content)
        })
        .filter(|(_, content)| !content.trim().is_empty())
        .collect();
    let line_at = |idx: usize, expected: &str| -> Result<(usize, Vec<(usize, &str)>)> {
        match content_lines.get(idx) {
            Some(&(line, content)) => Ok((line, tokenize(content))),
            None => Err(Error::Parse {
                line: content_lines.last().map_or(0, |&(l, _)| l) + 1,
                col: 1,
                msg: format!("missing {expected}"),
            }),
        }
    };
    let (hline, header) = line_at(0, "header line \"ppcp <n> <m> [p]\"")?;
    if header.is_empty() || header[0].1 != "ppcp" {
        return Err(Error::Parse {
            line: hline,
            col: header.first().map_or(1, |t| t.0),
            msg: "the header must start with \"ppcp\"".into(),
        });
    }
    if header.len() < 3 || header.len() > 4 {
        return Err(Error::Parse {
            line: hline,
            col: 1,
            msg: format!(
                "the header takes 2 or 3 numbers (\"ppcp <n> <m> [p]\"), found {}",
                header.len() - 1
            ),
        });
    }
    let n: usize = parse_token(header[1].1, hline, header[1].0, "a vertex count")?;
    let m: usize = parse_token(header[2].1, hline, header[2].0, "an edge count")?;
    let p: Option<usize> = match header.get(3) {
        Some(&(col, tok)) => Some(parse_token(tok, hline, col, "a center budget")?),
        None => None,
    };
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let (line, toks) = line_at(1 + i, "an edge line \"u v len\"")?;
        if toks.len() != 3 {
            return Err(Error::Parse {
                line,
                col: toks.first().map_or(1, |t| t.0),
                msg: format!("an edge line takes 3 fields, found {}", toks.len()),
            });
        }
        let u: usize = parse_token(toks[0].1, line, toks[0].0, "a vertex id")?;
        let v: usize = parse_token(toks[1].1, line, toks[1].0, "a vertex id")?;
        let len: Length = toks[2]
            .1
            .parse()
            .map_err(|e: Error| Error::Parse {
                line,
                col: toks[2].0,
                msg: e.to_string(),
            })?;
        if !len.is_finite() {
            return Err(Error::Parse {
                line,
                col: toks[2].0,
                msg: "edge lengths must be finite".into(),
            });
        }
        edges.push(EdgeSpec {
            u,
            v,
            len: len.to_string(),
        });
    }
    if let Some(&(line, content)) = content_lines.get(1 + m) {
        return Err(Error::Parse {
            line,
            col: tokenize(content).first().map_or(1, |t| t.0),
            msg: format!("unexpected content after {m} edges"),
        });
    }
    let doc = InstanceDocument {
        schema_version: SCHEMA_VERSION,
        name: "instance".into(),
        n,
        edges,
        p,
        coords: None,
        labels: None,
        probabilities: None,
    };
    doc.canonical()
}

/// Serializes to the canonical text format.
pub fn to_text(doc: &InstanceDocument) -> Result<String> {
    let canon = doc.canonical()?;
    let mut out = format!("ppcp {} {}", canon.n, canon.edges.len());
    if let Some(p) = canon.p {
        out.push_str(&format!(" {p}"));
    }
    out.push('\n');
    for e in &canon.edges {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, e.len));
    }
    Ok(out)
}

/// A path on `n` vertices with unit lengths.
pub fn path(n: usize) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::invalid("a path needs at least one vertex"));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(WeightedGraph::uniform(n, &edges)?.with_name(format!("p{n}")))
}

/// A cycle on `n >= 3` vertices with unit lengths.
pub fn cycle(n: usize) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::invalid("a cycle needs at least three vertices"));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(WeightedGraph::uniform(n, &edges)?.with_name(format!("c{n}")))
}

/// The full grid graph on `rows x cols` cells, with coordinates attached.
pub fn grid(rows: usize, cols: usize) -> Result<WeightedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("grid sides must be at least one"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    let mut coords = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            coords.push((r as i64, c as i64));
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(WeightedGraph::uniform(rows * cols, &edges)?
        .with_coords(coords)?
        .with_name(format!("grid-{rows}x{cols}")))
}

/// A seeded uniform random tree: each vertex attaches to a uniformly
/// chosen earlier vertex.
pub fn tree_random(n: usize, seed: u64) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::invalid("a tree needs at least one vertex"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Ok(WeightedGraph::uniform(n, &edges)?.with_name(format!("tree-n{n}-s{seed}")))
}

/// A seeded connected uniform graph: a random tree plus uniformly chosen
/// extra edges up to `m`.
pub fn connected_random(n: usize, m: usize, seed: u64) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::invalid("the graph needs at least one vertex"));
    }
    let max = n * (n - 1) / 2;
    if m + 1 < n || m > max {
        return Err(Error::invalid(format!(
            "a connected graph on {n} vertices has between {} and {max} edges",
            n.saturating_sub(1)
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![false; n * n];
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present[u * n + v] = true;
        edges.push((u, v));
    }
    let mut spare: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u * n + v])
        .collect();
    while edges.len() < m {
        let i = rng.gen_range(0..spare.len());
        edges.push(spare.swap_remove(i));
    }
    Ok(WeightedGraph::uniform(n, &edges)?.with_name(format!("rand-n{n}-m{m}-s{seed}")))
}

/// A seeded random induced subgrid of `rows x cols`: each cell survives
/// with probability `density` and the largest connected component is kept,
/// relabeled in row-major order with coordinates attached.
pub fn subgrid_random(rows: usize, cols: usize, density: f64, seed: u64) -> Result<WeightedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("grid sides must be at least one"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid("density must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kept: Vec<bool> = (0..rows * cols).map(|_| rng.gen::<f64>() < density).collect();
    let idx = |r: usize, c: usize| r * cols + c;
    let mut component = vec![usize::MAX; rows * cols];
    let mut best: Option<(usize, usize)> = None;
    for start in 0..rows * cols {
        if !kept[start] || component[start] != usize::MAX {
            continue;
        }
        let comp = start;
        let mut size = 0;
        let mut queue = VecDeque::from([start]);
        component[start] = comp;
        while let Some(cell) = queue.pop_front() {
            size += 1;
            let (r, c) = (cell / cols, cell % cols);
            let mut visit = |nb: usize| {
                if kept[nb] && component[nb] == usize::MAX {
                    component[nb] = comp;
                    queue.push_back(nb);
                }
            };
            if r > 0 {
                visit(idx(r - 1, c));
            }
            if r + 1 < rows {
                visit(idx(r + 1, c));
            }
            if c > 0 {
                visit(idx(r, c - 1));
            }
            if c + 1 < cols {
                visit(idx(r, c + 1));
            }
        }
        if best.map_or(true, |(s, _)| size > s) {
            best = Some((size, comp));
        }
    }
    let winner = match best {
        Some((_, comp)) => comp,
        None => {
            return Err(Error::invalid(
                "the draw kept no cells; raise the density or change the seed",
            ))
        }
    };
    let mut new_id = vec![usize::MAX; rows * cols];
    let mut coords: Vec<Cell> = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if component[idx(r, c)] == winner {
                new_id[idx(r, c)] = coords.len();
                coords.push((r as i64, c as i64));
            }
        }
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if component[idx(r, c)] != winner {
                continue;
            }
            if c + 1 < cols && component[idx(r, c + 1)] == winner {
                edges.push((new_id[idx(r, c)], new_id[idx(r, c + 1)]));
            }
            if r + 1 < rows && component[idx(r + 1, c)] == winner {
                edges.push((new_id[idx(r, c)], new_id[idx(r + 1, c)]));
            }
        }
    }
    Ok(WeightedGraph::uniform(coords.len(), &edges)?
        .with_coords(coords)?
        .with_name(format!("subgrid-{rows}x{cols}-d{density}-s{seed}")))
}

/// The three-branch star: a hub `x` with three paths of two unit edges.
/// Its three leaves form three one-vertex MACs.
pub fn fig1_star() -> WeightedGraph {
    WeightedGraph::uniform(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        .expect("fixture is valid")
        .with_labels(
            ["x", "a", "b", "c", "d", "e", "f"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
        .expect("fixture labels are valid")
        .with_name("fig1")
}

/// The worked 14-vertex evaluation example. Labels "1" to "14" follow the
/// original numbering, ids are the labels shifted down by one.
pub fn fig2_graph() -> WeightedGraph {
    let lens: [(usize, usize, u64); 17] = [
        (0, 1, 1),
        (0, 5, 4),
        (1, 2, 2),
        (1, 6, 3),
        (2, 3, 3),
        (2, 7, 6),
        (3, 4, 1),
        (4, 8, 8),
        (5, 6, 8),
        (5, 9, 4),
        (6, 7, 5),
        (6, 10, 5),
        (7, 11, 6),
        (8, 13, 1),
        (9, 10, 4),
        (11, 12, 3),
        (12, 13, 2),
    ];
    let edges = lens
        .iter()
        .map(|&(u, v, l)| (u, v, Length::from_int(l)))
        .collect();
    WeightedGraph::new(14, edges)
        .expect("fixture is valid")
        .with_labels((1..=14).map(|i| i.to_string()).collect())
        .expect("fixture labels are valid")
        .with_name("fig2")
}

/// The caterpillar with spine `x - y - z` of length-`Z` edges and a unit
/// pendant on each spine vertex. For three centers the pendant set
/// `{a, b, c}` is the only feasible choice, of radius 1 and objective
/// `Z + 1`.
pub fn fig7_caterpillar(z: &Length) -> Result<WeightedGraph> {
    let z = positive_finite(z, "the spine length")?;
    let one = Length::one();
    let edges = vec![
        (0, 1, z.clone()),
        (1, 2, z),
        (0, 3, one.clone()),
        (1, 4, one.clone()),
        (2, 5, one),
    ];
    Ok(WeightedGraph::new(6, edges)?
        .with_labels(
            ["x", "y", "z", "a", "b", "c"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )?
        .with_name("fig7"))
}

/// The eight-vertex path whose middle edge has length `Z` and every other
/// edge length 1. Labels "1" to "8" follow the original numbering.
pub fn fig8_path(z: &Length) -> Result<WeightedGraph> {
    let z = positive_finite(z, "the middle length")?;
    let edges = (0..7)
        .map(|i| {
            let len = if i == 3 { z.clone() } else { Length::one() };
            (i, i + 1, len)
        })
        .collect();
    Ok(WeightedGraph::new(8, edges)?
        .with_labels((1..=8).map(|i| i.to_string()).collect())?
        .with_name("fig8"))
}

fn positive_finite(z: &Length, what: &str) -> Result<Length> {
    if !z.is_finite() || z.is_zero() {
        return Err(Error::invalid(format!("{what} must be finite and positive")));
    }
    Ok(z.clone())
}

/// The worked drawing of the complete four-vertex graph on a three-by-three
/// grid, paths included.
pub fn fig4_k4_embedding() -> GridEmbedding {
    let k4 = WeightedGraph::uniform(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        .expect("fixture is valid")
        .with_labels(
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
        )
        .expect("fixture labels are valid")
        .with_name("fig4");
    let coords = vec![(0, 1), (1, 1), (2, 1), (1, 0)];
    let paths = vec![
        vec![(0, 1), (1, 1)],
        vec![(0, 1), (0, 2), (1, 2), (2, 2), (2, 1)],
        vec![(0, 1), (0, 0), (1, 0)],
        vec![(1, 1), (2, 1)],
        vec![(1, 1), (1, 0)],
        vec![(2, 1), (2, 0), (1, 0)],
    ];
    GridEmbedding::new(k4, 3, 3, coords, paths).expect("fixture drawing is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evacuation::evaluate;
    use crate::graph::{CenterSet, VertexId};
    use crate::reduction::validate_induced_subgrid;

    #[test]
    fn generators_build_the_expected_shapes() {
        let p4 = path(4).unwrap();
        assert_eq!((p4.n(), p4.edge_count()), (4, 3));
        assert_eq!(p4.name(), Some("p4"));
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert!(path(0).is_err());
        assert!(cycle(2).is_err());
        let g22 = grid(2, 2).unwrap();
        assert_eq!((g22.n(), g22.edge_count()), (4, 4));
        validate_induced_subgrid(&g22).unwrap();
        let g34 = grid(3, 4).unwrap();
        assert_eq!((g34.n(), g34.edge_count()), (12, 17));
        validate_induced_subgrid(&g34).unwrap();
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        for n in [1, 2, 7, 12] {
            let a = tree_random(n, 5).unwrap();
            let b = tree_random(n, 5).unwrap();
            assert_eq!(a.edges(), b.edges());
            assert_eq!(a.edge_count(), n - 1);
            assert!(a.is_connected());
        }
        let a = connected_random(9, 14, 3).unwrap();
        let b = connected_random(9, 14, 3).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.edge_count(), 14);
        assert!(a.is_connected());
        assert!(connected_random(5, 3, 0).is_err());
        assert!(connected_random(5, 11, 0).is_err());
        let a = subgrid_random(4, 4, 0.7, 1).unwrap();
        let b = subgrid_random(4, 4, 0.7, 1).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.coords(), b.coords());
        assert!(a.is_connected());
        validate_induced_subgrid(&a).unwrap();
        assert!(subgrid_random(3, 3, 1.5, 0).is_err());
    }

    #[test]
    fn sparse_subgrid_draws_can_fail_loudly() {
        match subgrid_random(3, 3, 0.0, 0) {
            Err(Error::InvalidInput(_)) => {}
            other => panic!("expected an empty-draw error, got {other:?}"),
        }
        let full = subgrid_random(3, 3, 1.0, 0).unwrap();
        assert_eq!(full.n(), 9);
        assert_eq!(full.edge_count(), 12);
    }

    #[test]
    fn fig_fixtures_match_their_drawings() {
        let f1 = fig1_star();
        assert_eq!((f1.n(), f1.edge_count()), (7, 6));
        let f2 = fig2_graph();
        assert_eq!((f2.n(), f2.edge_count()), (14, 17));
        let e = f2
            .edges()
            .iter()
            .find(|e| (e.u.0, e.v.0) == (4, 8))
            .expect("the long bridge edge exists");
        assert_eq!(e.len, Length::from_int(8));
        assert_eq!(f2.labels().unwrap()[4], "5");
        assert_eq!(f2.labels().unwrap()[8], "9");
        let f8 = fig8_path(&Length::from_int(4)).unwrap();
        let mid = f8
            .edges()
            .iter()
            .find(|e| (e.u.0, e.v.0) == (3, 4))
            .unwrap();
        assert_eq!(mid.len, Length::from_int(4));
        assert!(fig7_caterpillar(&Length::zero()).is_err());
        assert!(fig8_path(&Length::Infinity).is_err());
        let emb = fig4_k4_embedding();
        assert_eq!(emb.path_steps(), vec![1, 4, 2, 1, 1, 2]);
    }

    #[test]
    fn fig2_reproduces_the_worked_numbers() {
        let g = fig2_graph();
        let c = CenterSet::from_indices(&[2, 9]);
        let report = evaluate(&g, &c).unwrap();
        let s2 = &report.scenarios[1];
        assert_eq!(s2.distances[0], Length::from_int(8));
        assert_eq!(s2.distances[1], Length::from_int(12));
        assert_eq!(s2.radius, Length::from_int(15));
        assert_eq!(s2.argmax, VertexId(12));
    }

    #[test]
    fn fig7_and_fig8_reproduce_their_captions() {
        for z in [Length::from_int(3), Length::from_int(10), Length::new(7, 2).unwrap()] {
            let g = fig7_caterpillar(&z).unwrap();
            let c = CenterSet::from_indices(&[3, 4, 5]);
            let report = evaluate(&g, &c).unwrap();
            let expected = Length::one() + z.clone();
            assert_eq!(report.probabilistic_radius, expected);
            assert_eq!(crate::dist::covering_radius(&g, &c), Length::one());
        }
        for z in [Length::from_int(2), Length::from_int(4), Length::new(7, 2).unwrap()] {
            let g = fig8_path(&z).unwrap();
            let mac = CenterSet::from_indices(&[0, 2, 5, 7]);
            let report = evaluate(&g, &mac).unwrap();
            assert_eq!(
                report.probabilistic_radius,
                Length::one() + z.div_int(2)
            );
            assert_eq!(crate::dist::covering_radius(&g, &mac), Length::one());
            let opt = CenterSet::from_indices(&[0, 3, 4, 7]);
            let report = evaluate(&g, &opt).unwrap();
            assert_eq!(report.probabilistic_radius, Length::from_int(2));
        }
    }

    #[test]
    fn json_round_trips_canonically() {
        let g = fig2_graph();
        let doc = InstanceDocument::from_graph(&g, Some(2));
        let text = to_json(&doc).unwrap();
        let back = parse_json(&text).unwrap();
        assert_eq!(back, doc.canonical().unwrap());
        assert_eq!(to_json(&back).unwrap(), text);
        let g2 = back.to_graph().unwrap();
        assert_eq!(g2.edges(), g.edges());
        assert_eq!(g2.labels(), g.labels());
    }

    #[test]
    fn json_rejects_bad_documents() {
        match parse_json("{ \"schema_version\": 1, ") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected a parse error, got {other:?}"),
        }
        let mut doc = InstanceDocument::from_graph(&path(3).unwrap(), None);
        doc.probabilities = Some("weighted".into());
        assert!(doc.to_graph().is_err());
        doc.probabilities = Some("uniform".into());
        doc.to_graph().unwrap();
        doc.schema_version = 9;
        assert!(doc.to_graph().is_err());
    }

    #[test]
    fn text_round_trips_canonically() {
        let text = "# a square with a budget\nppcp 4 4 2\n1 0 1\n1 2 1\n2 3 1\n3 0 1/1\n";
        let doc = parse_text(text).unwrap();
        assert_eq!(doc.n, 4);
        assert_eq!(doc.p, Some(2));
        let canon = to_text(&doc).unwrap();
        assert_eq!(canon, "ppcp 4 4 2\n0 1 1\n0 3 1\n1 2 1\n2 3 1\n");
        assert_eq!(to_text(&parse_text(&canon).unwrap()).unwrap(), canon);
        let fractional = parse_text("ppcp 2 1\n0 1 7/2\n").unwrap();
        assert_eq!(fractional.edges[0].len, "7/2");
    }

    #[test]
    fn text_errors_carry_positions() {
        match parse_text("ppcp 3 2\n0 1 1\n") {
            Err(Error::Parse { line: 3, col: 1, .. }) => {}
            other => panic!("expected a missing-edge error, got {other:?}"),
        }
        match parse_text("ppcp 2 1\n0 1 -3\n") {
            Err(Error::Parse { line: 2, col: 5, .. }) => {}
            other => panic!("expected a length error, got {other:?}"),
        }
        match parse_text("ppcp 2 1\n0 1 1\n0 1 1\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("expected a trailing-content error, got {other:?}"),
        }
        match parse_text("graph 2 1\n0 1 1\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected a header error, got {other:?}"),
        }
        match parse_text("ppcp 2 1\n0 1 1 9\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected a field-count error, got {other:?}"),
        }
        assert!(parse_text("ppcp 2 2\n0 1 1\n0 1 2\n").is_err());
    }
}
