//! Independent reference oracles for the integration suites.
//!
//! Everything here recomputes results from first principles with the
//! slowest credible method: Floyd-Warshall instead of Dijkstra, vertex
//! deletion instead of Tarjan, full subset sweeps instead of branch and
//! bound. No code path is shared with the library internals under test.

#![allow(dead_code)]

use ppcp_core::graph::{CenterSet, UnweightedGraph, VertexId, WeightedGraph};
use ppcp_core::length::Length;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn relax(d: &mut [Vec<Length>]) {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            if !d[i][k].is_finite() {
                continue;
            }
            for j in 0..n {
                let via = d[i][k].clone() + d[k][j].clone();
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
}

/// All-pairs shortest paths by Floyd-Warshall.
pub fn floyd_apsp(g: &WeightedGraph) -> Vec<Vec<Length>> {
    let n = g.n();
    let mut d = vec![vec![Length::Infinity; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Length::zero();
    }
    for e in g.edges() {
        if e.len < d[e.u.0][e.v.0] {
            d[e.u.0][e.v.0] = e.len.clone();
            d[e.v.0][e.u.0] = e.len.clone();
        }
    }
    relax(&mut d);
    d
}

/// Floyd-Warshall on the operational digraph of scenario `s`: every arc
/// into `s` is dropped, so no route may enter the scenario vertex.
pub fn scenario_floyd(g: &WeightedGraph, s: VertexId) -> Vec<Vec<Length>> {
    let n = g.n();
    let mut d = vec![vec![Length::Infinity; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Length::zero();
    }
    for e in g.edges() {
        let (u, v) = (e.u.0, e.v.0);
        if v != s.0 && e.len < d[u][v] {
            d[u][v] = e.len.clone();
        }
        if u != s.0 && e.len < d[v][u] {
            d[v][u] = e.len.clone();
        }
    }
    relax(&mut d);
    d
}

fn min_to(c: &[VertexId], dist: impl Fn(usize) -> Length) -> Length {
    c.iter().map(|t| dist(t.0)).min().unwrap_or(Length::Infinity)
}

/// Evacuation distance of every vertex under scenario `s`, straight from
/// the definition: shelters pay nothing, bystanders take their shortest
/// operational route, and an unsheltered scenario vertex pays its worst
/// neighbor detour.
pub fn brute_evacuation(g: &WeightedGraph, s: VertexId, c: &CenterSet) -> Vec<Length> {
    let d = scenario_floyd(g, s);
    let centers: Vec<VertexId> = c.iter().collect();
    let to_shelter = |v: usize| min_to(&centers, |t| d[v][t].clone());
    (0..g.n())
        .map(|j| {
            if c.contains(VertexId(j)) {
                Length::zero()
            } else if j != s.0 {
                to_shelter(j)
            } else {
                g.neighbors(s)
                    .iter()
                    .map(|(v, len)| len + &to_shelter(v.0))
                    .max()
                    .unwrap_or(Length::Infinity)
            }
        })
        .collect()
}

pub fn brute_scenario_radius(g: &WeightedGraph, s: VertexId, c: &CenterSet) -> Length {
    brute_evacuation(g, s, c).into_iter().max().expect("nonempty graph")
}

/// Average worst evacuation distance over all scenarios.
pub fn brute_expected(g: &WeightedGraph, c: &CenterSet) -> Length {
    let mut total = Length::zero();
    for s in 0..g.n() {
        let r = brute_scenario_radius(g, VertexId(s), c);
        if !r.is_finite() {
            return Length::Infinity;
        }
        total = total + r;
    }
    total.div_int(g.n() as u64)
}

/// Per-scenario operational distance tables, for sweeps that evaluate many
/// shelter sets on one graph.
pub fn scenario_tables(g: &WeightedGraph) -> Vec<Vec<Vec<Length>>> {
    (0..g.n()).map(|s| scenario_floyd(g, VertexId(s))).collect()
}

/// `brute_expected` from precomputed tables.
pub fn expected_from_tables(
    g: &WeightedGraph,
    tables: &[Vec<Vec<Length>>],
    c: &[VertexId],
) -> Length {
    let n = g.n();
    let mut in_c = vec![false; n];
    for v in c {
        in_c[v.0] = true;
    }
    let mut total = Length::zero();
    for s in 0..n {
        let d = &tables[s];
        let to_shelter = |v: usize| min_to(c, |t| d[v][t].clone());
        let mut radius = Length::zero();
        for j in 0..n {
            let r = if in_c[j] {
                Length::zero()
            } else if j != s {
                to_shelter(j)
            } else {
                g.neighbors(VertexId(s))
                    .iter()
                    .map(|(v, len)| len + &to_shelter(v.0))
                    .max()
                    .unwrap_or(Length::Infinity)
            };
            if r > radius {
                radius = r;
            }
            if !radius.is_finite() {
                return Length::Infinity;
            }
        }
        total = total + radius;
    }
    total.div_int(n as u64)
}

/// Connected components of the graph minus `banned`, each sorted, listed
/// by smallest member.
pub fn components(g: &WeightedGraph, banned: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &b in banned {
        seen[b] = true;
    }
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for (w, _) in g.neighbors(VertexId(v)) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    comp.push(w.0);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Articulation points by deletion: removing the vertex must leave more
/// components behind than the graph had.
pub fn brute_articulation_points(g: &WeightedGraph) -> Vec<VertexId> {
    let base = components(g, &[]).len();
    (0..g.n())
        .filter(|&v| components(g, &[v]).len() > base)
        .map(VertexId)
        .collect()
}

pub struct BruteMac {
    pub vertices: Vec<VertexId>,
    pub articulation: VertexId,
}

/// Components of the graph minus its articulation points that touch
/// exactly one articulation point, in order of smallest member.
pub fn brute_macs(g: &WeightedGraph) -> Vec<BruteMac> {
    let arts: Vec<usize> = brute_articulation_points(g).iter().map(|a| a.0).collect();
    if arts.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for comp in components(g, &arts) {
        let mut adj: Vec<usize> = Vec::new();
        for &v in &comp {
            for (w, _) in g.neighbors(VertexId(v)) {
                if arts.contains(&w.0) && !adj.contains(&w.0) {
                    adj.push(w.0);
                }
            }
        }
        if adj.len() == 1 {
            out.push(BruteMac {
                vertices: comp.into_iter().map(VertexId).collect(),
                articulation: VertexId(adj[0]),
            });
        }
    }
    out
}

pub fn hits_all_macs(macs: &[BruteMac], c: &[VertexId]) -> bool {
    macs.iter()
        .all(|m| m.vertices.iter().any(|v| c.contains(v)))
}

pub fn brute_is_feasible(g: &WeightedGraph, c: &CenterSet, p: usize) -> bool {
    let members: Vec<VertexId> = c.iter().collect();
    c.len() >= 2 && c.len() <= p && hits_all_macs(&brute_macs(g), &members)
}

/// Every nonempty subset of `0..n` with at most `p` members, by bitmask.
pub fn for_each_subset(n: usize, p: usize, f: &mut dyn FnMut(&[VertexId])) {
    assert!(n <= 16, "sweep oracle is for tiny graphs");
    let mut sel: Vec<VertexId> = Vec::with_capacity(n);
    for mask in 1u32..1 << n {
        if mask.count_ones() as usize > p {
            continue;
        }
        sel.clear();
        sel.extend((0..n).filter(|&i| mask >> i & 1 == 1).map(VertexId));
        f(&sel);
    }
}

fn sweep_radius(d: &[Vec<Length>], over: &[usize], c: &[VertexId]) -> Length {
    over.iter()
        .map(|&j| min_to(c, |t| d[j][t].clone()))
        .max()
        .unwrap_or_else(Length::zero)
}

/// Covering radius of `c` from the Floyd tables.
pub fn brute_covering_radius(g: &WeightedGraph, c: &CenterSet) -> Length {
    let d = floyd_apsp(g);
    let all: Vec<usize> = (0..g.n()).collect();
    let members: Vec<VertexId> = c.iter().collect();
    sweep_radius(&d, &all, &members)
}

/// Minimum covering radius over nonempty sets of at most `p` vertices.
pub fn brute_pcenter_value(g: &WeightedGraph, p: usize) -> Option<Length> {
    let d = floyd_apsp(g);
    let all: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<Length> = None;
    for_each_subset(g.n(), p, &mut |c| {
        let r = sweep_radius(&d, &all, c);
        if best.as_ref().map_or(true, |b| r < *b) {
            best = Some(r);
        }
    });
    best
}

/// Minimum covering radius over feasible sets: at least two members, every
/// MAC touched.
pub fn brute_mac_pcenter_value(g: &WeightedGraph, p: usize) -> Option<Length> {
    let macs = brute_macs(g);
    let d = floyd_apsp(g);
    let all: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<Length> = None;
    for_each_subset(g.n(), p, &mut |c| {
        if c.len() < 2 || !hits_all_macs(&macs, c) {
            return;
        }
        let r = sweep_radius(&d, &all, c);
        if best.as_ref().map_or(true, |b| r < *b) {
            best = Some(r);
        }
    });
    best
}

/// Minimum expected radius over sets of two to `p` vertices; `None` when
/// every candidate evaluates to infinity.
pub fn brute_ppcp_value(g: &WeightedGraph, p: usize) -> Option<Length> {
    let tables = scenario_tables(g);
    let mut best: Option<Length> = None;
    for_each_subset(g.n(), p, &mut |c| {
        if c.len() < 2 {
            return;
        }
        let e = expected_from_tables(g, &tables, c);
        if !e.is_finite() {
            return;
        }
        if best.as_ref().map_or(true, |b| e < *b) {
            best = Some(e);
        }
    });
    best
}

/// Minimum partial covering radius over nonempty sets of at most `p`
/// vertices drawn from the whole graph.
pub fn brute_partial_value(g: &WeightedGraph, u: &[VertexId], p: usize) -> Option<Length> {
    let mut over: Vec<usize> = u.iter().map(|v| v.0).collect();
    over.sort_unstable();
    over.dedup();
    if over.is_empty() {
        return Some(Length::zero());
    }
    let d = floyd_apsp(g);
    let mut best: Option<Length> = None;
    for_each_subset(g.n(), p, &mut |c| {
        let r = sweep_radius(&d, &over, c);
        if best.as_ref().map_or(true, |b| r < *b) {
            best = Some(r);
        }
    });
    best
}

/// Partial covering radius of `c` over `u` from the Floyd tables.
pub fn brute_partial_radius(g: &WeightedGraph, c: &CenterSet, u: &[VertexId]) -> Length {
    let d = floyd_apsp(g);
    let over: Vec<usize> = u.iter().map(|v| v.0).collect();
    let members: Vec<VertexId> = c.iter().collect();
    sweep_radius(&d, &over, &members)
}

/// Erdos-Renyi style unweighted graph, possibly disconnected.
pub fn random_unweighted(n: usize, prob: f64, seed: u64) -> UnweightedGraph {
    let mut r = rng(seed);
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(prob) {
                e.push((u, v));
            }
        }
    }
    UnweightedGraph::new(n, &e).expect("generated pairs are simple")
}

fn undirected_pairs(h: &UnweightedGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..h.n() {
        for v in h.neighbors(VertexId(u)) {
            if v.0 > u {
                out.push((u, v.0));
            }
        }
    }
    out
}

pub fn closed_masks(h: &UnweightedGraph) -> Vec<u32> {
    assert!(h.n() <= 20, "mask oracle is for tiny graphs");
    (0..h.n())
        .map(|v| {
            let mut m = 1u32 << v;
            for w in h.neighbors(VertexId(v)) {
                m |= 1 << w.0;
            }
            m
        })
        .collect()
}

/// Minimum vertex cover size by full enumeration.
pub fn brute_vertex_cover(h: &UnweightedGraph) -> usize {
    let pairs = undirected_pairs(h);
    let mut best = h.n();
    for mask in 0u32..1 << h.n() {
        if (mask.count_ones() as usize) < best
            && pairs.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
        {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// Minimum dominating set size by full enumeration.
pub fn brute_dominating(h: &UnweightedGraph) -> usize {
    let cn = closed_masks(h);
    let mut best = h.n();
    for mask in 0u32..1 << h.n() {
        if (mask.count_ones() as usize) < best && cn.iter().all(|&m| m & mask != 0) {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// Minimum size of a set dominating every member of `u`.
pub fn brute_partial_dominating(h: &UnweightedGraph, u: &[VertexId]) -> usize {
    let cn = closed_masks(h);
    let mut best = h.n();
    for mask in 0u32..1 << h.n() {
        if (mask.count_ones() as usize) < best && u.iter().all(|v| cn[v.0] & mask != 0) {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// Maximum subset of `u` leaving at most one member in every closed
/// neighborhood.
pub fn brute_strong_independent(h: &UnweightedGraph, u: &[VertexId]) -> usize {
    let cn = closed_masks(h);
    let mut u_mask = 0u32;
    for v in u {
        u_mask |= 1 << v.0;
    }
    let mut best = 0;
    for mask in 0u32..1 << h.n() {
        if mask & !u_mask == 0
            && (mask.count_ones() as usize) > best
            && cn.iter().all(|&m| (m & mask).count_ones() <= 1)
        {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// Rebuilds `g` with seeded lengths `ell * (8+k)/8`, `k` in `0..=8`, so the
/// spread stays within a factor of two of `ell`.
pub fn reweight_in_band(g: &WeightedGraph, ell: &Length, seed: u64) -> WeightedGraph {
    let mut r = rng(seed);
    let edges: Vec<(usize, usize, Length)> = g
        .edges()
        .iter()
        .map(|e| {
            let k: u64 = r.gen_range(0..=8);
            (e.u.0, e.v.0, ell.times(8 + k).div_int(8))
        })
        .collect();
    WeightedGraph::new(g.n(), edges).expect("reweighting keeps the graph valid")
}

/// A feasible shelter set: one random vertex per MAC, padded with random
/// extras to at least two members.
pub fn random_feasible_set(g: &WeightedGraph, r: &mut ChaCha8Rng) -> CenterSet {
    let macs = brute_macs(g);
    let mut picks: Vec<VertexId> = macs
        .iter()
        .map(|m| m.vertices[r.gen_range(0..m.vertices.len())])
        .collect();
    let mut extras: Vec<usize> = (0..g.n()).collect();
    extras.shuffle(r);
    let want = (picks.len().max(2) + r.gen_range(0..2)).min(g.n());
    for v in extras {
        if picks.len() >= want {
            break;
        }
        if !picks.contains(&VertexId(v)) {
            picks.push(VertexId(v));
        }
    }
    CenterSet::new(picks)
}

/// A uniformly drawn nonempty subset of the vertices.
pub fn random_subset(n: usize, r: &mut ChaCha8Rng) -> Vec<VertexId> {
    loop {
        let picked: Vec<VertexId> = (0..n).filter(|_| r.gen_bool(0.5)).map(VertexId).collect();
        if !picked.is_empty() {
            return picked;
        }
    }
}
