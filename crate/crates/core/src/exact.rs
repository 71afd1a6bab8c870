//! Exact oracles: exhaustive and branch-and-bound solvers for the
//! probabilistic, classic, MAC-restricted, and partial center problems,
//! plus minimum vertex cover, minimum dominating set, partial dominating
//! sets, and strong independent sets.
//!
//! These exist for testing and verification, not scale. Every solver
//! carries a hard instance-size guard; callers that really want to wait
//! can pass relaxed [`OracleLimits`].

use serde::Serialize;

use crate::dist::{all_pairs_shortest, scenario_distance_matrix, DistanceMatrix};
use crate::error::Error;
use crate::feasibility::mac_decomposition;
use crate::graph::{CenterSet, UnweightedGraph, VertexId, WeightedGraph};
use crate::length::Length;
use crate::Result;

/// Size guards for the exact oracles.
#[derive(Clone, Debug)]
pub struct OracleLimits {
    /// Max vertices for subset-enumeration center solvers.
    pub subset_n: usize,
    /// Max budget for subset-enumeration center solvers.
    pub subset_p: usize,
    /// Max vertices for the vertex cover branch-and-bound.
    pub vc_n: usize,
    /// Max vertices for the dominating set branch-and-bound.
    pub ds_n: usize,
    /// Max vertices for the bitmask solvers (partial domination, strong
    /// independence).
    pub mask_n: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            subset_n: 16,
            subset_p: 5,
            vc_n: 40,
            ds_n: 60,
            mask_n: 16,
        }
    }
}

impl OracleLimits {
    /// No guards (beyond hard representation limits).
    pub fn unlimited() -> Self {
        OracleLimits {
            subset_n: usize::MAX,
            subset_p: usize::MAX,
            vc_n: usize::MAX,
            ds_n: usize::MAX,
            mask_n: usize::MAX,
        }
    }
}

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::GuardExceeded {
            what,
            actual,
            limit,
        });
    }
    Ok(())
}

/// Outcome of an exact solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome<T> {
    Optimal { value: T, solution: CenterSet },
    Infeasible,
}

/// Exact solver result plus a deterministic work counter.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport<T> {
    pub outcome: Outcome<T>,
    /// Candidates evaluated (enumeration) or nodes visited (branch and
    /// bound); deterministic for a given input.
    pub explored: u64,
}

impl<T> SolveReport<T> {
    pub fn value(&self) -> Option<&T> {
        match &self.outcome {
            Outcome::Optimal { value, .. } => Some(value),
            Outcome::Infeasible => None,
        }
    }

    pub fn solution(&self) -> Option<&CenterSet> {
        match &self.outcome {
            Outcome::Optimal { solution, .. } => Some(solution),
            Outcome::Infeasible => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, Outcome::Infeasible)
    }

    fn optimal(value: T, solution: CenterSet, explored: u64) -> Self {
        SolveReport {
            outcome: Outcome::Optimal { value, solution },
            explored,
        }
    }

    fn infeasible(explored: u64) -> Self {
        SolveReport {
            outcome: Outcome::Infeasible,
            explored,
        }
    }
}

/// Visits every nonempty subset of `{0..n}` with at most `max_size`
/// elements in lexicographic order of the sorted id sequence, so the first
/// strict improvement is automatically the lexicographically smallest
/// optimum.
fn for_each_subset<F>(n: usize, max_size: usize, f: &mut F)
where
    F: FnMut(&[VertexId], &[bool]),
{
    fn rec<F>(
        n: usize,
        max_size: usize,
        start: usize,
        cur: &mut Vec<VertexId>,
        in_c: &mut [bool],
        f: &mut F,
    ) where
        F: FnMut(&[VertexId], &[bool]),
    {
        for v in start..n {
            cur.push(VertexId(v));
            in_c[v] = true;
            f(cur, in_c);
            if cur.len() < max_size {
                rec(n, max_size, v + 1, cur, in_c, f);
            }
            in_c[v] = false;
            cur.pop();
        }
    }
    if max_size == 0 || n == 0 {
        return;
    }
    let mut cur = Vec::new();
    let mut in_c = vec![false; n];
    rec(n, max_size, 0, &mut cur, &mut in_c, f);
}

fn min_to_set(m: &DistanceMatrix, j: usize, c: &[VertexId]) -> Length {
    let mut best = Length::Infinity;
    for &ci in c {
        let d = m.get(VertexId(j), ci);
        if *d < best {
            best = d.clone();
        }
    }
    best
}

/// Expected radius of `c` from precomputed per-scenario distance matrices.
fn expected_from_matrices(
    g: &WeightedGraph,
    mats: &[DistanceMatrix],
    c: &[VertexId],
    in_c: &[bool],
) -> Length {
    let n = g.n();
    let mut total = Length::zero();
    for s in 0..n {
        let m = &mats[s];
        let mut radius = Length::zero();
        for j in 0..n {
            let r = if in_c[j] {
                Length::zero()
            } else if j != s {
                min_to_set(m, j, c)
            } else {
                let mut worst = Length::Infinity;
                let mut any = false;
                for (v, len) in g.neighbors(VertexId(s)) {
                    let through = len + &min_to_set(m, v.0, c);
                    if !any || through > worst {
                        worst = through;
                        any = true;
                    }
                }
                if any {
                    worst
                } else {
                    Length::Infinity
                }
            };
            if r > radius {
                radius = r;
            }
            if radius == Length::Infinity {
                return Length::Infinity;
            }
        }
        total = total + radius;
    }
    total.div_int(n as u64)
}

/// Minimum expected radius over all feasible shelter sets of size at most
/// `p`, ties broken by the lexicographically smallest set.
pub fn solve_ppcp_exact(g: &WeightedGraph, p: usize) -> Result<SolveReport<Length>> {
    solve_ppcp_exact_with(g, p, &OracleLimits::default())
}

pub fn solve_ppcp_exact_with(
    g: &WeightedGraph,
    p: usize,
    limits: &OracleLimits,
) -> Result<SolveReport<Length>> {
    if g.n() < 2 {
        return Err(Error::invalid("need at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    guard("ppcp vertices", g.n(), limits.subset_n)?;
    guard("ppcp budget", p, limits.subset_p)?;
    let dec = mac_decomposition(g)?;
    if p < dec.min_feasible_p() {
        return Ok(SolveReport::infeasible(0));
    }
    let mats: Vec<DistanceMatrix> = (0..g.n())
        .map(|s| scenario_distance_matrix(g, VertexId(s)))
        .collect();
    let mut best: Option<(Length, CenterSet)> = None;
    let mut explored = 0u64;
    for_each_subset(g.n(), p.min(g.n()), &mut |c, in_c| {
        explored += 1;
        if c.len() < 2 {
            return;
        }
        let value = expected_from_matrices(g, &mats, c, in_c);
        if !value.is_finite() {
            return;
        }
        if best.as_ref().map_or(true, |(bv, _)| value < *bv) {
            best = Some((value, CenterSet::new(c.to_vec())));
        }
    });
    Ok(match best {
        Some((value, solution)) => SolveReport::optimal(value, solution, explored),
        None => SolveReport::infeasible(explored),
    })
}

fn radius_over(m: &DistanceMatrix, over: &[usize], c: &[VertexId]) -> Length {
    let mut radius = Length::zero();
    for &j in over {
        let d = min_to_set(m, j, c);
        if d > radius {
            radius = d;
        }
    }
    radius
}

/// Minimum covering radius over all nonempty shelter sets of size at most
/// `p`, ties broken lexicographically.
pub fn solve_pcenter_exact(g: &WeightedGraph, p: usize) -> Result<SolveReport<Length>> {
    solve_pcenter_exact_with(g, p, &OracleLimits::default())
}

pub fn solve_pcenter_exact_with(
    g: &WeightedGraph,
    p: usize,
    limits: &OracleLimits,
) -> Result<SolveReport<Length>> {
    if g.n() == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    guard("p-center vertices", g.n(), limits.subset_n)?;
    guard("p-center budget", p, limits.subset_p)?;
    if p == 0 {
        return Ok(SolveReport::infeasible(0));
    }
    let m = all_pairs_shortest(g);
    let all: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<(Length, CenterSet)> = None;
    let mut explored = 0u64;
    for_each_subset(g.n(), p.min(g.n()), &mut |c, _| {
        explored += 1;
        let value = radius_over(&m, &all, c);
        if best.as_ref().map_or(true, |(bv, _)| value < *bv) {
            best = Some((value, CenterSet::new(c.to_vec())));
        }
    });
    let (value, solution) = best.expect("p >= 1 yields candidates");
    Ok(SolveReport::optimal(value, solution, explored))
}

/// Minimum covering radius over feasible shelter sets (size between 2 and
/// `p`, touching every MAC), ties broken lexicographically.
pub fn solve_mac_pcenter_exact(g: &WeightedGraph, p: usize) -> Result<SolveReport<Length>> {
    solve_mac_pcenter_exact_with(g, p, &OracleLimits::default())
}

pub fn solve_mac_pcenter_exact_with(
    g: &WeightedGraph,
    p: usize,
    limits: &OracleLimits,
) -> Result<SolveReport<Length>> {
    if g.n() < 2 {
        return Err(Error::invalid("need at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    guard("MAC p-center vertices", g.n(), limits.subset_n)?;
    guard("MAC p-center budget", p, limits.subset_p)?;
    let dec = mac_decomposition(g)?;
    if p < dec.min_feasible_p() {
        return Ok(SolveReport::infeasible(0));
    }
    let m = all_pairs_shortest(g);
    let all: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<(Length, CenterSet)> = None;
    let mut explored = 0u64;
    for_each_subset(g.n(), p.min(g.n()), &mut |c, in_c| {
        explored += 1;
        if c.len() < 2 {
            return;
        }
        if dec
            .macs
            .iter()
            .any(|mac| !mac.vertices.iter().any(|v| in_c[v.0]))
        {
            return;
        }
        let value = radius_over(&m, &all, c);
        if best.as_ref().map_or(true, |(bv, _)| value < *bv) {
            best = Some((value, CenterSet::new(c.to_vec())));
        }
    });
    Ok(match best {
        Some((value, solution)) => SolveReport::optimal(value, solution, explored),
        None => SolveReport::infeasible(explored),
    })
}

/// Minimum partial covering radius `max over u of d(u, C)` over nonempty
/// sets of size at most `p` drawn from all vertices.
pub fn solve_partial_pcenter_exact(
    g: &WeightedGraph,
    u: &[VertexId],
    p: usize,
) -> Result<SolveReport<Length>> {
    solve_partial_pcenter_exact_with(g, u, p, &OracleLimits::default())
}

pub fn solve_partial_pcenter_exact_with(
    g: &WeightedGraph,
    u: &[VertexId],
    p: usize,
    limits: &OracleLimits,
) -> Result<SolveReport<Length>> {
    if g.n() == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    guard("partial p-center vertices", g.n(), limits.subset_n)?;
    guard("partial p-center budget", p, limits.subset_p)?;
    let mut over: Vec<usize> = Vec::with_capacity(u.len());
    for v in u {
        if v.0 >= g.n() {
            return Err(Error::invalid(format!("vertex {v} outside [0,{})", g.n())));
        }
        over.push(v.0);
    }
    over.sort_unstable();
    over.dedup();
    if over.is_empty() {
        return Ok(SolveReport::optimal(Length::zero(), CenterSet::empty(), 0));
    }
    if p == 0 {
        return Ok(SolveReport::infeasible(0));
    }
    let m = all_pairs_shortest(g);
    let mut best: Option<(Length, CenterSet)> = None;
    let mut explored = 0u64;
    for_each_subset(g.n(), p.min(g.n()), &mut |c, _| {
        explored += 1;
        let value = radius_over(&m, &over, c);
        if best.as_ref().map_or(true, |(bv, _)| value < *bv) {
            best = Some((value, CenterSet::new(c.to_vec())));
        }
    });
    let (value, solution) = best.expect("p >= 1 yields candidates");
    Ok(SolveReport::optimal(value, solution, explored))
}

fn mask_adjacency(g: &UnweightedGraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for v in 0..g.n() {
        for w in g.neighbors(VertexId(v)) {
            adj[v] |= 1u64 << w.0;
        }
    }
    adj
}

fn mask_to_set(mask: u64) -> CenterSet {
    CenterSet::new(
        (0..64)
            .filter(|i| mask >> i & 1 == 1)
            .map(VertexId)
            .collect(),
    )
}

/// Greedy maximal matching size: a lower bound for vertex cover.
fn matching_bound(adj: &[u64], mut r: u64) -> usize {
    let mut count = 0;
    while r != 0 {
        let v = r.trailing_zeros() as usize;
        let nbrs = adj[v] & r;
        if nbrs == 0 {
            r &= !(1u64 << v);
            continue;
        }
        let w = nbrs.trailing_zeros() as usize;
        r &= !(1u64 << v | 1u64 << w);
        count += 1;
    }
    count
}

fn vc_branch(
    adj: &[u64],
    mut r: u64,
    mut size: usize,
    mut chosen: u64,
    best: &mut (usize, u64),
    explored: &mut u64,
) {
    *explored += 1;
    // Reductions: drop isolated vertices, resolve degree-1 vertices by
    // taking their neighbor.
    loop {
        let mut changed = false;
        let mut scan = r;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= !(1u64 << v);
            if r >> v & 1 == 0 {
                continue;
            }
            let nbrs = adj[v] & r;
            match nbrs.count_ones() {
                0 => {
                    r &= !(1u64 << v);
                    changed = true;
                }
                1 => {
                    let w = nbrs.trailing_zeros() as usize;
                    chosen |= 1u64 << w;
                    size += 1;
                    r &= !(1u64 << v | 1u64 << w);
                    changed = true;
                }
                _ => {}
            }
            if size >= best.0 {
                return;
            }
        }
        if !changed {
            break;
        }
    }
    if r == 0 {
        if size < best.0 {
            *best = (size, chosen);
        }
        return;
    }
    if size + matching_bound(adj, r) >= best.0 {
        return;
    }
    // Branch on the highest-degree remaining vertex, smallest id on ties.
    let mut pick = usize::MAX;
    let mut pick_deg = 0;
    let mut scan = r;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= !(1u64 << v);
        let deg = (adj[v] & r).count_ones();
        if deg > pick_deg {
            pick_deg = deg;
            pick = v;
        }
    }
    let v = pick;
    vc_branch(adj, r & !(1u64 << v), size + 1, chosen | 1u64 << v, best, explored);
    let nbrs = adj[v] & r;
    vc_branch(
        adj,
        r & !(nbrs | 1u64 << v),
        size + nbrs.count_ones() as usize,
        chosen | nbrs,
        best,
        explored,
    );
}

/// Minimum vertex cover size with a witness.
pub fn min_vertex_cover(g: &UnweightedGraph) -> Result<SolveReport<usize>> {
    min_vertex_cover_with(g, &OracleLimits::default())
}

pub fn min_vertex_cover_with(
    g: &UnweightedGraph,
    limits: &OracleLimits,
) -> Result<SolveReport<usize>> {
    guard("vertex cover vertices", g.n(), limits.vc_n)?;
    guard("vertex cover representation", g.n(), 64)?;
    let adj = mask_adjacency(g);
    let full = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut best = (g.n() + 1, 0u64);
    let mut explored = 0u64;
    vc_branch(&adj, full, 0, 0, &mut best, &mut explored);
    Ok(SolveReport::optimal(best.0, mask_to_set(best.1), explored))
}

fn closed_neighborhoods(g: &UnweightedGraph) -> Vec<u64> {
    let mut cn = mask_adjacency(g);
    for (v, m) in cn.iter_mut().enumerate() {
        *m |= 1u64 << v;
    }
    cn
}

fn ds_branch(
    cn: &[u64],
    full: u64,
    chosen: u64,
    dominated: u64,
    size: usize,
    best: &mut (usize, u64),
    explored: &mut u64,
) {
    *explored += 1;
    if dominated == full {
        if size < best.0 {
            *best = (size, chosen);
        }
        return;
    }
    let missing = full & !dominated;
    let maxcov = cn
        .iter()
        .map(|m| (m & missing).count_ones() as usize)
        .max()
        .unwrap_or(1)
        .max(1);
    let need = (missing.count_ones() as usize).div_ceil(maxcov);
    if size + need >= best.0 {
        return;
    }
    // Some vertex of the closed neighborhood of an undominated vertex must
    // join the set; pick the undominated vertex with the fewest options.
    let mut pick = usize::MAX;
    let mut pick_opts = usize::MAX;
    let mut scan = missing;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= !(1u64 << v);
        let opts = cn[v].count_ones() as usize;
        if opts < pick_opts {
            pick_opts = opts;
            pick = v;
        }
    }
    let mut options = cn[pick];
    while options != 0 {
        let w = options.trailing_zeros() as usize;
        options &= !(1u64 << w);
        ds_branch(
            cn,
            full,
            chosen | 1u64 << w,
            dominated | cn[w],
            size + 1,
            best,
            explored,
        );
    }
}

/// Minimum dominating set size with a witness.
pub fn min_dominating_set(g: &UnweightedGraph) -> Result<SolveReport<usize>> {
    min_dominating_set_with(g, &OracleLimits::default())
}

pub fn min_dominating_set_with(
    g: &UnweightedGraph,
    limits: &OracleLimits,
) -> Result<SolveReport<usize>> {
    guard("dominating set vertices", g.n(), limits.ds_n)?;
    guard("dominating set representation", g.n(), 64)?;
    if g.n() == 0 {
        return Ok(SolveReport::optimal(0, CenterSet::empty(), 0));
    }
    let cn = closed_neighborhoods(g);
    let full = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    // Greedy upper bound: cover the most new vertices, smallest id on ties.
    let mut greedy = 0u64;
    let mut dominated = 0u64;
    let mut greedy_size = 0usize;
    while dominated != full {
        let mut pick = 0usize;
        let mut gain = 0u32;
        for (v, m) in cn.iter().enumerate() {
            let g = (m & !dominated).count_ones();
            if g > gain {
                gain = g;
                pick = v;
            }
        }
        greedy |= 1u64 << pick;
        dominated |= cn[pick];
        greedy_size += 1;
    }
    let mut best = (greedy_size, greedy);
    let mut explored = 0u64;
    ds_branch(&cn, full, 0, 0, 0, &mut best, &mut explored);
    Ok(SolveReport::optimal(best.0, mask_to_set(best.1), explored))
}

fn validate_mask_input(g: &UnweightedGraph, u: &[VertexId], limit: usize) -> Result<Vec<usize>> {
    guard("bitmask solver vertices", g.n(), limit)?;
    guard("bitmask solver representation", g.n(), 32)?;
    let mut out: Vec<usize> = Vec::with_capacity(u.len());
    for v in u {
        if v.0 >= g.n() {
            return Err(Error::invalid(format!("vertex {v} outside [0,{})", g.n())));
        }
        out.push(v.0);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn closed_neighborhoods32(g: &UnweightedGraph) -> Vec<u32> {
    let mut cn = vec![0u32; g.n()];
    for v in 0..g.n() {
        cn[v] |= 1u32 << v;
        for w in g.neighbors(VertexId(v)) {
            cn[v] |= 1u32 << w.0;
        }
    }
    cn
}

/// Finds the lexicographically first `k`-subset of `ground` passing `pred`,
/// counting every candidate checked.
fn first_k_subset(
    ground: &[usize],
    k: usize,
    explored: &mut u64,
    pred: &mut impl FnMut(u32) -> bool,
) -> Option<u32> {
    fn rec(
        ground: &[usize],
        k: usize,
        start: usize,
        mask: u32,
        explored: &mut u64,
        pred: &mut impl FnMut(u32) -> bool,
    ) -> Option<u32> {
        if k == 0 {
            *explored += 1;
            return if pred(mask) { Some(mask) } else { None };
        }
        if ground.len() - start < k {
            return None;
        }
        for i in start..ground.len() {
            if let Some(m) = rec(
                ground,
                k - 1,
                i + 1,
                mask | 1u32 << ground[i],
                explored,
                pred,
            ) {
                return Some(m);
            }
        }
        None
    }
    rec(ground, k, 0, 0, explored, pred)
}

fn mask32_to_set(mask: u32) -> CenterSet {
    CenterSet::new(
        (0..32)
            .filter(|i| mask >> i & 1 == 1)
            .map(VertexId)
            .collect(),
    )
}

/// Minimum set of vertices dominating every member of `u` via closed
/// neighborhoods: each `u` must host or neighbor a chosen vertex.
pub fn min_partial_dominating_set(
    g: &UnweightedGraph,
    u: &[VertexId],
) -> Result<SolveReport<usize>> {
    min_partial_dominating_set_with(g, u, &OracleLimits::default())
}

pub fn min_partial_dominating_set_with(
    g: &UnweightedGraph,
    u: &[VertexId],
    limits: &OracleLimits,
) -> Result<SolveReport<usize>> {
    let u = validate_mask_input(g, u, limits.mask_n)?;
    if u.is_empty() {
        return Ok(SolveReport::optimal(0, CenterSet::empty(), 0));
    }
    let cn = closed_neighborhoods32(g);
    let ground: Vec<usize> = (0..g.n()).collect();
    let mut explored = 0u64;
    for k in 1..=g.n() {
        let found = first_k_subset(&ground, k, &mut explored, &mut |mask| {
            u.iter().all(|&v| cn[v] & mask != 0)
        });
        if let Some(mask) = found {
            return Ok(SolveReport::optimal(k, mask32_to_set(mask), explored));
        }
    }
    // Unreachable for nonempty u: taking all of u dominates u.
    Ok(SolveReport::infeasible(explored))
}

/// Maximum subset of `u` such that every vertex of the graph has at most
/// one chosen vertex in its closed neighborhood. Such a set is independent
/// and no outside vertex sees two of its members.
pub fn max_strong_independent_set(
    g: &UnweightedGraph,
    u: &[VertexId],
) -> Result<SolveReport<usize>> {
    max_strong_independent_set_with(g, u, &OracleLimits::default())
}

pub fn max_strong_independent_set_with(
    g: &UnweightedGraph,
    u: &[VertexId],
    limits: &OracleLimits,
) -> Result<SolveReport<usize>> {
    let u = validate_mask_input(g, u, limits.mask_n)?;
    let cn = closed_neighborhoods32(g);
    let mut explored = 0u64;
    for k in (1..=u.len()).rev() {
        let found = first_k_subset(&u, k, &mut explored, &mut |mask| {
            (0..g.n()).all(|v| (cn[v] & mask).count_ones() <= 1)
        });
        if let Some(mask) = found {
            return Ok(SolveReport::optimal(k, mask32_to_set(mask), explored));
        }
    }
    Ok(SolveReport::optimal(0, CenterSet::empty(), explored))
}
