//! Approximation algorithms and polynomial tree solvers.
//!
//! The covering radius of any finite-radius solution equals some pairwise
//! distance, so the algorithms sweep the sorted distance list. For each
//! candidate `d` they grow an independent set of the threshold graph at
//! `2d`: two members are more than `2d` apart, so any radius-`d` solution
//! needs a distinct center near each member, which bounds the optimum from
//! below while maximality bounds the achieved radius by `2d`.

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Serialize, Serializer};

use crate::dist::{all_pairs_shortest, DistanceMatrix, DistanceSet};
use crate::error::Error;
use crate::evacuation::expected_radius;
use crate::exact::{Outcome, SolveReport};
use crate::feasibility::{is_feasible, mac_decomposition};
use crate::graph::{CenterSet, UnweightedGraph, VertexId, WeightedGraph};
use crate::length::Length;
use crate::Result;

/// One sweep iteration of an approximation run.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub d: Length,
    pub accepted: bool,
    pub independent_set_size: usize,
    /// Covering radius of the candidate built at this `d`; absent for
    /// rejected iterations.
    pub radius: Option<Length>,
}

fn serialize_ratio<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Result of an approximation algorithm: the solution, its value, a bound
/// certified by the run itself, and the per-`d` trace.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxReport {
    pub solution: CenterSet,
    pub value: Length,
    /// Upper bound on `value` established by the run (for the radius
    /// algorithms `2 * accepted d`).
    pub certified_bound: Length,
    /// Instance-independent guarantee relative to the exact optimum, when
    /// one is known for the algorithm.
    #[serde(serialize_with = "serialize_ratio")]
    pub apriori_ratio: Option<BigRational>,
    pub trace: Vec<TraceEntry>,
    pub warnings: Vec<String>,
}

/// Extends `seed` to a maximal independent set by scanning `candidates` in
/// ascending id order. The seed must be independent; it need not be a
/// subset of the candidates.
pub fn greedy_maximal_independent_set(
    h: &UnweightedGraph,
    seed: &[VertexId],
    candidates: &[VertexId],
) -> Result<Vec<VertexId>> {
    let mut set: Vec<VertexId> = seed.to_vec();
    set.sort_unstable();
    set.dedup();
    for (i, &a) in set.iter().enumerate() {
        if a.0 >= h.n() {
            return Err(Error::invalid(format!("seed vertex {a} outside [0,{})", h.n())));
        }
        for &b in &set[i + 1..] {
            if h.has_edge(a, b) {
                return Err(Error::invalid(format!(
                    "seed is not independent: edge between {a} and {b}"
                )));
            }
        }
    }
    let mut cands: Vec<VertexId> = candidates.to_vec();
    cands.sort_unstable();
    cands.dedup();
    for v in cands {
        if v.0 >= h.n() {
            return Err(Error::invalid(format!("candidate {v} outside [0,{})", h.n())));
        }
        if set.contains(&v) {
            continue;
        }
        if set.iter().all(|&s| !h.has_edge(s, v)) {
            set.push(v);
        }
    }
    set.sort_unstable();
    Ok(set)
}

fn min_dist_to(m: &DistanceMatrix, v: usize, set: &[VertexId]) -> Length {
    let mut best = Length::Infinity;
    for &s in set {
        let d = m.get(VertexId(v), s);
        if *d < best {
            best = d.clone();
        }
    }
    best
}

/// 2-approximation for the partial center problem: cover only the demand
/// vertices `u`, drawing centers from `u`.
pub fn approx_partial_pcenter(
    g: &WeightedGraph,
    u: &[VertexId],
    p: usize,
) -> Result<ApproxReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut demand: Vec<VertexId> = Vec::with_capacity(u.len());
    for v in u {
        if v.0 >= g.n() {
            return Err(Error::invalid(format!("vertex {v} outside [0,{})", g.n())));
        }
        demand.push(*v);
    }
    demand.sort_unstable();
    demand.dedup();
    if demand.is_empty() {
        return Ok(ApproxReport {
            solution: CenterSet::empty(),
            value: Length::zero(),
            certified_bound: Length::zero(),
            apriori_ratio: Some(BigRational::from_integer(BigInt::from(2))),
            trace: Vec::new(),
            warnings: Vec::new(),
        });
    }
    if p == 0 {
        return Err(Error::infeasible(
            "no centers allowed but demand vertices exist",
        ));
    }
    let m = all_pairs_shortest(g);
    let sl = DistanceSet::from_matrix(&m);
    let dmax = sl.max().expect("nonempty graph").clone();
    let mut best: Option<(Length, Length, Vec<VertexId>)> = None;
    let mut trace = Vec::new();
    for d in sl.values() {
        // Independence threshold of the capped power graph.
        let t = d.double().min_ref(&dmax).clone();
        let mut s: Vec<VertexId> = Vec::new();
        for &v in &demand {
            if min_dist_to(&m, v.0, &s) > t {
                s.push(v);
            }
        }
        let accepted = s.len() <= p;
        if accepted {
            let radius = demand
                .iter()
                .map(|&v| min_dist_to(&m, v.0, &s))
                .max()
                .expect("demand nonempty");
            assert!(radius <= d.double(), "partial radius exceeds 2d");
            if best.as_ref().map_or(true, |(bv, _, _)| radius < *bv) {
                best = Some((radius.clone(), d.clone(), s.clone()));
            }
            trace.push(TraceEntry {
                d: d.clone(),
                accepted,
                independent_set_size: s.len(),
                radius: Some(radius),
            });
        } else {
            trace.push(TraceEntry {
                d: d.clone(),
                accepted,
                independent_set_size: s.len(),
                radius: None,
            });
        }
    }
    let (value, d_tilde, s) = best.ok_or_else(|| {
        Error::Internal("no distance was accepted despite a positive budget".into())
    })?;
    Ok(ApproxReport {
        solution: CenterSet::new(s),
        value,
        certified_bound: d_tilde.double(),
        apriori_ratio: Some(BigRational::from_integer(BigInt::from(2))),
        trace,
        warnings: Vec::new(),
    })
}

/// 2-approximation for the MAC-feasible center problem.
///
/// MACs whose farthest vertex sits within `d` of their articulation point
/// count as small: they receive their smallest vertex as a dedicated
/// center. The remaining vertices beyond `d` of the small anchors are
/// covered by an independent set seeded with each large MAC's farthest
/// vertex.
pub fn approx_mac_pcenter(g: &WeightedGraph, p: usize) -> Result<ApproxReport> {
    if g.n() < 2 {
        return Err(Error::invalid("need at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dec = mac_decomposition(g)?;
    if p < dec.min_feasible_p() {
        return Err(Error::infeasible(format!(
            "p={p} but any feasible set needs {} centers",
            dec.min_feasible_p()
        )));
    }
    let m = all_pairs_shortest(g);
    let sl = DistanceSet::from_matrix(&m);
    let n = g.n();
    // Per MAC: its eccentricity from the articulation point, the vertex
    // attaining it (smallest id on ties), and the dedicated small-MAC pick.
    let mut ecc: Vec<Length> = Vec::new();
    let mut far: Vec<VertexId> = Vec::new();
    let mut pick: Vec<VertexId> = Vec::new();
    for mac in &dec.macs {
        let mut e = Length::zero();
        let mut f = mac.vertices[0];
        for &x in &mac.vertices {
            let d = m.get(x, mac.articulation);
            if *d > e {
                e = d.clone();
                f = x;
            }
        }
        ecc.push(e);
        far.push(f);
        pick.push(mac.vertices[0]);
    }
    let mut best: Option<(Length, Length, CenterSet)> = None;
    let mut trace = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    for d in sl.values() {
        let two_d = d.double();
        let small: Vec<usize> = (0..dec.macs.len()).filter(|&i| ecc[i] <= *d).collect();
        let anchors: Vec<VertexId> = small.iter().map(|&i| dec.macs[i].articulation).collect();
        // Vertices still demanding coverage: farther than d from every
        // small-MAC anchor (everything, when there are no anchors).
        let in_vprime: Vec<bool> = (0..n)
            .map(|v| min_dist_to(&m, v, &anchors) > *d)
            .collect();
        let seeds: Vec<VertexId> = (0..dec.macs.len())
            .filter(|i| !small.contains(i))
            .map(|i| far[i])
            .collect();
        for (i, &a) in seeds.iter().enumerate() {
            for &b in &seeds[i + 1..] {
                assert!(
                    *m.get(a, b) > two_d,
                    "large-MAC seeds {a} and {b} are within 2d"
                );
            }
            if !in_vprime[a.0] {
                let w = format!("seed {a} lies outside the demand set at d={d}");
                if !warnings.contains(&w) {
                    warnings.push(w);
                }
            }
        }
        let mut s = seeds;
        loop {
            let next = (0..n)
                .find(|&v| in_vprime[v] && min_dist_to(&m, v, &s) > two_d);
            match next {
                Some(v) => s.push(VertexId(v)),
                None => break,
            }
        }
        let accepted = s.len() <= p - small.len();
        if !accepted {
            trace.push(TraceEntry {
                d: d.clone(),
                accepted,
                independent_set_size: s.len(),
                radius: None,
            });
            continue;
        }
        let mut c: Vec<VertexId> = small.iter().map(|&i| pick[i]).collect();
        c.extend_from_slice(&s);
        let mut c = CenterSet::new(c);
        // A feasible shelter set needs two members; a lone center can only
        // arise without MACs, where any second vertex keeps the radius.
        let mut fill = 0;
        while c.len() < 2 {
            if !c.contains(VertexId(fill)) {
                c = CenterSet::new(c.iter().chain([VertexId(fill)]).collect());
            }
            fill += 1;
        }
        let centers: Vec<VertexId> = c.iter().collect();
        let radius = (0..n)
            .map(|v| min_dist_to(&m, v, &centers))
            .max()
            .expect("nonempty graph");
        assert!(radius <= two_d, "accepted candidate exceeds radius 2d");
        if best.as_ref().map_or(true, |(bv, _, _)| radius < *bv) {
            best = Some((radius.clone(), d.clone(), c));
        }
        trace.push(TraceEntry {
            d: d.clone(),
            accepted,
            independent_set_size: s.len(),
            radius: Some(radius),
        });
    }
    let (value, d_tilde, solution) = best.ok_or_else(|| {
        Error::Internal("no distance was accepted despite a sufficient budget".into())
    })?;
    Ok(ApproxReport {
        solution,
        value,
        certified_bound: d_tilde.double(),
        apriori_ratio: Some(BigRational::from_integer(BigInt::from(2))),
        trace,
        warnings,
    })
}

/// Approximation pipeline for the probabilistic objective: run the MAC
/// center approximation and evaluate its solution. Valid only when the
/// largest edge length is at most twice the smallest.
pub fn approx_ppcp(g: &WeightedGraph, p: usize) -> Result<ApproxReport> {
    if g.n() < 2 {
        return Err(Error::invalid("need at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (lo, hi) = g.length_range().expect("connected graph has edges");
    if hi > lo.double() {
        return Err(Error::invalid(format!(
            "length spread too wide for the probabilistic guarantee: {hi} > 2 * {lo}"
        )));
    }
    let mac = approx_mac_pcenter(g, p)?;
    let radius = mac.value.clone();
    let value = expected_radius(g, &mac.solution)?;
    let avg = g.avg_degree();
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::from_integer(BigInt::from(1));
    let per_run = &two * &avg + &one;
    let certified_bound = match &radius {
        Length::Finite(r) => Length::from_rational(&per_run * r)?,
        Length::Infinity => Length::Infinity,
    };
    assert!(
        value <= certified_bound,
        "objective exceeds its certified bound"
    );
    Ok(ApproxReport {
        solution: mac.solution,
        value,
        certified_bound,
        apriori_ratio: Some(&two * &per_run),
        trace: mac.trace,
        warnings: mac.warnings,
    })
}

/// Optimal center count and witness for covering radius `d` on a tree
/// rooted at vertex 0: children are resolved bottom-up, a center is placed
/// exactly when waiting would abandon the deepest uncovered vertex.
fn tree_cover_decision(t: &WeightedGraph, d: &Length) -> (usize, Vec<VertexId>) {
    let n = t.n();
    if n == 0 {
        return (0, Vec::new());
    }
    let mut parent: Vec<Option<(usize, Length)>> = vec![None; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for (w, len) in t.neighbors(VertexId(v)) {
            if !seen[w.0] {
                seen[w.0] = true;
                parent[w.0] = Some((v, len.clone()));
                order.push(w.0);
            }
        }
    }
    // Deepest uncovered vertex below v / farthest-reaching center below v.
    let mut need: Vec<Option<Length>> = vec![None; n];
    let mut have: Vec<Option<Length>> = vec![None; n];
    let mut centers = Vec::new();
    for &v in order.iter().rev() {
        let mut need_v: Option<Length> = Some(Length::zero());
        let mut have_v: Option<Length> = None;
        for (w, len) in t.neighbors(VertexId(v)) {
            if parent[w.0].as_ref().map(|(p, _)| *p) != Some(v) {
                continue;
            }
            if let Some(h) = &have[w.0] {
                if let Some(rem) = h.minus(len) {
                    if have_v.as_ref().map_or(true, |cur| rem > *cur) {
                        have_v = Some(rem);
                    }
                }
            }
            if let Some(nd) = &need[w.0] {
                let lifted = nd + len;
                if need_v.as_ref().map_or(true, |cur| lifted > *cur) {
                    need_v = Some(lifted);
                }
            }
        }
        if let (Some(nd), Some(h)) = (&need_v, &have_v) {
            if nd <= h {
                need_v = None;
            }
        }
        if let Some(nd) = &need_v {
            let must_place = match &parent[v] {
                None => true,
                Some((_, plen)) => &(nd + plen) > d,
            };
            if must_place {
                centers.push(VertexId(v));
                if have_v.as_ref().map_or(true, |cur| d > cur) {
                    have_v = Some(d.clone());
                }
                need_v = None;
            }
        }
        need[v] = need_v;
        have[v] = have_v;
    }
    (centers.len(), centers)
}

/// Exact center problem on trees by binary search over the distance list.
pub fn tree_pcenter_exact(t: &WeightedGraph, p: usize) -> Result<SolveReport<Length>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if p == 0 {
        return Ok(SolveReport {
            outcome: Outcome::Infeasible,
            explored: 0,
        });
    }
    let m = all_pairs_shortest(t);
    let sl = DistanceSet::from_matrix(&m);
    let vals = sl.values();
    let mut explored = 0u64;
    let mut check = |d: &Length| {
        explored += 1;
        tree_cover_decision(t, d)
    };
    let mut lo = 0usize;
    let mut hi = vals.len() - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let (count, _) = check(&vals[mid]);
        if count <= p {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (count, centers) = check(&vals[lo]);
    debug_assert!(count <= p);
    Ok(SolveReport {
        outcome: Outcome::Optimal {
            value: vals[lo].clone(),
            solution: CenterSet::new(centers),
        },
        explored,
    })
}

/// Exact MAC-feasible center problem on trees.
///
/// For each candidate radius `d`, a path of length `d` is glued to every
/// pending vertex; the tree admits a MAC solution of radius `d` exactly
/// when the extended tree admits a plain one, whose glued centers project
/// back onto their pending vertex.
pub fn tree_mac_pcenter_exact(t: &WeightedGraph, p: usize) -> Result<SolveReport<Length>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.n() < 2 {
        return Err(Error::invalid("need at least two vertices"));
    }
    let dec = mac_decomposition(t)?;
    if p < dec.min_feasible_p() {
        return Ok(SolveReport {
            outcome: Outcome::Infeasible,
            explored: 0,
        });
    }
    let uniform = t.is_uniform();
    let m = all_pairs_shortest(t);
    let sl = DistanceSet::from_matrix(&m);
    let pendings: Vec<usize> = (0..t.n()).filter(|&v| t.degree(VertexId(v)) == 1).collect();
    let mut explored = 0u64;
    for d in sl.values() {
        explored += 1;
        let (count, centers) = if d.is_zero() {
            tree_cover_decision(t, d)
        } else {
            let mut edges: Vec<(usize, usize, Length)> = t
                .edges()
                .iter()
                .map(|e| (e.u.0, e.v.0, e.len.clone()))
                .collect();
            let mut next = t.n();
            // anchor[w] = the pending vertex whose glued path contains w.
            let mut anchor: Vec<usize> = (0..t.n()).collect();
            for &pv in &pendings {
                if uniform {
                    let steps: usize = d
                        .as_rational()
                        .expect("finite distance")
                        .to_integer()
                        .try_into()
                        .expect("small uniform distance");
                    let mut prev = pv;
                    for _ in 0..steps {
                        edges.push((prev, next, Length::one()));
                        anchor.push(pv);
                        prev = next;
                        next += 1;
                    }
                } else {
                    edges.push((pv, next, d.clone()));
                    anchor.push(pv);
                    next += 1;
                }
            }
            let td = WeightedGraph::new(next, edges)?;
            let (count, raw) = tree_cover_decision(&td, d);
            let projected: Vec<VertexId> =
                raw.iter().map(|c| VertexId(anchor[c.0])).collect();
            (count, projected)
        };
        if count <= p {
            let c = CenterSet::new(centers);
            let verdict = is_feasible(t, &c, p)?;
            let radius = crate::dist::covering_radius(t, &c);
            if !verdict.feasible || radius > *d {
                return Err(Error::Internal(format!(
                    "projected witness invalid at d={d}: feasible={}, radius={radius}",
                    verdict.feasible
                )));
            }
            return Ok(SolveReport {
                outcome: Outcome::Optimal {
                    value: d.clone(),
                    solution: c,
                },
                explored,
            });
        }
    }
    Err(Error::Internal(
        "no radius admitted a solution despite a sufficient budget".into(),
    ))
}
