//! Behavioural properties of the substituted graph: the two-threshold
//! dichotomy for dominating versus thin center sets, and the round trip
//! between dominating sets and vertex covers.

mod common;

use ppcp_core::evacuation::expected_radius;
use ppcp_core::exact::min_vertex_cover;
use ppcp_core::graph::{CenterSet, VertexId, WeightedGraph};
use ppcp_core::instances::cycle;
use ppcp_core::length::Length;
use ppcp_core::reduction::{
    build_bundle, construct_dominating_from_vc, default_orientation, embed_tiny_planar,
    extract_vc_from_ds, is_dominating, is_vertex_cover, ReductionBundle,
};
use rand::seq::SliceRandom;
use rand::Rng;

fn square_bundle() -> ReductionBundle {
    let e = embed_tiny_planar(&cycle(4).unwrap()).unwrap();
    let o = default_orientation(&e.graph);
    build_bundle(&e, 2, &o).unwrap()
}

/// Greedy dominating set over a shuffled vertex order, plus a little noise
/// so repeated seeds explore different shapes and sizes.
fn random_dominating_set(g: &WeightedGraph, seed: u64) -> CenterSet {
    let mut r = common::rng(seed);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut r);
    let mut covered = vec![false; g.n()];
    let mut picked = Vec::new();
    for v in order {
        let gains = !covered[v]
            || g.neighbors(VertexId(v)).iter().any(|(w, _)| !covered[w.0]);
        if gains {
            picked.push(VertexId(v));
            covered[v] = true;
            for (w, _) in g.neighbors(VertexId(v)) {
                covered[w.0] = true;
            }
        }
    }
    for v in 0..g.n() {
        if r.gen_bool(0.08) {
            picked.push(VertexId(v));
        }
    }
    CenterSet::new(picked)
}

fn undominated_vertex(g: &WeightedGraph, c: &CenterSet) -> Option<VertexId> {
    let mut covered = vec![false; g.n()];
    for v in c.iter() {
        covered[v.0] = true;
        for (w, _) in g.neighbors(v) {
            covered[w.0] = true;
        }
    }
    covered.iter().position(|&x| !x).map(VertexId)
}

#[test]
fn dominating_sets_on_the_substituted_graph_stay_within_two() {
    let b = square_bundle();
    let two = Length::from_int(2);
    for seed in 0..10u64 {
        let d = random_dominating_set(&b.f, seed);
        assert!(is_dominating(&b.f, &d));
        let e = expected_radius(&b.f, &d).unwrap();
        assert!(e <= two, "seed {seed}: size {} set reaches {e}", d.len());
    }
    let vc = min_vertex_cover(&b.h_tilde.to_unweighted()).unwrap();
    let d = construct_dominating_from_vc(&b, vc.solution().unwrap()).unwrap();
    assert!(expected_radius(&b.f, &d).unwrap() <= two);
}

#[test]
fn thin_sets_on_the_substituted_graph_exceed_two() {
    let b = square_bundle();
    let n = b.f.n();
    let two = Length::from_int(2);
    let mut r = common::rng(77);
    for round in 0..12usize {
        let size = [30, 45, 57][round % 3];
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(&mut r);
        ids.truncate(size);
        let c = CenterSet::from_indices(&ids);
        let v = undominated_vertex(&b.f, &c);
        assert!(v.is_some(), "round {round}: {size} vertices dominate");
        let e = expected_radius(&b.f, &c).unwrap();
        assert!(e > two, "round {round}: size {size} set reaches only {e}");
    }
}

#[test]
fn extraction_returns_a_cover_within_the_size_budget() {
    let b = square_bundle();
    let overhead = 4 * b.h_tilde.edge_count() + b.base.edge_count();
    for seed in 0..100u64 {
        let d = random_dominating_set(&b.f, seed * 13 + 1);
        let vc = extract_vc_from_ds(&b, &d).unwrap();
        assert!(is_vertex_cover(&b.h_tilde, &vc), "seed {seed}");
        assert!(
            vc.len() + overhead <= d.len(),
            "seed {seed}: cover {} from a set of {}",
            vc.len(),
            d.len()
        );
    }
}
