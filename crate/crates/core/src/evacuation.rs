//! Evacuation distances and the probabilistic objective.
//!
//! One scenario per vertex, each equally likely. In scenario `s` the
//! evacuation distance of vertex `j` to a shelter set `c` is
//!
//! * `0` if `j` is itself a shelter (this includes `j = s`),
//! * the scenario distance `d^s(j, c)` if `j != s`,
//! * `max over neighbors v of s` of `len(s,v) + d^s(v, c)` if `j = s` is
//!   not a shelter: occupants of `s` flee along an arbitrary incident edge
//!   first, so the worst incident edge is charged.
//!
//! The scenario radius is the maximum evacuation distance over all
//! vertices, the probabilistic radius is the average of the scenario radii,
//! and the deterministic radius is their maximum.

use serde::Serialize;

use crate::dist::distances_to_set_in_scenario;
use crate::error::Error;
use crate::graph::{CenterSet, VertexId, WeightedGraph};
use crate::length::Length;
use crate::Result;

/// Evacuation distances, radius, and worst vertex for one scenario.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: VertexId,
    /// Evacuation distance of every vertex under this scenario.
    pub distances: Vec<Length>,
    pub radius: Length,
    /// Smallest vertex attaining the radius.
    pub argmax: VertexId,
}

/// Full evaluation of a shelter set: every scenario plus both aggregates.
#[derive(Clone, Debug, Serialize)]
pub struct EvaluationReport {
    pub scenarios: Vec<ScenarioReport>,
    /// Average scenario radius.
    pub probabilistic_radius: Length,
    /// Maximum scenario radius.
    pub deterministic_radius: Length,
}

fn check_scenario(g: &WeightedGraph, s: VertexId) -> Result<()> {
    if s.0 >= g.n() {
        return Err(Error::invalid(format!(
            "scenario vertex {s} outside [0,{})",
            g.n()
        )));
    }
    Ok(())
}

/// Evacuation distance of every vertex under scenario `s`.
pub fn evacuation_distances(g: &WeightedGraph, s: VertexId, c: &CenterSet) -> Result<Vec<Length>> {
    check_scenario(g, s)?;
    c.validate_for(g)?;
    let to_set = distances_to_set_in_scenario(g, s, c);
    let mut out = Vec::with_capacity(g.n());
    for j in 0..g.n() {
        let j = VertexId(j);
        let r = if c.contains(j) {
            Length::zero()
        } else if j != s {
            to_set[j.0].clone()
        } else {
            g.neighbors(s)
                .iter()
                .map(|(v, len)| len + &to_set[v.0])
                .max()
                .unwrap_or(Length::Infinity)
        };
        out.push(r);
    }
    Ok(out)
}

/// Evacuation distance of a single vertex under scenario `s`.
pub fn evacuation_distance(
    g: &WeightedGraph,
    s: VertexId,
    c: &CenterSet,
    j: VertexId,
) -> Result<Length> {
    if j.0 >= g.n() {
        return Err(Error::invalid(format!(
            "vertex {j} outside [0,{})",
            g.n()
        )));
    }
    Ok(evacuation_distances(g, s, c)?.swap_remove(j.0))
}

/// Scenario radius with its distance vector and worst vertex.
pub fn scenario_report(g: &WeightedGraph, s: VertexId, c: &CenterSet) -> Result<ScenarioReport> {
    let distances = evacuation_distances(g, s, c)?;
    let (mut radius, mut argmax) = (Length::zero(), VertexId(0));
    for (j, d) in distances.iter().enumerate() {
        if *d > radius {
            radius = d.clone();
            argmax = VertexId(j);
        }
    }
    Ok(ScenarioReport {
        scenario: s,
        distances,
        radius,
        argmax,
    })
}

/// Scenario radius alone.
pub fn scenario_radius(g: &WeightedGraph, s: VertexId, c: &CenterSet) -> Result<Length> {
    Ok(scenario_report(g, s, c)?.radius)
}

/// Evaluates `c` under every scenario.
pub fn evaluate(g: &WeightedGraph, c: &CenterSet) -> Result<EvaluationReport> {
    if g.n() == 0 {
        return Err(Error::invalid("cannot evaluate on an empty graph"));
    }
    c.validate_for(g)?;
    let scenarios: Vec<ScenarioReport> = (0..g.n())
        .map(|s| scenario_report(g, VertexId(s), c))
        .collect::<Result<_>>()?;
    let total: Length = scenarios.iter().map(|r| r.radius.clone()).sum();
    let probabilistic_radius = total.div_int(g.n() as u64);
    let deterministic_radius = scenarios
        .iter()
        .map(|r| r.radius.clone())
        .max()
        .expect("at least one scenario");
    Ok(EvaluationReport {
        scenarios,
        probabilistic_radius,
        deterministic_radius,
    })
}

/// Average scenario radius of `c`.
pub fn expected_radius(g: &WeightedGraph, c: &CenterSet) -> Result<Length> {
    Ok(evaluate(g, c)?.probabilistic_radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn len(v: i64) -> Length {
        Length::from_int(v as u64)
    }

    /// 14 vertices, mixed integer lengths, 2-connected.
    fn sample14() -> WeightedGraph {
        WeightedGraph::new(
            14,
            vec![
                (0, 1, len(1)),
                (1, 2, len(2)),
                (1, 6, len(3)),
                (0, 5, len(4)),
                (2, 3, len(3)),
                (2, 7, len(6)),
                (3, 4, len(1)),
                (4, 8, len(8)),
                (5, 6, len(8)),
                (5, 9, len(4)),
                (6, 7, len(5)),
                (6, 10, len(5)),
                (7, 11, len(6)),
                (8, 13, len(1)),
                (9, 10, len(4)),
                (11, 12, len(3)),
                (12, 13, len(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sample14_scenario_values() {
        let g = sample14();
        let c = CenterSet::from_indices(&[2, 9]);
        let s = VertexId(1);
        let r = evacuation_distances(&g, s, &c).unwrap();
        assert_eq!(r[0], len(8));
        assert_eq!(r[1], len(12));
        assert_eq!(r[2], Length::zero());
        let rep = scenario_report(&g, s, &c).unwrap();
        assert_eq!(rep.radius, len(15));
        assert_eq!(rep.argmax, VertexId(12));
    }

    #[test]
    fn shelters_have_zero_evacuation_distance_even_as_scenario() {
        let g = WeightedGraph::uniform(3, &[(0, 1), (1, 2)]).unwrap();
        let c = CenterSet::from_indices(&[0, 2]);
        for s in 0..3 {
            let r = evacuation_distances(&g, VertexId(s), &c).unwrap();
            assert_eq!(r[0], Length::zero());
            assert_eq!(r[2], Length::zero());
        }
        assert_eq!(
            evacuation_distance(&g, VertexId(0), &c, VertexId(0)).unwrap(),
            Length::zero()
        );
    }

    #[test]
    fn scenario_vertex_pays_its_worst_incident_edge() {
        // Star center 0 with leaves 1..3, lengths 1,2,3; shelter only at 1.
        let g = WeightedGraph::new(
            4,
            vec![(0, 1, len(1)), (0, 2, len(2)), (0, 3, len(3))],
        )
        .unwrap();
        let c = CenterSet::from_indices(&[1]);
        // Scenario at leaf 2: its occupants first cross the burning edge to
        // 0 (length 2), then walk to the shelter, total 3. Leaf 3 routes
        // through 0 normally, total 4.
        let r2 = evacuation_distances(&g, VertexId(2), &c).unwrap();
        assert_eq!(r2[0], len(1));
        assert_eq!(r2[2], len(3));
        assert_eq!(r2[3], len(4));
        // Scenario at the center: every incident edge is charged, and the
        // branches toward 2 and 3 dead-end, so the max is infinite. The
        // other leaves are trapped outright.
        let r0 = evacuation_distances(&g, VertexId(0), &c).unwrap();
        assert_eq!(r0[0], Length::Infinity);
        assert_eq!(r0[1], Length::zero());
        assert_eq!(r0[2], Length::Infinity);
    }

    #[test]
    fn isolated_scenario_vertex_is_trapped() {
        let g = WeightedGraph::uniform(3, &[(0, 1)]).unwrap();
        let c = CenterSet::from_indices(&[0]);
        let r = evacuation_distances(&g, VertexId(2), &c).unwrap();
        assert_eq!(r[2], Length::Infinity);
    }

    #[test]
    fn empty_center_set_gives_infinite_objective() {
        let g = WeightedGraph::uniform(2, &[(0, 1)]).unwrap();
        let rep = evaluate(&g, &CenterSet::empty()).unwrap();
        assert_eq!(rep.probabilistic_radius, Length::Infinity);
        assert_eq!(rep.deterministic_radius, Length::Infinity);
    }

    #[test]
    fn path3_with_both_ends_sheltered() {
        let g = WeightedGraph::uniform(3, &[(0, 1), (1, 2)]).unwrap();
        let c = CenterSet::from_indices(&[0, 2]);
        let rep = evaluate(&g, &c).unwrap();
        assert_eq!(rep.probabilistic_radius, Length::one());
        assert_eq!(rep.deterministic_radius, Length::one());
        for s in &rep.scenarios {
            assert_eq!(s.radius, Length::one());
        }
    }

    #[test]
    fn single_shelter_set_is_infinite_once_the_shelter_burns() {
        // With one shelter, the scenario at the shelter itself is fine (its
        // occupants are already safe) but any cut vertex scenario between
        // others and the shelter traps someone.
        let g = WeightedGraph::uniform(3, &[(0, 1), (1, 2)]).unwrap();
        let c = CenterSet::from_indices(&[1]);
        let rep = evaluate(&g, &c).unwrap();
        assert_eq!(rep.probabilistic_radius, Length::Infinity);
        let s1 = &rep.scenarios[1];
        assert_eq!(s1.radius, Length::Infinity);
    }

    #[test]
    fn all_vertices_sheltered_evaluates_to_zero() {
        let g = WeightedGraph::uniform(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = CenterSet::from_indices(&[0, 1, 2, 3]);
        let rep = evaluate(&g, &c).unwrap();
        assert!(rep.probabilistic_radius.is_zero());
    }

    #[test]
    fn average_is_an_exact_fraction() {
        // Path on 5 vertices sheltered at both ends: scenario radii are
        // 3,3,2,3,3, so the average is 14/5.
        let g = WeightedGraph::uniform(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = CenterSet::from_indices(&[0, 4]);
        let rep = evaluate(&g, &c).unwrap();
        let radii: Vec<Length> = rep.scenarios.iter().map(|s| s.radius.clone()).collect();
        assert_eq!(radii, vec![len(3), len(3), len(2), len(3), len(3)]);
        assert_eq!(rep.probabilistic_radius, Length::new(14, 5).unwrap());
        assert_eq!(rep.deterministic_radius, len(3));
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        let g = WeightedGraph::uniform(2, &[(0, 1)]).unwrap();
        assert!(evacuation_distances(&g, VertexId(2), &CenterSet::empty()).is_err());
        assert!(evacuation_distance(&g, VertexId(0), &CenterSet::empty(), VertexId(5)).is_err());
        let bad = CenterSet::from_indices(&[7]);
        assert!(evaluate(&g, &bad).is_err());
    }
}
