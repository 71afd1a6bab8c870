//! Articulation points, minimal articulation components, and the
//! feasibility test.
//!
//! A shelter set keeps every scenario radius finite exactly when it has at
//! least two shelters and touches every minimal articulation component
//! (MAC): a connected component of the graph minus its articulation points
//! that is adjacent to exactly one articulation point. Burning that
//! articulation point traps the component, so each MAC needs a shelter of
//! its own; two shelters overall guard against the scenario at a lone
//! shelter's component.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Error;
use crate::graph::{CenterSet, VertexId, WeightedGraph};
use crate::Result;

/// One minimal articulation component and the articulation point that
/// separates it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mac {
    /// Sorted component vertices; never contains an articulation point.
    pub vertices: Vec<VertexId>,
    /// The unique articulation point adjacent to the component.
    pub articulation: VertexId,
}

/// Articulation points plus the MAC list, ordered by smallest contained
/// vertex.
#[derive(Clone, Debug, Serialize)]
pub struct MacDecomposition {
    pub articulation_points: Vec<VertexId>,
    pub macs: Vec<Mac>,
}

impl MacDecomposition {
    /// Smallest budget admitting any feasible shelter set.
    pub fn min_feasible_p(&self) -> usize {
        self.macs.len().max(2)
    }
}

/// Why a shelter set is or is not feasible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FeasibilityReason {
    Ok,
    /// The set breaks a size constraint: fewer than two shelters, or more
    /// than the budget allows.
    TooFewCenters,
    /// Index into the decomposition's MAC list of the first unserved MAC.
    MissedMac(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub reason: FeasibilityReason,
    pub min_feasible_p: usize,
}

/// The articulation points of a connected graph, sorted.
pub fn articulation_points(g: &WeightedGraph) -> Result<Vec<VertexId>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n <= 2 {
        return Ok(Vec::new());
    }
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut is_ap = vec![false; n];
    let mut timer = 0usize;
    // Iterative lowpoint DFS from vertex 0; frames hold (vertex, parent,
    // next adjacency index).
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, UNSEEN, 0)];
    disc[0] = timer;
    low[0] = timer;
    timer += 1;
    let mut root_children = 0usize;
    while let Some(frame) = stack.last_mut() {
        let (v, parent, idx) = (frame.0, frame.1, frame.2);
        let nbrs = g.neighbors(VertexId(v));
        if idx < nbrs.len() {
            frame.2 += 1;
            let w = nbrs[idx].0 .0;
            if disc[w] == UNSEEN {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(pframe) = stack.last_mut() {
                let p = pframe.0;
                low[p] = low[p].min(low[v]);
                if pframe.1 != UNSEEN && low[v] >= disc[p] {
                    is_ap[p] = true;
                }
            }
        }
    }
    if root_children >= 2 {
        is_ap[0] = true;
    }
    Ok((0..n).filter(|&v| is_ap[v]).map(VertexId).collect())
}

/// Articulation points plus all MACs, each with its articulation point.
pub fn mac_decomposition(g: &WeightedGraph) -> Result<MacDecomposition> {
    if g.n() < 2 {
        return Err(Error::invalid(
            "MAC decomposition needs at least two vertices",
        ));
    }
    let aps = articulation_points(g)?;
    let n = g.n();
    let mut is_ap = vec![false; n];
    for a in &aps {
        is_ap[a.0] = true;
    }
    let mut macs = Vec::new();
    if !aps.is_empty() {
        let mut seen = is_ap.clone();
        for seed in 0..n {
            if seen[seed] {
                continue;
            }
            let mut queue = vec![seed];
            seen[seed] = true;
            let mut comp = Vec::new();
            let mut adjacent_aps: BTreeSet<VertexId> = BTreeSet::new();
            while let Some(v) = queue.pop() {
                comp.push(VertexId(v));
                for (w, _) in g.neighbors(VertexId(v)) {
                    if is_ap[w.0] {
                        adjacent_aps.insert(*w);
                    } else if !seen[w.0] {
                        seen[w.0] = true;
                        queue.push(w.0);
                    }
                }
            }
            if adjacent_aps.len() == 1 {
                comp.sort_unstable();
                macs.push(Mac {
                    vertices: comp,
                    articulation: *adjacent_aps.iter().next().unwrap(),
                });
            }
        }
    }
    Ok(MacDecomposition {
        articulation_points: aps,
        macs,
    })
}

/// Smallest budget admitting a feasible shelter set.
pub fn min_feasible_p(g: &WeightedGraph) -> Result<usize> {
    Ok(mac_decomposition(g)?.min_feasible_p())
}

/// Tests `c` against the budget `p`, minimum size 2, and MAC coverage.
pub fn is_feasible(g: &WeightedGraph, c: &CenterSet, p: usize) -> Result<FeasibilityVerdict> {
    c.validate_for(g)?;
    let dec = mac_decomposition(g)?;
    let min_p = dec.min_feasible_p();
    let reason = if c.len() < 2 || c.len() > p {
        FeasibilityReason::TooFewCenters
    } else if let Some(i) = dec
        .macs
        .iter()
        .position(|m| !m.vertices.iter().any(|&v| c.contains(v)))
    {
        FeasibilityReason::MissedMac(i)
    } else {
        FeasibilityReason::Ok
    };
    Ok(FeasibilityVerdict {
        feasible: reason == FeasibilityReason::Ok,
        reason,
        min_feasible_p: min_p,
    })
}
