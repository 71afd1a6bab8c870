//! Shelter-location planning on weighted graphs where one vertex may become
//! unusable and block travel through itself.
//!
//! The library models a landscape as an undirected graph with positive
//! rational edge lengths. A *scenario* is the event that a single vertex
//! catches fire: its incident edges become one-way (away from the fire) and
//! no evacuation route may pass through it. Given a set of shelter vertices
//! `C`, every vertex gets an evacuation distance per scenario, and the
//! planning objective `E(C)` is the average over all scenarios of the worst
//! evacuation distance.
//!
//! Module map:
//! - [`length`]: exact nonnegative rational lengths with an infinity value.
//! - [`graph`]: vertex/graph types shared by everything else.
//! - [`dist`]: Dijkstra all-pairs, scenario distances, metric closure,
//!   threshold graphs, and uniform edge expansion.
//! - [`evacuation`]: evacuation distances, scenario radii, and `E(C)`.
//! - [`feasibility`]: articulation analysis; which center sets keep `E`
//!   finite.
//! - [`exact`]: small-instance exact solvers (enumeration, branch and bound).
//! - [`approx`]: the 2-approximation algorithms and the tree solvers.
//! - [`reduction`]: the grid-gadget construction that ties dominating sets on
//!   expanded grids to vertex covers, with structural verifiers.
//! - [`instances`]: file formats, generators, and built-in example
//!   instances.

#![forbid(unsafe_code)]

pub mod approx;
pub mod dist;
pub mod error;
pub mod evacuation;
pub mod exact;
pub mod feasibility;
pub mod graph;
pub mod instances;
pub mod length;
pub mod reduction;

pub use error::Error;
pub use graph::{CenterSet, UnweightedGraph, VertexId, WeightedGraph};
pub use length::Length;

/// Convenient alias used by all fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;
