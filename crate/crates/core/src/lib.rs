//! Flow theory for measurement-based quantum computation.
//!
//! * [`gf2graph`]: graphs, open graphs and GF(2) set algebra.
//! * [`flowcheck`]: Pauli flow / gflow / causal flow verification.
//! * [`flowfind`]: layered and exhaustive Pauli flow search.
//! * [`synthesis`]: correction strategies, the bipartite real normal form and
//!   depth-one parallelization.
//! * [`pattern`]: Measurement-Calculus patterns and their text format.
//! * [`simsv`]: dense branch maps and determinism checks.
//! * [`stab`]: Pauli algebra and stabilizer simulation.

pub mod enumerate;
pub mod flowcheck;
pub mod flowfind;
pub mod gf2graph;
pub mod pattern;
pub mod random;
pub mod simsv;
pub mod stab;
pub mod synthesis;

pub use gf2graph::{Axis, Graph, GraphError, MeasurementLabel, OpenGraph, VertexSet};
