//! Vertex-indexed graphs, open graphs and the GF(2) set algebra.

mod graph;
mod json;
pub mod linalg;
mod open_graph;
mod vertex_set;

pub use graph::Graph;
pub use json::{Name, OpenGraphDoc, SymbolTable};
pub use open_graph::{Axis, MeasurementLabel, OpenGraph};
pub use vertex_set::VertexSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set of width {width} used with a graph on {n} vertices")]
    WidthMismatch { width: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("non-output vertex {0} has no measurement label")]
    MissingLabel(usize),
    #[error("output vertex {0} carries a measurement label")]
    LabelOnOutput(usize),
    #[error("unknown measurement label {0:?}")]
    UnknownLabel(String),
    #[error("unknown vertex name {0:?}")]
    UnknownVertex(String),
    #[error("vertex name {0:?} declared twice")]
    DuplicateName(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}
