//! Bundled instances. The files under `fixtures/` double as examples of the
//! graph, flow and `.mcpat` formats.

pub struct Counterexample {
    pub name: &'static str,
    pub graph: &'static str,
    pub pattern: &'static str,
}

pub const COUNTER_XY_GRAPH: &str = include_str!("../fixtures/counter_xy.json");
pub const COUNTER_XY_PATTERN: &str = include_str!("../fixtures/counter_xy.mcpat");
pub const COUNTER_YZ_GRAPH: &str = include_str!("../fixtures/counter_yz.json");
pub const COUNTER_YZ_PATTERN: &str = include_str!("../fixtures/counter_yz.mcpat");
pub const SINGLE_EDGE_GRAPH: &str = include_str!("../fixtures/single_edge.json");
pub const SINGLE_EDGE_FLOW: &str = include_str!("../fixtures/single_edge_flow.json");
pub const SINGLE_EDGE_PATTERN: &str = include_str!("../fixtures/single_edge.mcpat");

/// Robustly deterministic patterns whose graphs have a Pauli flow, but none
/// compatible with the measurement order `1 < 2`.
pub const COUNTEREXAMPLES: [Counterexample; 2] = [
    Counterexample {
        name: "counter_xy",
        graph: COUNTER_XY_GRAPH,
        pattern: COUNTER_XY_PATTERN,
    },
    Counterexample {
        name: "counter_yz",
        graph: COUNTER_YZ_GRAPH,
        pattern: COUNTER_YZ_PATTERN,
    },
];
