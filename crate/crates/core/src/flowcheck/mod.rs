//! Pauli flow, gflow and causal flow verification.
//!
//! Two independent checkers are provided: [`verify_pauli_flow`] evaluates the
//! three-condition characterization `(c_X)`, `(c_Y)`, `(c_Z)`, and
//! [`verify_pauli_flow_original`] evaluates the nine conditions (P1)–(P9)
//! literally. Both report the first violation in ascending vertex order.

mod json;
mod order;

pub use json::FlowDoc;
pub use order::PartialOrder;

use std::fmt;

use thiserror::Error;

use crate::gf2graph::{Axis, MeasurementLabel, OpenGraph, VertexSet};

/// Contract errors: the candidate flow does not even have the right shape.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("order is cyclic through vertex {0}")]
    CyclicOrder(usize),
    #[error("flow and open graph disagree on the vertex count ({flow} vs {graph})")]
    SizeMismatch { flow: usize, graph: usize },
    #[error("correction set missing for measured vertex {0}")]
    MissingCorrection(usize),
    #[error("correction set given for output vertex {0}")]
    CorrectionOnOutput(usize),
    #[error("p({vertex}) contains input vertex {input}")]
    CorrectionOnInput { vertex: usize, input: usize },
    #[error("order relates output vertex {0}")]
    OrderOnOutput(usize),
    #[error("vertex {0} is not measured in the X-Z plane or a real Pauli basis")]
    NotReal(usize),
    #[error("vertex {0} carries a Pauli label where a plane is required")]
    NotPlanar(usize),
    #[error("unknown vertex name {0:?}")]
    UnknownVertex(String),
    #[error("malformed flow JSON: {0}")]
    Json(String),
}

/// Candidate witness `(p, <)`: `p[u]` is defined on the non-outputs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CorrectionFlow {
    pub p: Vec<Option<VertexSet>>,
    pub order: PartialOrder,
}

impl CorrectionFlow {
    pub fn new(p: Vec<Option<VertexSet>>, order: PartialOrder) -> Self {
        Self { p, order }
    }

    /// Looks up `p(u)`; panics on outputs.
    pub fn correction(&self, u: usize) -> &VertexSet {
        self.p[u].as_ref().expect("p is defined on every non-output")
    }

    /// Checks the domain and codomain conventions against `og`.
    pub fn check_shape(&self, og: &OpenGraph) -> Result<(), FlowError> {
        let n = og.n();
        if self.p.len() != n || self.order.n() != n {
            return Err(FlowError::SizeMismatch {
                flow: self.p.len(),
                graph: n,
            });
        }
        for (u, pu) in self.p.iter().enumerate() {
            match (og.outputs().contains(u), pu) {
                (true, Some(_)) => return Err(FlowError::CorrectionOnOutput(u)),
                (false, None) => return Err(FlowError::MissingCorrection(u)),
                (false, Some(set)) => {
                    if set.width() != n {
                        return Err(FlowError::SizeMismatch {
                            flow: set.width(),
                            graph: n,
                        });
                    }
                    if let Some(input) = set.intersection(og.inputs()).first() {
                        return Err(FlowError::CorrectionOnInput { vertex: u, input });
                    }
                }
                (true, None) => {}
            }
        }
        if let Some((a, b)) = self
            .order
            .pairs()
            .find(|&(a, b)| og.outputs().contains(a) || og.outputs().contains(b))
        {
            let out = if og.outputs().contains(a) { a } else { b };
            return Err(FlowError::OrderOnOutput(out));
        }
        Ok(())
    }

    /// Same flow after relabelling vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.p.len();
        let mut p = vec![None; n];
        for (u, pu) in self.p.iter().enumerate() {
            p[perm[u]] = pu
                .as_ref()
                .map(|s| VertexSet::from_ids(n, s.iter().map(|v| perm[v])));
        }
        Self {
            p,
            order: self.order.permuted(perm),
        }
    }
}

/// The condition a flow failed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Condition {
    /// `X ∈ λ_u`: membership in `Odd(p(·))`.
    CX,
    /// `Y ∈ λ_u`: membership in `Odd[p(·)]`.
    CY,
    /// `Z ∈ λ_u`: membership in `p(·)`.
    CZ,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    /// Causal flow needs `|p(u)| = 1`.
    Singleton,
    /// An input vertex whose label contains `Z`.
    InputZ,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::CX => "c_X",
            Condition::CY => "c_Y",
            Condition::CZ => "c_Z",
            Condition::P1 => "P1",
            Condition::P2 => "P2",
            Condition::P3 => "P3",
            Condition::P4 => "P4",
            Condition::P5 => "P5",
            Condition::P6 => "P6",
            Condition::P7 => "P7",
            Condition::P8 => "P8",
            Condition::P9 => "P9",
            Condition::Singleton => "singleton",
            Condition::InputZ => "input-Z",
        };
        f.write_str(s)
    }
}

/// First violated condition at vertex `vertex`. `witness` is the other vertex
/// involved (`v` in the union over `v ≥ u`, or in the pairwise conditions),
/// absent when `vertex`'s own membership fails.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Violation {
    pub vertex: usize,
    pub condition: Condition,
    pub witness: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Valid,
    Violated(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<Violation> {
        match self {
            Verdict::Valid => None,
            Verdict::Violated(v) => Some(*v),
        }
    }

    fn fail(vertex: usize, condition: Condition, witness: Option<usize>) -> Self {
        Verdict::Violated(Violation {
            vertex,
            condition,
            witness,
        })
    }
}

const AXES: [(Axis, Condition); 3] = [
    (Axis::X, Condition::CX),
    (Axis::Y, Condition::CY),
    (Axis::Z, Condition::CZ),
];

/// Evaluates `(c_A)` for every axis `A` in `axes`.
fn check_axes(og: &OpenGraph, f: &CorrectionFlow, axes: &[(Axis, Condition)]) -> Verdict {
    let g = og.graph();
    let n = og.n();
    let measured = og.non_outputs();
    // Per vertex: p(v), Odd(p(v)), Odd[p(v)].
    let empty = VertexSet::empty(n);
    let sets: Vec<[VertexSet; 3]> = (0..n)
        .map(|v| match &f.p[v] {
            Some(pv) => {
                let odd = g.odd(pv);
                let closed = &odd ^ pv;
                [odd, closed, pv.clone()]
            }
            None => [empty.clone(), empty.clone(), empty.clone()],
        })
        .collect();
    let index = |axis: Axis| match axis {
        Axis::X => 0,
        Axis::Y => 1,
        Axis::Z => 2,
    };
    for u in measured.iter() {
        let label = og.label(u).expect("non-outputs are labelled");
        for &(axis, cond) in axes {
            if !label.contains(axis) {
                continue;
            }
            let k = index(axis);
            if !sets[u][k].contains(u) {
                return Verdict::fail(u, cond, None);
            }
            if let Some(v) = measured
                .iter()
                .find(|&v| v != u && !f.order.lt(v, u) && sets[v][k].contains(u))
            {
                return Verdict::fail(u, cond, Some(v));
            }
        }
    }
    Verdict::Valid
}

/// Pauli flow check via `(c_X)`, `(c_Y)`, `(c_Z)`.
pub fn verify_pauli_flow(og: &OpenGraph, f: &CorrectionFlow) -> Result<Verdict, FlowError> {
    f.check_shape(og)?;
    Ok(check_axes(og, f, &AXES))
}

/// Pauli flow check by literal evaluation of (P1)–(P9).
pub fn verify_pauli_flow_original(
    og: &OpenGraph,
    f: &CorrectionFlow,
) -> Result<Verdict, FlowError> {
    use MeasurementLabel as L;
    f.check_shape(og)?;
    let g = og.graph();
    let measured = og.non_outputs();
    let lt = |a: usize, b: usize| f.order.lt(a, b);
    // a ≤ b iff ¬(b < a)
    let le = |a: usize, b: usize| !lt(b, a);
    for u in measured.iter() {
        let pu = f.correction(u);
        let odd = g.odd(pu);
        let lu = og.label(u).expect("labelled");
        for v in measured.iter() {
            let lv = og.label(v).expect("labelled");
            if pu.contains(v) && u != v && !matches!(lv, L::X | L::Y) && !lt(u, v) {
                return Ok(Verdict::fail(u, Condition::P1, Some(v)));
            }
            if le(v, u) && u != v && !matches!(lv, L::Y | L::Z) && odd.contains(v) {
                return Ok(Verdict::fail(u, Condition::P2, Some(v)));
            }
            if le(v, u) && u != v && lv == L::Y && (pu.contains(v) != odd.contains(v)) {
                return Ok(Verdict::fail(u, Condition::P3, Some(v)));
            }
        }
        let in_p = pu.contains(u);
        let in_odd = odd.contains(u);
        let (holds, cond) = match lu {
            L::XY => (!in_p && in_odd, Condition::P4),
            L::XZ => (in_p && in_odd, Condition::P5),
            L::YZ => (in_p && !in_odd, Condition::P6),
            L::X => (in_odd, Condition::P7),
            L::Z => (in_p, Condition::P8),
            L::Y => ((!in_p && in_odd) ^ (in_p && !in_odd), Condition::P9),
        };
        if !holds {
            return Ok(Verdict::fail(u, cond, None));
        }
    }
    Ok(Verdict::Valid)
}

/// Real open graphs only need `(c_X)` and `(c_Z)`.
pub fn verify_real_pauli_flow(og: &OpenGraph, f: &CorrectionFlow) -> Result<Verdict, FlowError> {
    if let Some(v) = (0..og.n()).find(|&v| og.label(v).is_some_and(|l| !l.is_real())) {
        return Err(FlowError::NotReal(v));
    }
    f.check_shape(og)?;
    Ok(check_axes(og, f, &[AXES[0], AXES[2]]))
}

/// Gflow: a Pauli flow on an open graph whose labels are all planes.
pub fn verify_gflow(og: &OpenGraph, f: &CorrectionFlow) -> Result<Verdict, FlowError> {
    if let Some(v) = (0..og.n()).find(|&v| og.label(v).is_some_and(|l| l.is_pauli())) {
        return Err(FlowError::NotPlanar(v));
    }
    verify_pauli_flow(og, f)
}

/// Causal flow: a gflow with singleton correction sets.
pub fn verify_causal_flow(og: &OpenGraph, f: &CorrectionFlow) -> Result<Verdict, FlowError> {
    let verdict = verify_gflow(og, f)?;
    if !verdict.is_valid() {
        return Ok(verdict);
    }
    Ok(og
        .non_outputs()
        .iter()
        .find(|&u| f.correction(u).len() != 1)
        .map_or(Verdict::Valid, |u| Verdict::fail(u, Condition::Singleton, None)))
}

/// Necessary condition for any Pauli flow: no measured input has `Z ∈ λ`.
pub fn input_label_constraint(og: &OpenGraph) -> Verdict {
    og.inputs()
        .intersection(&og.non_outputs())
        .iter()
        .find(|&u| og.label(u).is_some_and(|l| l.contains(Axis::Z)))
        .map_or(Verdict::Valid, |u| Verdict::fail(u, Condition::InputZ, None))
}

#[cfg(test)]
mod tests;
