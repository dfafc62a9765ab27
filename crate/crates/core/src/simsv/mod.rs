//! Dense state-vector semantics: branch maps `A_s`, and brute-force
//! determinism, strong determinism and robust determinism checks.
//!
//! Matrices map the input space (bit `k` of a column index is the `k`-th
//! input in ascending id order) to the output space (bit `k` of a row index
//! is the `k`-th output).

mod determinism;
mod matrix;
mod observable;
mod state;

pub use determinism::{
    branch_maps_agree, check_deterministic, check_robust_deterministic,
    check_robust_deterministic_with, check_strong_deterministic, check_strong_mbqc,
    BranchFailure, InputDomain, LowersetReport, RobustOptions, RobustReport, SampleReport,
    Verdict,
};
pub use matrix::Matrix;
pub use observable::{eigenpair, Observable};

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::gf2graph::{MeasurementLabel, VertexSet};
use crate::pattern::{validate, Command, Pattern, PatternError, Violation};
use state::Batch;

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 12;

/// Default numerical tolerance.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("pattern has {0} qubits; the simulator handles at most 12")]
    Capacity(usize),
    #[error("{0} measurement needs angle 0 or pi, got {1}")]
    PauliAngle(MeasurementLabel, f64),
    #[error("ill-formed pattern: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("input state has {got} amplitudes, expected {expected}")]
    InputSize { got: usize, expected: usize },
}

/// `A_s` for the signal assignment `signals` (the measured qubits whose
/// outcome is 1).
#[derive(Clone, Debug, PartialEq)]
pub struct BranchMap {
    pub signals: VertexSet,
    pub matrix: Matrix,
}

fn prepare(pat: &Pattern) -> Result<(), SimError> {
    if pat.n() > MAX_QUBITS {
        return Err(SimError::Capacity(pat.n()));
    }
    validate(pat).map_err(SimError::Invalid)
}

/// Walks the command list; at each measurement either follows `fixed` or
/// branches on both outcomes (0 first).
fn walk(
    pat: &Pattern,
    start: usize,
    mut state: Batch,
    signals: VertexSet,
    fixed: Option<&VertexSet>,
    out: &mut Vec<(VertexSet, Batch)>,
) -> Result<(), SimError> {
    for (i, cmd) in pat.commands.iter().enumerate().skip(start) {
        match *cmd {
            Command::New(u) => state.add_plus(u),
            Command::Entangle(u, v) => state.cz(u, v),
            Command::CorrectX { qubit, signal } => {
                if signals.contains(signal) {
                    state.x(qubit);
                }
            }
            Command::CorrectZ { qubit, signal } => {
                if signals.contains(signal) {
                    state.z(qubit);
                }
            }
            Command::Measure { qubit, label, angle } => {
                let obs = eigenpair(label, angle)?;
                let outcomes: &[bool] = match fixed {
                    Some(s) if s.contains(qubit) => &[true],
                    Some(_) => &[false],
                    None => &[false, true],
                };
                for &o in outcomes {
                    let next = state.project(qubit, obs.bra(o));
                    let mut sig = signals.clone();
                    sig.set(qubit, o);
                    walk(pat, i + 1, next, sig, fixed, out)?;
                }
                return Ok(());
            }
        }
    }
    out.push((signals, state));
    Ok(())
}

fn outputs_of(pat: &Pattern) -> Vec<usize> {
    pat.outputs.iter().collect()
}

/// Single branch map `A_s`.
pub fn branch_map(pat: &Pattern, signals: &VertexSet) -> Result<BranchMap, SimError> {
    prepare(pat)?;
    let mut out = Vec::with_capacity(1);
    let start = Batch::identity(pat.inputs.iter().collect());
    walk(pat, 0, start, VertexSet::empty(pat.n()), Some(signals), &mut out)?;
    let (signals, state) = out.pop().expect("one branch");
    Ok(BranchMap {
        signals,
        matrix: state.into_matrix(&outputs_of(pat)),
    })
}

/// Every branch map, in lexicographic order of the outcome sequence (in
/// measurement order, 0 before 1).
pub fn all_branch_maps(pat: &Pattern) -> Result<Vec<BranchMap>, SimError> {
    prepare(pat)?;
    let mut out = Vec::new();
    let start = Batch::identity(pat.inputs.iter().collect());
    walk(pat, 0, start, VertexSet::empty(pat.n()), None, &mut out)?;
    let order = outputs_of(pat);
    Ok(out
        .into_iter()
        .map(|(signals, state)| BranchMap {
            signals,
            matrix: state.into_matrix(&order),
        })
        .collect())
}

/// Unnormalized post-measurement output states `A_s |φ⟩` for one input
/// state given over the inputs in ascending order.
pub fn branch_states(pat: &Pattern, input: &[C64]) -> Result<Vec<(VertexSet, Vec<C64>)>, SimError> {
    prepare(pat)?;
    let inputs: Vec<usize> = pat.inputs.iter().collect();
    let expected = 1usize << inputs.len();
    if input.len() != expected {
        return Err(SimError::InputSize {
            got: input.len(),
            expected,
        });
    }
    let mut out = Vec::new();
    walk(
        pat,
        0,
        Batch::single(inputs, input.to_vec()),
        VertexSet::empty(pat.n()),
        None,
        &mut out,
    )?;
    let order = outputs_of(pat);
    Ok(out
        .into_iter()
        .map(|(s, state)| (s, state.into_matrix(&order).data))
        .collect())
}

/// `max |(Σ_s A_s† A_s − I)_{ij}|`.
pub fn completeness_defect(maps: &[BranchMap]) -> f64 {
    let Some(first) = maps.first() else {
        return 0.0;
    };
    let dim = first.matrix.cols;
    let mut sum = Matrix::zeros(dim, dim);
    for m in maps {
        let g = m.matrix.gram();
        for (a, b) in sum.data.iter_mut().zip(&g.data) {
            *a += b;
        }
    }
    let id = Matrix::identity(dim);
    sum.data
        .iter()
        .zip(&id.data)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}
