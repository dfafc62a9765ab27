//! Measurement-Calculus patterns: commands, well-formedness, standard form,
//! conversion to and from the MBQC septuple, and the text/JSON formats.
//!
//! Commands are stored in application order: the first command runs first.

mod angle;
mod json;
mod mbqc;
mod standard;
mod text;

pub use angle::{Angle, AngleError};
pub use json::{CommandDoc, PatternDoc};
pub use mbqc::{of_pattern, to_pattern, Mbqc};
pub use standard::{is_standard, standardize};

use std::fmt;

use thiserror::Error;

use crate::gf2graph::{GraphError, MeasurementLabel, VertexSet};
use crate::synthesis::SynthesisError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Command {
    New(usize),
    Entangle(usize, usize),
    Measure {
        qubit: usize,
        label: MeasurementLabel,
        angle: Angle,
    },
    /// `X_qubit^{s_signal}`.
    CorrectX { qubit: usize, signal: usize },
    /// `Z_qubit^{s_signal}`.
    CorrectZ { qubit: usize, signal: usize },
}

impl Command {
    /// Qubits the command acts on (not its signal).
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Command::New(u) => (u, None),
            Command::Entangle(u, v) => (u, Some(v)),
            Command::Measure { qubit, .. }
            | Command::CorrectX { qubit, .. }
            | Command::CorrectZ { qubit, .. } => (qubit, None),
        };
        std::iter::once(a).chain(b)
    }

    pub fn signal(&self) -> Option<usize> {
        match *self {
            Command::CorrectX { signal, .. } | Command::CorrectZ { signal, .. } => Some(signal),
            _ => None,
        }
    }

    pub fn is_correction(&self) -> bool {
        self.signal().is_some()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        match *self {
            Command::New(u) => Command::New(perm[u]),
            Command::Entangle(u, v) => Command::Entangle(perm[u], perm[v]),
            Command::Measure { qubit, label, angle } => Command::Measure {
                qubit: perm[qubit],
                label,
                angle,
            },
            Command::CorrectX { qubit, signal } => Command::CorrectX {
                qubit: perm[qubit],
                signal: perm[signal],
            },
            Command::CorrectZ { qubit, signal } => Command::CorrectZ {
                qubit: perm[qubit],
                signal: perm[signal],
            },
        }
    }
}

/// A command sequence over a named qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct Pattern {
    pub names: Vec<String>,
    pub inputs: VertexSet,
    pub outputs: VertexSet,
    pub commands: Vec<Command>,
}

impl Pattern {
    pub fn new(names: Vec<String>, inputs: VertexSet, outputs: VertexSet, commands: Vec<Command>) -> Self {
        Self {
            names,
            inputs,
            outputs,
            commands,
        }
    }

    /// Register `0..n` with decimal names.
    pub fn with_ids(n: usize, inputs: &[usize], outputs: &[usize], commands: Vec<Command>) -> Self {
        Self::new(
            (0..n).map(|v| v.to_string()).collect(),
            VertexSet::from_ids(n, inputs.iter().copied()),
            VertexSet::from_ids(n, outputs.iter().copied()),
            commands,
        )
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn qubit_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Measured qubits, in command order.
    pub fn measured(&self) -> Vec<usize> {
        self.commands
            .iter()
            .filter_map(|c| match c {
                Command::Measure { qubit, .. } => Some(*qubit),
                _ => None,
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        validate(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Qubit id outside the register.
    UnknownQubit,
    SelfEntangle,
    /// The qubit was already measured.
    AfterMeasurement,
    /// The qubit is neither an input nor created yet.
    NotCreated,
    /// A second `N` on the same qubit, or an `N` on an input.
    CreatedTwice,
    /// The signal's qubit has not been measured yet.
    SignalNotMeasured,
    /// A Pauli label with an angle other than exactly 0 or π.
    PauliAngle,
    /// The unmeasured live qubits at the end differ from the declared outputs.
    OutputMismatch,
}

/// `index` is the offending command, or `commands.len()` for end checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub qubit: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "command {}: qubit {}: {:?}", self.index, self.qubit, self.kind)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PatternError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ill-formed pattern: {0}")]
    Invalid(Violation),
    #[error("command {index} breaks standard form: {reason}")]
    NotStandard { index: usize, reason: &'static str },
    #[error("vertex {0}: Pauli label needs angle 0 or pi")]
    PauliAngle(usize),
    #[error("vertex {0}: angle must be given exactly on measured vertices")]
    AngleDomain(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Strategy(#[from] SynthesisError),
    #[error("malformed pattern JSON: {0}")]
    Json(String),
}

/// Checks the well-formedness conditions in command order and reports the
/// first failure.
pub fn validate(pat: &Pattern) -> Result<(), Violation> {
    let n = pat.n();
    let mut live = pat.inputs.clone();
    let mut created = VertexSet::empty(n);
    let mut measured = VertexSet::empty(n);
    for (index, cmd) in pat.commands.iter().enumerate() {
        let fail = |qubit, kind| Err(Violation { index, qubit, kind });
        for q in cmd.qubits().chain(cmd.signal()) {
            if q >= n {
                return fail(q, ViolationKind::UnknownQubit);
            }
        }
        for q in cmd.qubits() {
            if measured.contains(q) {
                return fail(q, ViolationKind::AfterMeasurement);
            }
        }
        match *cmd {
            Command::New(u) => {
                if created.contains(u) || pat.inputs.contains(u) {
                    return fail(u, ViolationKind::CreatedTwice);
                }
                created.insert(u);
                live.insert(u);
            }
            Command::Entangle(u, v) => {
                if u == v {
                    return fail(u, ViolationKind::SelfEntangle);
                }
                if let Some(q) = [u, v].into_iter().find(|&q| !live.contains(q)) {
                    return fail(q, ViolationKind::NotCreated);
                }
            }
            Command::Measure { qubit, label, angle } => {
                if !live.contains(qubit) {
                    return fail(qubit, ViolationKind::NotCreated);
                }
                if label.is_pauli() && !angle.is_pauli() {
                    return fail(qubit, ViolationKind::PauliAngle);
                }
                measured.insert(qubit);
                live.remove(qubit);
            }
            Command::CorrectX { qubit, signal } | Command::CorrectZ { qubit, signal } => {
                if !live.contains(qubit) {
                    return fail(qubit, ViolationKind::NotCreated);
                }
                if !measured.contains(signal) {
                    return fail(signal, ViolationKind::SignalNotMeasured);
                }
            }
        }
    }
    if pat.inputs.width() != n || pat.outputs.width() != n {
        return Err(Violation {
            index: pat.commands.len(),
            qubit: n,
            kind: ViolationKind::UnknownQubit,
        });
    }
    if let Some(q) = live.symmetric_difference(&pat.outputs).first() {
        return Err(Violation {
            index: pat.commands.len(),
            qubit: q,
            kind: ViolationKind::OutputMismatch,
        });
    }
    Ok(())
}
