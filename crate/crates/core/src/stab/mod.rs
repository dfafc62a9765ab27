//! Pauli algebra and stabilizer simulation of all-Pauli patterns.

mod pauli;
mod probe;
mod sim;

pub use pauli::PauliOperator;
pub use probe::{pauli_robustness_probe, ProbeFailure, ProbeReason, ProbeReport};
pub use sim::{pauli_observable, projector_distance, simulate_pattern, StabBranch};

use thiserror::Error;

use crate::gf2graph::{linalg, Axis, OpenGraph, VertexSet};
use crate::pattern::{PatternError, Violation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabError {
    #[error("expected {expected} generators, got {got}")]
    Size { expected: usize, got: usize },
    #[error("generators {0} and {1} anticommute")]
    NotCommuting(usize, usize),
    #[error("generator {0} is not Hermitian")]
    NotHermitian(usize),
    #[error("generators are dependent")]
    Dependent,
    #[error("vertex {0} is not an input")]
    NotInput(usize),
    #[error("measurement {0} is not a single-qubit Pauli")]
    NotSingleQubit(usize),
    #[error("qubit {0} is measured twice")]
    Remeasured(usize),
    #[error("measurement of {0} is not a Pauli measurement")]
    NonPauli(usize),
    #[error("vertex {0} has a label outside {{X, Z}}")]
    NotReal(usize),
    #[error("ill-formed pattern: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// `n` independent, pairwise commuting Hermitian Paulis on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    generators: Vec<PauliOperator>,
}

/// Result of measuring a Pauli observable. Outcome `s` stands for the
/// eigenvalue `(−1)^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measurement {
    Determined(bool),
    /// Both outcomes with probability 1/2; `[post(0), post(1)]`.
    Random(Box<[StabilizerGroup; 2]>),
}

impl StabilizerGroup {
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self, StabError> {
        let n = generators.first().map_or(0, PauliOperator::n);
        if generators.len() != n || generators.iter().any(|g| g.n() != n) {
            return Err(StabError::Size {
                expected: n,
                got: generators.len(),
            });
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.is_hermitian() {
                return Err(StabError::NotHermitian(i));
            }
            if let Some(j) = (i + 1..n).find(|&j| !g.commutes(&generators[j])) {
                return Err(StabError::NotCommuting(i, j));
            }
        }
        let rows: Vec<VertexSet> = generators.iter().map(PauliOperator::symplectic).collect();
        if linalg::rank(&rows) != n {
            return Err(StabError::Dependent);
        }
        Ok(Self { generators })
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// `Some(true)` if `p` is in the group, `Some(false)` if `−p` is, and
    /// `None` if neither.
    pub fn contains(&self, p: &PauliOperator) -> Option<bool> {
        let rows: Vec<VertexSet> = self.generators.iter().map(PauliOperator::symplectic).collect();
        let coeffs = linalg::express(&rows, &p.symplectic())?;
        let product = coeffs
            .iter()
            .fold(PauliOperator::identity(self.n()), |acc, i| acc.mul(&self.generators[i]));
        match (product.phase + 4 - p.phase) % 4 {
            0 => Some(true),
            2 => Some(false),
            _ => None,
        }
    }

    pub fn conjugate_cz(&mut self, a: usize, b: usize) {
        self.generators.iter_mut().for_each(|g| g.conjugate_cz(a, b));
    }

    pub fn conjugate_x(&mut self, q: usize) {
        self.generators.iter_mut().for_each(|g| g.conjugate_x(q));
    }

    pub fn conjugate_z(&mut self, q: usize) {
        self.generators.iter_mut().for_each(|g| g.conjugate_z(q));
    }

    /// Measures the Hermitian Pauli `m`. A random outcome pivots on the first
    /// anticommuting generator.
    pub fn measure(&self, m: &PauliOperator) -> Measurement {
        let anti: Vec<usize> = (0..self.n())
            .filter(|&i| !self.generators[i].commutes(m))
            .collect();
        let Some((&pivot, rest)) = anti.split_first() else {
            let sign = self.contains(m).expect("maximal abelian group");
            return Measurement::Determined(!sign);
        };
        let mut base = self.generators.clone();
        for &j in rest {
            base[j] = base[j].mul(&self.generators[pivot]);
        }
        let post = |s: bool| {
            let mut gens = base.clone();
            gens[pivot] = if s { m.neg() } else { m.clone() };
            StabilizerGroup { generators: gens }
        };
        Measurement::Random(Box::new([post(false), post(true)]))
    }

    /// Reduced row echelon form over the columns `(q, x-bit)`, `(q, z-bit)`
    /// for `q` in `columns` order; unique for the group.
    fn echelon(&self, columns: &[usize]) -> Vec<PauliOperator> {
        let mut rows = self.generators.clone();
        let mut r = 0;
        for &q in columns {
            for xbit in [true, false] {
                let has = |p: &PauliOperator| if xbit { p.x.contains(q) } else { p.z.contains(q) };
                let Some(p) = (r..rows.len()).find(|&i| has(&rows[i])) else {
                    continue;
                };
                rows.swap(r, p);
                let pivot = rows[r].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != r && has(row) {
                        *row = row.mul(&pivot);
                    }
                }
                r += 1;
            }
        }
        rows
    }

    /// Stabilizer of the state on `outputs` once every other qubit is in a
    /// product eigenstate: the elements supported on `outputs`, in canonical
    /// echelon form. `None` if some other qubit is entangled with the rest.
    pub fn reduced(&self, outputs: &VertexSet) -> Option<Vec<PauliOperator>> {
        let n = self.n();
        let others: Vec<usize> = (0..n).filter(|q| !outputs.contains(*q)).collect();
        let cols: Vec<usize> = others.iter().copied().chain(outputs.iter()).collect();
        let rows = self.echelon(&cols);
        let kept: Vec<PauliOperator> = rows
            .into_iter()
            .filter(|p| p.support().is_subset(outputs))
            .collect();
        (kept.len() == outputs.len()).then_some(kept)
    }
}

/// `R_u = Z_u` for `u ∈ s`, `X_u Z_{N(u)}` otherwise.
pub fn initial_stabilizers(og: &OpenGraph, s: &VertexSet) -> Result<StabilizerGroup, StabError> {
    let n = og.n();
    if let Some(v) = s.difference(og.inputs()).first() {
        return Err(StabError::NotInput(v));
    }
    let gens = (0..n)
        .map(|u| {
            if s.contains(u) {
                PauliOperator::single(n, u, Axis::Z)
            } else {
                PauliOperator::xz(VertexSet::singleton(n, u), og.graph().neighbors(u).clone())
            }
        })
        .collect();
    StabilizerGroup::new(gens)
}

pub fn measure_pauli(group: &StabilizerGroup, m: &PauliOperator) -> Measurement {
    group.measure(m)
}

/// Generators `P⁽⁰⁾ … P⁽ⁿ⁻¹⁾` of the same group with `M_i` commuting with
/// `P⁽ʲ⁾` whenever `j > i`. At step `i` the generators at positions `≥ i`
/// anticommuting with `M_i` are multiplied by the first of them, which is
/// then moved to position `i`.
pub fn reorder_generators(
    group: &StabilizerGroup,
    measurements: &[PauliOperator],
) -> Result<StabilizerGroup, StabError> {
    let n = group.n();
    let mut seen = VertexSet::empty(n);
    for (i, m) in measurements.iter().enumerate() {
        let support = m.support();
        if m.n() != n || support.len() != 1 || !m.is_hermitian() {
            return Err(StabError::NotSingleQubit(i));
        }
        let q = support.first().expect("one qubit");
        if seen.contains(q) {
            return Err(StabError::Remeasured(q));
        }
        seen.insert(q);
    }
    let mut gens = group.generators.clone();
    for (i, m) in measurements.iter().enumerate().take(n) {
        let anti: Vec<usize> = (i..n).filter(|&j| !gens[j].commutes(m)).collect();
        let Some((&pivot, rest)) = anti.split_first() else {
            continue;
        };
        for &j in rest {
            gens[j] = gens[j].mul(&gens[pivot]);
        }
        gens.swap(i, pivot);
    }
    Ok(StabilizerGroup { generators: gens })
}

#[cfg(test)]
mod tests;
