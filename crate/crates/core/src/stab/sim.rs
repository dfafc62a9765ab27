use num_complex::Complex64 as C64;

use super::{Measurement, PauliOperator, StabError, StabilizerGroup};
use crate::gf2graph::{Axis, MeasurementLabel, VertexSet};
use crate::pattern::{validate, Angle, Command, Pattern};
use crate::simsv::eigenpair;

/// One branch of a stabilizer run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabBranch {
    /// Measured qubits with outcome 1.
    pub signals: VertexSet,
    /// Every measurement on the way had both outcomes equally likely.
    pub uniform: bool,
    /// Canonical stabilizer of the output state.
    pub output: Vec<PauliOperator>,
}

/// `±X_q`, `±Y_q` or `±Z_q` for a measurement whose observable is a Pauli.
pub fn pauli_observable(n: usize, q: usize, label: MeasurementLabel, angle: Angle) -> Option<PauliOperator> {
    let bloch = eigenpair(label, angle).ok()?.bloch;
    let (k, &b) = bloch.iter().enumerate().find(|(_, b)| b.abs() == 1.0)?;
    if bloch.iter().enumerate().any(|(j, c)| j != k && *c != 0.0) {
        return None;
    }
    let p = PauliOperator::single(n, q, [Axis::X, Axis::Y, Axis::Z][k]);
    Some(if b < 0.0 { p.neg() } else { p })
}

/// Runs an all-Pauli pattern with the inputs in `zero_inputs` prepared in
/// `|0⟩` and the other inputs in `|+⟩`. Branches of probability zero are not
/// listed.
pub fn simulate_pattern(pat: &Pattern, zero_inputs: &VertexSet) -> Result<Vec<StabBranch>, StabError> {
    validate(pat).map_err(StabError::Invalid)?;
    let n = pat.n();
    if let Some(v) = zero_inputs.difference(&pat.inputs).first() {
        return Err(StabError::NotInput(v));
    }
    let mut observables = vec![None; n];
    for cmd in &pat.commands {
        if let Command::Measure { qubit, label, angle } = *cmd {
            observables[qubit] =
                Some(pauli_observable(n, qubit, label, angle).ok_or(StabError::NonPauli(qubit))?);
        }
    }
    let gens = (0..n)
        .map(|q| PauliOperator::single(n, q, if zero_inputs.contains(q) { Axis::Z } else { Axis::X }))
        .collect();
    let start = StabilizerGroup::new(gens)?;
    let mut out = Vec::new();
    walk(pat, &observables, 0, start, VertexSet::empty(n), true, &mut out);
    Ok(out)
}

fn walk(
    pat: &Pattern,
    observables: &[Option<PauliOperator>],
    start: usize,
    mut group: StabilizerGroup,
    signals: VertexSet,
    uniform: bool,
    out: &mut Vec<StabBranch>,
) {
    for (i, cmd) in pat.commands.iter().enumerate().skip(start) {
        match *cmd {
            Command::New(_) => {}
            Command::Entangle(a, b) => group.conjugate_cz(a, b),
            Command::CorrectX { qubit, signal } => {
                if signals.contains(signal) {
                    group.conjugate_x(qubit);
                }
            }
            Command::CorrectZ { qubit, signal } => {
                if signals.contains(signal) {
                    group.conjugate_z(qubit);
                }
            }
            Command::Measure { qubit, .. } => {
                let m = observables[qubit].as_ref().expect("checked above");
                match group.measure(m) {
                    Measurement::Determined(s) => {
                        let mut sig = signals;
                        sig.set(qubit, s);
                        walk(pat, observables, i + 1, group, sig, false, out);
                    }
                    Measurement::Random(posts) => {
                        let [zero, one] = *posts;
                        for (s, g) in [(false, zero), (true, one)] {
                            let mut sig = signals.clone();
                            sig.set(qubit, s);
                            walk(pat, observables, i + 1, g, sig, uniform, out);
                        }
                    }
                }
                return;
            }
        }
    }
    let output = group
        .reduced(&pat.outputs)
        .expect("every non-output qubit is measured");
    out.push(StabBranch {
        signals,
        uniform,
        output,
    });
}

/// `‖|ψ⟩⟨ψ| − P‖_F` for a unit vector `ψ` over `register` and the projector
/// `P` onto the state stabilized by `stabilizers`. Equals
/// `√(2(1 − ‖Pψ‖²))`, computed as `√2 ‖ψ − Pψ‖` to keep precision near 0.
pub fn projector_distance(stabilizers: &[PauliOperator], register: &[usize], psi: &[C64]) -> f64 {
    let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<C64> = psi.iter().map(|a| a / norm).collect();
    let mut projected = psi.clone();
    for g in stabilizers {
        let gv = g.apply(register, &projected);
        for (p, q) in projected.iter_mut().zip(gv) {
            *p = (*p + q) * 0.5;
        }
    }
    std::f64::consts::SQRT_2
        * psi
            .iter()
            .zip(&projected)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
}
