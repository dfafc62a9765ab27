use crate::gf2graph::{Graph, OpenGraph, VertexSet};
use crate::synthesis::{CorrectionStrategy, SynthesisError};

use super::standard::require_standard;
use super::{validate, Angle, Command, Pattern, PatternError};

/// The septuple `(G, I, O, λ, α, x, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mbqc {
    pub og: OpenGraph,
    pub angles: Vec<Option<Angle>>,
    pub strategy: CorrectionStrategy,
}

impl Mbqc {
    pub fn new(
        og: OpenGraph,
        angles: Vec<Option<Angle>>,
        strategy: CorrectionStrategy,
    ) -> Result<Self, PatternError> {
        let m = Self {
            og,
            angles,
            strategy,
        };
        m.check()?;
        Ok(m)
    }

    /// Angle map on `Oᶜ`, Pauli angles, strategy domain and extensivity.
    pub fn check(&self) -> Result<(), PatternError> {
        let n = self.og.n();
        if self.angles.len() != n {
            return Err(PatternError::AngleDomain(self.angles.len().min(n)));
        }
        for v in 0..n {
            match (self.og.label(v), self.angles[v]) {
                (Some(label), Some(angle)) => {
                    if label.is_pauli() && !angle.is_pauli() {
                        return Err(PatternError::PauliAngle(v));
                    }
                }
                (None, None) => {}
                _ => return Err(PatternError::AngleDomain(v)),
            }
        }
        for (&u, s) in self.strategy.x.iter().chain(&self.strategy.z) {
            if self.og.outputs().contains(u) || u >= n {
                return Err(SynthesisError::NotMeasured(u).into());
            }
            if s.width() != n {
                return Err(PatternError::AngleDomain(u));
            }
        }
        self.strategy.induced_order(n)?;
        Ok(())
    }

    /// Uniform angle assignment: `angle` on planes, 0 on Pauli labels.
    pub fn with_uniform_angle(og: OpenGraph, angle: Angle, strategy: CorrectionStrategy) -> Result<Self, PatternError> {
        let angles = (0..og.n())
            .map(|v| og.label(v).map(|l| if l.is_pauli() { Angle::ZERO } else { angle }))
            .collect();
        Self::new(og, angles, strategy)
    }

    /// `(G, I, O ∪ Sᶜ, λ|S, β, x|S, z|S)` for a set `s` of measured vertices;
    /// `beta[v]` replaces the angle of `v ∈ s`.
    pub fn truncate(&self, s: &VertexSet, beta: &[Option<Angle>]) -> Result<Self, PatternError> {
        let og = self.og.with_outputs(s.complement())?;
        let angles = (0..self.og.n())
            .map(|v| if s.contains(v) { beta[v].or(self.angles[v]) } else { None })
            .collect();
        Self::new(og, angles, self.strategy.restrict(s))
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut angles = vec![None; self.angles.len()];
        for (v, a) in self.angles.iter().enumerate() {
            angles[perm[v]] = *a;
        }
        Self {
            og: self.og.permuted(perm),
            angles,
            strategy: self.strategy.permuted(perm),
        }
    }
}

/// Standard pattern: creations on `Iᶜ`, one entangler per edge, then the
/// measurements along a linearization of the correction order, each followed
/// by its `X` corrections on `x(u)` and then its `Z` corrections on `z(u)`.
pub fn to_pattern(m: &Mbqc) -> Result<Pattern, PatternError> {
    m.check()?;
    let og = &m.og;
    let n = og.n();
    let order = m.strategy.induced_order(n)?;
    let mut commands: Vec<Command> = og.non_inputs().iter().map(Command::New).collect();
    commands.extend(og.graph().edges().map(|(u, v)| Command::Entangle(u, v)));
    let empty = VertexSet::empty(n);
    for u in order.linearize(&og.non_outputs()) {
        commands.push(Command::Measure {
            qubit: u,
            label: og.label(u).expect("measured vertices are labelled"),
            angle: m.angles[u].expect("checked"),
        });
        for qubit in m.strategy.x(u).unwrap_or(&empty).iter() {
            commands.push(Command::CorrectX { qubit, signal: u });
        }
        for qubit in m.strategy.z(u).unwrap_or(&empty).iter() {
            commands.push(Command::CorrectZ { qubit, signal: u });
        }
    }
    let pat = Pattern::new(
        og.names().to_vec(),
        og.inputs().clone(),
        og.outputs().clone(),
        commands,
    );
    validate(&pat).map_err(PatternError::Invalid)?;
    Ok(pat)
}

/// Reads `(G, I, O, λ, α, x, z)` back from a standard pattern. Repeated
/// corrections with the same signal and target cancel.
pub fn of_pattern(pat: &Pattern) -> Result<Mbqc, PatternError> {
    validate(pat).map_err(PatternError::Invalid)?;
    require_standard(pat)?;
    let n = pat.n();
    let mut graph = Graph::new(n);
    let mut labels = vec![None; n];
    let mut angles = vec![None; n];
    let mut strategy = CorrectionStrategy::default();
    for (index, cmd) in pat.commands.iter().enumerate() {
        match *cmd {
            Command::New(_) => {}
            Command::Entangle(u, v) => {
                if graph.has_edge(u, v) {
                    return Err(PatternError::NotStandard {
                        index,
                        reason: "edge entangled twice",
                    });
                }
                graph.add_edge(u, v)?;
            }
            Command::Measure { qubit, label, angle } => {
                labels[qubit] = Some(label);
                angles[qubit] = Some(angle);
                strategy.x.entry(qubit).or_insert_with(|| VertexSet::empty(n));
                strategy.z.entry(qubit).or_insert_with(|| VertexSet::empty(n));
            }
            Command::CorrectX { qubit, signal } => {
                strategy.x.get_mut(&signal).expect("validated").toggle(qubit);
            }
            Command::CorrectZ { qubit, signal } => {
                strategy.z.get_mut(&signal).expect("validated").toggle(qubit);
            }
        }
    }
    let og = OpenGraph::with_names(
        graph,
        pat.inputs.clone(),
        pat.outputs.clone(),
        labels,
        pat.names.clone(),
    )?;
    Mbqc::new(og, angles, strategy)
}
