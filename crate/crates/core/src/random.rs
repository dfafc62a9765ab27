//! Seeded random open graphs and patterns.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::flowcheck::{input_label_constraint, CorrectionFlow};
use crate::flowfind::{find_pauli_flow_bruteforce, BruteForceBound};
use crate::gf2graph::{MeasurementLabel, OpenGraph};
use crate::pattern::{Angle, Command, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelSet {
    /// All six labels.
    All,
    /// `X`, `Z` and `XZ`.
    Real,
    /// `XY`, `XZ` and `YZ`.
    Planar,
    /// `X`, `Y` and `Z`.
    Pauli,
}

impl LabelSet {
    pub fn labels(self) -> &'static [MeasurementLabel] {
        use MeasurementLabel as L;
        match self {
            LabelSet::All => &L::ALL,
            LabelSet::Real => &[L::X, L::Z, L::XZ],
            LabelSet::Planar => &[L::XY, L::XZ, L::YZ],
            LabelSet::Pauli => &[L::X, L::Y, L::Z],
        }
    }
}

/// Parameters of a random open graph. The seed determines the result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub edge_probability: f64,
    pub inputs: usize,
    pub outputs: usize,
    pub labels: LabelSet,
    /// Edges only between the two sides of a random bipartition.
    pub bipartite: bool,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            edge_probability: 0.5,
            inputs: n / 3,
            outputs: n.div_ceil(3).max(1).min(n),
            labels: LabelSet::All,
            bipartite: false,
            seed,
        }
    }
}

fn sample(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> OpenGraph {
    let n = spec.n;
    let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (!spec.bipartite || side[u] != side[v]) && rng.gen_bool(spec.edge_probability) {
                edges.push((u, v));
            }
        }
    }
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let inputs: Vec<usize> = ids[..spec.inputs.min(n)].to_vec();
    ids.shuffle(rng);
    let outputs: Vec<usize> = ids[..spec.outputs.min(n)].to_vec();
    let alphabet = spec.labels.labels();
    let labels: Vec<(usize, MeasurementLabel)> = (0..n)
        .filter(|v| !outputs.contains(v))
        .map(|v| (v, *alphabet.choose(rng).expect("nonempty alphabet")))
        .collect();
    OpenGraph::from_parts(n, &edges, &inputs, &outputs, &labels).expect("well-formed by construction")
}

/// One open graph drawn from `spec`.
pub fn random_open_graph(spec: &InstanceSpec) -> OpenGraph {
    sample(spec, &mut ChaCha8Rng::seed_from_u64(spec.seed))
}

/// Draws from `spec` until an instance has a Pauli flow, rejecting measured
/// inputs whose label contains `Z` without searching. Gives up after
/// `attempts` draws.
pub fn random_flow_admitting(
    spec: &InstanceSpec,
    attempts: usize,
    bound: BruteForceBound,
) -> Option<(OpenGraph, CorrectionFlow)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..attempts {
        let og = sample(spec, &mut rng);
        if !input_label_constraint(&og).is_valid() || !bound.admits(&og) {
            continue;
        }
        if let Some(flow) = find_pauli_flow_bruteforce(&og, bound).ok().and_then(|r| r.flow) {
            return Some((og, flow));
        }
    }
    None
}

/// A random valid pattern on `n` qubits: creations, entanglers among live
/// qubits, measurements with angles drawn from `angles` (Pauli labels get
/// 0 or π), and corrections conditioned on earlier outcomes.
pub fn random_pattern(n: usize, inputs: usize, outputs: usize, labels: LabelSet, angles: &[Angle], seed: u64) -> Pattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let ins: Vec<usize> = ids[..inputs.min(n)].to_vec();
    ids.shuffle(&mut rng);
    let outs: Vec<usize> = ids[..outputs.min(n)].to_vec();
    let mut cmds: Vec<Command> = (0..n).filter(|v| !ins.contains(v)).map(Command::New).collect();
    cmds.shuffle(&mut rng);
    let mut order: Vec<usize> = (0..n).filter(|v| !outs.contains(v)).collect();
    order.shuffle(&mut rng);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                cmds.push(Command::Entangle(u, v));
            }
        }
    }
    let mut measured = Vec::new();
    for &u in &order {
        let label = *labels.labels().choose(&mut rng).expect("nonempty alphabet");
        let angle = if label.is_pauli() {
            if rng.gen() {
                Angle::PI
            } else {
                Angle::ZERO
            }
        } else {
            *angles.choose(&mut rng).unwrap_or(&Angle::ZERO)
        };
        cmds.push(Command::Measure { qubit: u, label, angle });
        measured.push(u);
        let live: Vec<usize> = (0..n).filter(|v| !measured.contains(v)).collect();
        for &q in &live {
            let signal = *measured.choose(&mut rng).expect("just measured");
            match rng.gen_range(0..4) {
                0 => cmds.push(Command::CorrectX { qubit: q, signal }),
                1 => cmds.push(Command::CorrectZ { qubit: q, signal }),
                _ => {}
            }
        }
    }
    Pattern::with_ids(n, &ins, &outs, cmds)
}
