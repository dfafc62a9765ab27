use std::collections::BTreeMap;

use serde::Serialize;

use super::{simulate_pattern, StabError};
use crate::enumerate::{assignments, lowersets, subsets};
use crate::gf2graph::{MeasurementLabel, VertexSet};
use crate::pattern::{to_pattern, Angle, Mbqc, PatternError};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ProbeReason {
    /// A measurement outcome was forced.
    Determined { signals: Vec<String> },
    /// Two branches ended in different stabilizer states.
    Disagree { first: Vec<String>, second: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeFailure {
    /// Inputs prepared in `|0⟩`; the others are in `|+⟩`.
    pub zero_inputs: Vec<String>,
    pub lowerset: Vec<String>,
    pub angles: BTreeMap<String, String>,
    #[serde(flatten)]
    pub reason: ProbeReason,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub passed: bool,
    /// Number of (input preparation, lowerset, instantiation) cases run.
    pub cases: usize,
    pub failure: Option<ProbeFailure>,
}

/// Stabilizer check of a real MBQC: for every lowerset `S`, every Pauli
/// instantiation on `S` (`XZ` vertices measured as `Z` or `X`, Pauli
/// vertices at their own angle) and every choice of inputs fixed to `|0⟩`,
/// all outcomes must be uniform and all branches must agree. A necessary
/// condition for robust determinism; stops at the first failure.
pub fn pauli_robustness_probe(m: &Mbqc) -> Result<ProbeReport, StabError> {
    m.check()?;
    let og = &m.og;
    let n = og.n();
    if let Some(v) = (0..n).find(|&v| {
        og.label(v)
            .is_some_and(|l| !matches!(l, MeasurementLabel::X | MeasurementLabel::Z | MeasurementLabel::XZ))
    }) {
        return Err(StabError::NotReal(v));
    }
    let order = m.strategy.induced_order(n).map_err(PatternError::from)?;
    let name = |s: &VertexSet| -> Vec<String> { s.iter().map(|v| og.name(v).to_string()).collect() };
    let input_choices = subsets(og.inputs());
    let mut cases = 0;
    for s in lowersets(&order, &og.non_outputs()) {
        let planar: Vec<usize> = s
            .iter()
            .filter(|&v| og.label(v) == Some(MeasurementLabel::XZ))
            .collect();
        for choice in assignments(&[Angle::ZERO, Angle::from_ratio(1, 2)], planar.len()) {
            let mut beta: Vec<Option<Angle>> = (0..n).map(|v| s.contains(v).then(|| m.angles[v].expect("measured"))).collect();
            for (&v, &a) in planar.iter().zip(&choice) {
                beta[v] = Some(a);
            }
            let pat = to_pattern(&m.truncate(&s, &beta)?)?;
            for zero in &input_choices {
                cases += 1;
                let branches = simulate_pattern(&pat, zero)?;
                let reason = if let Some(b) = branches.iter().find(|b| !b.uniform) {
                    Some(ProbeReason::Determined {
                        signals: name(&b.signals),
                    })
                } else {
                    branches
                        .iter()
                        .find(|b| b.output != branches[0].output)
                        .map(|b| ProbeReason::Disagree {
                            first: name(&branches[0].signals),
                            second: name(&b.signals),
                        })
                };
                if let Some(reason) = reason {
                    return Ok(ProbeReport {
                        passed: false,
                        cases,
                        failure: Some(ProbeFailure {
                            zero_inputs: name(zero),
                            lowerset: name(&s),
                            angles: s
                                .iter()
                                .map(|v| (og.name(v).to_string(), beta[v].expect("on S").to_string()))
                                .collect(),
                            reason,
                        }),
                    });
                }
            }
        }
    }
    Ok(ProbeReport {
        passed: true,
        cases,
        failure: None,
    })
}
