use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::{phase_aligned_distance, projective_distance};
use super::{all_branch_maps, BranchMap, SimError, TOLERANCE};
use crate::enumerate::lowersets;
use crate::gf2graph::VertexSet;
use crate::pattern::{to_pattern, Angle, Mbqc, Pattern};

/// Which input states a check quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputDomain {
    Complex,
    /// Real input states only, with a phase allowed to depend on the input.
    Real,
}

/// Two branches that disagree. Signals list the qubits with outcome 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchFailure {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub deviation: f64,
    /// The input state exposing the failure, when the check is per input.
    pub input: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(BranchFailure),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failure(&self) -> Option<&BranchFailure> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(f) => Some(f),
        }
    }
}

const INPUT_SEED: u64 = 0x51ab_1e5e_ed00;

fn names(pat: &Pattern, s: &VertexSet) -> Vec<String> {
    s.iter().map(|v| pat.name(v).to_string()).collect()
}

/// Basis states, `|+⟩^{⊗I}` and one random state of the domain.
fn test_inputs(k: usize, domain: InputDomain) -> Vec<(String, Vec<C64>)> {
    let dim = 1usize << k;
    let mut out = Vec::with_capacity(dim + 2);
    for c in 0..dim {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[c] = C64::new(1.0, 0.0);
        out.push((format!("basis {c}"), v));
    }
    if k > 0 {
        let a = 1.0 / (dim as f64).sqrt();
        out.push(("plus".into(), vec![C64::new(a, 0.0); dim]));
        let mut rng = ChaCha8Rng::seed_from_u64(INPUT_SEED + k as u64);
        let mut v: Vec<C64> = (0..dim)
            .map(|_| match domain {
                InputDomain::Real => C64::new(rng.gen_range(-1.0..1.0), 0.0),
                InputDomain::Complex => C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            })
            .collect();
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        out.push(("random".into(), v));
    }
    out
}

/// Branch outputs pairwise proportional for every test input.
pub fn check_deterministic(pat: &Pattern, tolerance: f64) -> Result<Verdict, SimError> {
    let maps = all_branch_maps(pat)?;
    for (label, phi) in test_inputs(pat.inputs.len(), InputDomain::Complex) {
        let outs: Vec<Vec<C64>> = maps.iter().map(|m| m.matrix.apply(&phi)).collect();
        let Some(base) = outs.iter().position(|v| super::matrix::norm(v) > tolerance) else {
            continue;
        };
        for (i, v) in outs.iter().enumerate() {
            if let Some(d) = projective_distance(&outs[base], v, tolerance) {
                if d > tolerance {
                    return Ok(Verdict::Fail(BranchFailure {
                        first: names(pat, &maps[base].signals),
                        second: names(pat, &maps[i].signals),
                        deviation: d,
                        input: Some(label),
                    }));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// All branches equal up to a global phase, after rescaling by
/// `√(2^{|measured|})` so a strongly deterministic pattern has unit-norm
/// branches (per unit input, or per unit Frobenius norm of an isometry).
pub fn check_strong_deterministic(
    pat: &Pattern,
    domain: InputDomain,
    tolerance: f64,
) -> Result<Verdict, SimError> {
    let maps = all_branch_maps(pat)?;
    Ok(strong_verdict(pat, &maps, domain, tolerance))
}

fn strong_verdict(pat: &Pattern, maps: &[BranchMap], domain: InputDomain, tolerance: f64) -> Verdict {
    let k = pat.measured().len();
    let branch_scale = (2f64).powi(k as i32).sqrt();
    let fail = |i: usize, deviation: f64, input: Option<String>| {
        Verdict::Fail(BranchFailure {
            first: names(pat, &maps[0].signals),
            second: names(pat, &maps[i].signals),
            deviation,
            input,
        })
    };
    match domain {
        InputDomain::Complex => {
            let scale = C64::new(branch_scale / (pat.inputs.len() as f64 / 2.0).exp2(), 0.0);
            let scaled: Vec<_> = maps.iter().map(|m| m.matrix.scale(scale)).collect();
            // Unit Frobenius norm is what an isometry rescaled this way has.
            let base_dev = (scaled[0].norm() - 1.0).abs();
            if base_dev > tolerance {
                let i = (1..maps.len()).next().unwrap_or(0);
                return fail(i, base_dev, None);
            }
            for (i, m) in scaled.iter().enumerate().skip(1) {
                let d = phase_aligned_distance(&scaled[0].data, &m.data);
                if d > tolerance {
                    return fail(i, d, None);
                }
            }
        }
        InputDomain::Real => {
            for (label, phi) in test_inputs(pat.inputs.len(), InputDomain::Real) {
                let outs: Vec<Vec<C64>> = maps
                    .iter()
                    .map(|m| m.matrix.apply(&phi).into_iter().map(|x| x * branch_scale).collect())
                    .collect();
                let base_dev = (super::matrix::norm(&outs[0]) - 1.0).abs();
                if base_dev > tolerance {
                    let i = (1..maps.len()).next().unwrap_or(0);
                    return fail(i, base_dev, Some(label));
                }
                for (i, v) in outs.iter().enumerate().skip(1) {
                    let d = phase_aligned_distance(&outs[0], v);
                    if d > tolerance {
                        return fail(i, d, Some(label));
                    }
                }
            }
        }
    }
    Verdict::Pass
}

/// Strong determinism of an MBQC through its standard pattern.
pub fn check_strong_mbqc(m: &Mbqc, domain: InputDomain, tolerance: f64) -> Result<Verdict, SimError> {
    check_strong_deterministic(&to_pattern(m)?, domain, tolerance)
}

/// Largest per-branch distance (after phase alignment) between two families
/// of branch maps; `None` when their signal sets differ.
pub fn branch_maps_agree(a: &[BranchMap], b: &[BranchMap]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let index: HashMap<&VertexSet, &BranchMap> = b.iter().map(|m| (&m.signals, m)).collect();
    let mut worst: f64 = 0.0;
    for m in a {
        let other = index.get(&m.signals)?;
        if (m.matrix.rows, m.matrix.cols) != (other.matrix.rows, other.matrix.cols) {
            return None;
        }
        worst = worst.max(phase_aligned_distance(&m.matrix.data, &other.matrix.data));
    }
    Some(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RobustOptions {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Stop at the first failing sample instead of completing the report.
    pub stop_at_first_failure: bool,
}

impl Default for RobustOptions {
    fn default() -> Self {
        Self {
            samples: 20,
            seed: 2013,
            tolerance: TOLERANCE,
            stop_at_first_failure: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    /// `grid`, `original` or `random`.
    pub kind: &'static str,
    pub angles: BTreeMap<String, String>,
    pub passed: bool,
    pub failure: Option<BranchFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowersetReport {
    pub lowerset: Vec<String>,
    pub passed: bool,
    pub samples: Vec<SampleReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustReport {
    pub passed: bool,
    pub domain: InputDomain,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub lowersets: Vec<LowersetReport>,
}

impl RobustReport {
    pub fn first_failure(&self) -> Option<(&LowersetReport, &SampleReport)> {
        self.lowersets.iter().find_map(|l| {
            l.samples
                .iter()
                .find(|s| !s.passed)
                .map(|s| (l, s))
        })
    }
}

pub fn check_robust_deterministic(m: &Mbqc, samples: usize, seed: u64) -> Result<RobustReport, SimError> {
    check_robust_deterministic_with(
        m,
        RobustOptions {
            samples,
            seed,
            ..RobustOptions::default()
        },
    )
}

/// For every lowerset `S` of the correction order and every sampled
/// `β : S → [0, 2π)`, checks strong determinism of the truncation
/// `(G, I, O ∪ Sᶜ, λ|S, β, x|S, z|S)`. Real MBQCs are checked on real
/// inputs. Pauli-labelled vertices only take the angles 0 and π.
pub fn check_robust_deterministic_with(m: &Mbqc, opts: RobustOptions) -> Result<RobustReport, SimError> {
    m.check()?;
    let og = &m.og;
    let n = og.n();
    let domain = if og.is_real() {
        InputDomain::Real
    } else {
        InputDomain::Complex
    };
    let order = m.strategy.induced_order(n).map_err(crate::pattern::PatternError::from)?;
    let measured = og.non_outputs();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let grid = [
        Angle::ZERO,
        Angle::from_ratio(1, 4),
        Angle::from_ratio(1, 2),
        Angle::PI,
    ];
    let mut report = RobustReport {
        passed: true,
        domain,
        samples: opts.samples,
        seed: opts.seed,
        tolerance: opts.tolerance,
        lowersets: Vec::new(),
    };
    for s in lowersets(&order, &measured) {
        let mut assignments: Vec<(&'static str, Vec<Option<Angle>>)> = Vec::new();
        let on_s = |f: &mut dyn FnMut(usize, bool) -> Angle| -> Vec<Option<Angle>> {
            (0..n)
                .map(|v| {
                    s.contains(v)
                        .then(|| f(v, og.label(v).expect("measured").is_pauli()))
                })
                .collect()
        };
        for g in grid {
            assignments.push((
                "grid",
                on_s(&mut |_, pauli| if pauli && !g.is_pi() { Angle::ZERO } else { g }),
            ));
        }
        assignments.push(("original", on_s(&mut |v, _| m.angles[v].expect("measured"))));
        for _ in 0..opts.samples {
            let beta = on_s(&mut |_, pauli| {
                if pauli {
                    if rng.gen::<bool>() {
                        Angle::PI
                    } else {
                        Angle::ZERO
                    }
                } else {
                    Angle::from_radians(rng.gen_range(0.0..2.0 * PI))
                }
            });
            assignments.push(("random", beta));
        }
        let mut lreport = LowersetReport {
            lowerset: s.iter().map(|v| og.name(v).to_string()).collect(),
            passed: true,
            samples: Vec::with_capacity(assignments.len()),
        };
        for (kind, beta) in assignments {
            let truncated = m.truncate(&s, &beta)?;
            let verdict = check_strong_mbqc(&truncated, domain, opts.tolerance)?;
            let passed = verdict.is_pass();
            lreport.passed &= passed;
            lreport.samples.push(SampleReport {
                kind,
                angles: s
                    .iter()
                    .map(|v| (og.name(v).to_string(), beta[v].expect("on S").to_string()))
                    .collect(),
                passed,
                failure: verdict.failure().cloned(),
            });
            if !passed && opts.stop_at_first_failure {
                break;
            }
        }
        report.passed &= lreport.passed;
        report.lowersets.push(lreport);
        if !report.passed && opts.stop_at_first_failure {
            break;
        }
    }
    Ok(report)
}
