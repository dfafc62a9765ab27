//! Commands behind the `pauliflow` binary.
//!
//! Every command takes file contents rather than paths and returns an
//! [`Outcome`]. Exit codes: 0 when the property holds, 1 when it is
//! violated, 2 for usage and parse errors ([`CliError`]).

pub mod fixtures;

use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Value};

use pauliflow::flowcheck::{verify_pauli_flow, CorrectionFlow, Violation};
use pauliflow::flowfind::{
    find_pauli_flow_bruteforce, find_pauli_flow_bruteforce_filtered, find_pauli_flow_with,
    find_synthesis_flow, flow_depth, BruteForceBound, FlowSearchResult, NoneReason, Outcome as Search,
};
use pauliflow::pattern::{of_pattern, standardize, to_pattern, Angle, Command, Mbqc, Pattern};
use pauliflow::random::{random_flow_admitting, random_open_graph, InstanceSpec};
use pauliflow::simsv::{
    branch_maps_agree, check_deterministic, check_robust_deterministic_with, check_strong_deterministic,
    InputDomain, RobustOptions, Verdict, TOLERANCE,
};
use pauliflow::synthesis::{
    bipartite_normal_form, measurement_depth, parallelize as parallelize_strategy, synthesize_corrections,
};
use pauliflow::{OpenGraph, VertexSet};

/// A usage or parse error; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

fn fail(e: impl fmt::Display) -> CliError {
    CliError(e.to_string())
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    /// One human-readable line.
    pub summary: String,
    pub report: Value,
    /// File produced by the command: flow JSON, `.mcpat` or graph JSON.
    pub artifact: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn parse_graph(text: &str) -> Result<OpenGraph, CliError> {
    OpenGraph::from_json(text).map_err(fail)
}

/// `.mcpat` text, or pattern JSON when the text starts with `{`.
pub fn parse_pattern(text: &str) -> Result<Pattern, CliError> {
    if text.trim_start().starts_with('{') {
        Pattern::from_json(text).map_err(fail)
    } else {
        Pattern::parse(text).map_err(fail)
    }
}

pub fn parse_angle(text: &str) -> Result<Angle, CliError> {
    text.parse().map_err(fail)
}

/// `k` caps `|Oᶜ|` and `k + 2` caps `|Iᶜ|`; 6 gives the library default.
pub fn brute_force_bound(k: usize) -> BruteForceBound {
    BruteForceBound {
        max_measured: k,
        max_correctors: k + 2,
    }
}

fn names(og: &OpenGraph, s: &VertexSet) -> Vec<String> {
    s.iter().map(|v| og.name(v).to_string()).collect()
}

fn violation_json(og: &OpenGraph, v: &Violation) -> Value {
    json!({
        "vertex": og.name(v.vertex),
        "condition": v.condition.to_string(),
        "witness": v.witness.map(|w| og.name(w).to_string()),
    })
}

fn describe_violation(og: &OpenGraph, v: &Violation) -> String {
    match v.witness {
        Some(w) => format!("condition {} fails at {} (witness {})", v.condition, og.name(v.vertex), og.name(w)),
        None => format!("condition {} fails at {}", v.condition, og.name(v.vertex)),
    }
}

fn flow_json(og: &OpenGraph, f: &CorrectionFlow) -> Value {
    serde_json::to_value(f.to_doc(og)).expect("flow documents serialize")
}

pub fn verify_flow(graph: &str, flow: &str) -> Result<Outcome, CliError> {
    let og = parse_graph(graph)?;
    let f = CorrectionFlow::from_json(&og, flow).map_err(fail)?;
    let verdict = verify_pauli_flow(&og, &f).map_err(fail)?;
    Ok(match verdict.violation() {
        None => Outcome {
            passed: true,
            summary: "valid Pauli flow".into(),
            report: json!({ "valid": true }),
            artifact: None,
        },
        Some(v) => Outcome {
            passed: false,
            summary: format!("not a Pauli flow: {}", describe_violation(&og, &v)),
            report: json!({ "valid": false, "violation": violation_json(&og, &v) }),
            artifact: None,
        },
    })
}

fn none_reason(og: &OpenGraph, r: &FlowSearchResult) -> (&'static str, String) {
    match r.outcome {
        Search::Found => ("found", "flow found".into()),
        Search::NoneExists(NoneReason::InputLabel(v)) => (
            "none",
            format!("none: input {} has Z in its label", og.name(v.vertex)),
        ),
        Search::NoneExists(NoneReason::BruteForce) => ("none", "none: exhaustive search found no flow".into()),
        Search::NotFound => (
            "unknown",
            "none found: layering stalled and the instance exceeds the brute-force bound".into(),
        ),
    }
}

pub fn find_flow(graph: &str, bound: BruteForceBound) -> Result<Outcome, CliError> {
    let og = parse_graph(graph)?;
    let r = find_pauli_flow_with(&og, bound);
    let (status, summary) = none_reason(&og, &r);
    let stats = json!({ "nodes": r.stats.nodes, "solves": r.stats.solves });
    Ok(match &r.flow {
        Some(f) => Outcome {
            passed: true,
            summary: format!("flow found, depth {}", flow_depth(f)),
            report: json!({ "status": status, "depth": flow_depth(f), "flow": flow_json(&og, f), "stats": stats }),
            artifact: Some(f.to_json(&og) + "\n"),
        },
        None => Outcome {
            passed: false,
            summary,
            report: json!({ "status": status, "stats": stats }),
            artifact: Some("none\n".into()),
        },
    })
}

fn no_flow(og: &OpenGraph, r: &FlowSearchResult) -> Outcome {
    let (status, summary) = none_reason(og, r);
    Outcome {
        passed: false,
        summary: format!("no flow ({summary})"),
        report: json!({ "status": status }),
        artifact: None,
    }
}

/// Flow, synthesized corrections and the standard pattern, with `angle` on
/// every planar vertex and 0 on Pauli vertices.
pub fn synthesize(graph: &str, angle: Angle, bound: BruteForceBound) -> Result<Outcome, CliError> {
    let og = parse_graph(graph)?;
    let r = find_synthesis_flow(&og, bound);
    let Some(flow) = &r.flow else {
        return Ok(no_flow(&og, &r));
    };
    let strategy = synthesize_corrections(&og, flow).map_err(fail)?;
    let depth = measurement_depth(&og, &strategy).map_err(fail)?;
    let m = Mbqc::with_uniform_angle(og.clone(), angle, strategy).map_err(fail)?;
    let pat = to_pattern(&m).map_err(fail)?;
    Ok(Outcome {
        passed: true,
        summary: format!("pattern with {} commands, measurement depth {depth}", pat.commands.len()),
        report: json!({
            "status": "found",
            "flow": flow_json(&og, flow),
            "measurement_depth": depth,
            "pattern": pat.to_text(),
        }),
        artifact: Some(pat.to_text()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Det,
    Strong,
    Robust,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    pub level: Level,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            level: Level::Robust,
            samples: 20,
            seed: 2013,
            tolerance: TOLERANCE,
        }
    }
}

fn is_real(pat: &Pattern) -> bool {
    pat.commands
        .iter()
        .all(|c| !matches!(c, Command::Measure { label, .. } if !label.is_real()))
}

fn verdict_outcome(level: &str, v: Verdict, domain: Option<InputDomain>) -> Outcome {
    let passed = v.is_pass();
    let summary = match v.failure() {
        None => format!("{level}: pass"),
        Some(f) => format!(
            "{level}: fail, branches {{{}}} and {{{}}} differ by {:.3e}",
            f.first.join(" "),
            f.second.join(" "),
            f.deviation
        ),
    };
    Outcome {
        passed,
        summary,
        report: json!({ "level": level, "domain": domain, "result": v }),
        artifact: None,
    }
}

/// Determinism checks on a pattern. Strong and robust checks use real test
/// inputs when every measurement is real.
pub fn check(pattern: &str, opts: CheckOptions) -> Result<Outcome, CliError> {
    let pat = parse_pattern(pattern)?;
    let domain = if is_real(&pat) {
        InputDomain::Real
    } else {
        InputDomain::Complex
    };
    match opts.level {
        Level::Det => {
            let v = check_deterministic(&pat, opts.tolerance).map_err(fail)?;
            Ok(verdict_outcome("det", v, None))
        }
        Level::Strong => {
            let v = check_strong_deterministic(&pat, domain, opts.tolerance).map_err(fail)?;
            Ok(verdict_outcome("strong", v, Some(domain)))
        }
        Level::Robust => {
            let m = of_pattern(&standardize(&pat).map_err(fail)?).map_err(fail)?;
            let report = check_robust_deterministic_with(
                &m,
                RobustOptions {
                    samples: opts.samples,
                    seed: opts.seed,
                    tolerance: opts.tolerance,
                    stop_at_first_failure: false,
                },
            )
            .map_err(fail)?;
            let summary = match report.first_failure() {
                None => format!("robust: pass over {} lowersets", report.lowersets.len()),
                Some((l, s)) => format!(
                    "robust: fail at lowerset {{{}}} ({} sample{})",
                    l.lowerset.join(" "),
                    s.kind,
                    s.failure
                        .as_ref()
                        .map(|f| format!(", deviation {:.3e}", f.deviation))
                        .unwrap_or_default()
                ),
            };
            Ok(Outcome {
                passed: report.passed,
                summary,
                report: json!({ "level": "robust", "result": report }),
                artifact: None,
            })
        }
    }
}

/// Pipeline for bipartite real graphs: flow, normal form, order-free
/// corrections. Fails when the parallel pattern's branch maps differ from
/// the sequential one's or its depth is not 1.
pub fn parallelize(graph: &str, angle: Angle, bound: BruteForceBound) -> Result<Outcome, CliError> {
    let og = parse_graph(graph)?;
    if !og.is_real() {
        return Err(CliError("parallelize needs every label in {X, Z, XZ}".into()));
    }
    if og.graph().bipartition().is_none() {
        return Err(CliError("parallelize needs a bipartite graph".into()));
    }
    let r = find_synthesis_flow(&og, bound);
    let Some(flow) = &r.flow else {
        return Ok(no_flow(&og, &r));
    };
    let p = bipartite_normal_form(&og, flow).map_err(fail)?;
    let parallel = parallelize_strategy(&og, &p).map_err(fail)?;
    let depth = measurement_depth(&og, &parallel).map_err(fail)?;
    let sequential = synthesize_corrections(&og, flow).map_err(fail)?;
    let seq_pat = to_pattern(&Mbqc::with_uniform_angle(og.clone(), angle, sequential).map_err(fail)?).map_err(fail)?;
    let par_pat = to_pattern(&Mbqc::with_uniform_angle(og.clone(), angle, parallel.clone()).map_err(fail)?).map_err(fail)?;
    let agreement = match (
        pauliflow::simsv::all_branch_maps(&seq_pat),
        pauliflow::simsv::all_branch_maps(&par_pat),
    ) {
        (Ok(a), Ok(b)) => branch_maps_agree(&a, &b),
        _ => None,
    };
    let outputs_only = parallel.targets_outputs_only(&og);
    let measured = !og.non_outputs().is_empty();
    let simulated = og.n() <= pauliflow::simsv::MAX_QUBITS;
    let maps_match = !simulated || agreement.is_some_and(|d| d <= TOLERANCE);
    let passed = outputs_only && (!measured || depth == 1) && maps_match;
    let p_json: serde_json::Map<String, Value> = og
        .non_outputs()
        .iter()
        .map(|u| (og.name(u).to_string(), json!(names(&og, p[u].as_ref().expect("normal form on Oᶜ")))))
        .collect();
    Ok(Outcome {
        passed,
        summary: format!(
            "measurement depth {depth}, corrections on outputs only: {outputs_only}, branch maps {}",
            match agreement {
                Some(d) if simulated => format!("agree within {d:.3e}"),
                None if simulated => "differ".to_string(),
                _ => "not simulated".to_string(),
            }
        ),
        report: json!({
            "measurement_depth": depth,
            "outputs_only": outputs_only,
            "normal_form": p_json,
            "branch_map_distance": agreement,
            "pattern": par_pat.to_text(),
        }),
        artifact: Some(par_pat.to_text()),
    })
}

/// One leg of a counterexample run.
fn leg(name: &str, passed: bool, detail: String) -> Value {
    json!({ "leg": name, "passed": passed, "detail": detail })
}

/// Runs the bundled counterexamples: each pattern is robustly
/// deterministic, its graph has no Pauli flow with `1 < 2`, and it does have
/// a Pauli flow whose order does not put 1 below 2.
pub fn counterexamples(samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut instances = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for fx in fixtures::COUNTEREXAMPLES {
        let og = parse_graph(fx.graph)?;
        let pat = parse_pattern(fx.pattern)?;
        let m = of_pattern(&pat).map_err(fail)?;
        let one = og.vertex_by_name("1").ok_or_else(|| CliError(format!("{}: no vertex 1", fx.name)))?;
        let two = og.vertex_by_name("2").ok_or_else(|| CliError(format!("{}: no vertex 2", fx.name)))?;

        let report = check_robust_deterministic_with(
            &m,
            RobustOptions {
                samples,
                seed,
                ..RobustOptions::default()
            },
        )
        .map_err(fail)?;
        let same_graph = m.og == og;
        let robust = report.passed && same_graph;
        let a = leg(
            "robust",
            robust,
            format!(
                "{} lowersets, pattern graph {} the bundled graph",
                report.lowersets.len(),
                if same_graph { "matches" } else { "differs from" }
            ),
        );

        let bound = BruteForceBound::default();
        let ordered = find_pauli_flow_bruteforce_filtered(&og, bound, &[(one, two)]).map_err(fail)?;
        let b = leg(
            "no_flow_with_1_before_2",
            !ordered.found(),
            format!("{} total orders with 1 < 2 searched", ordered.stats.nodes),
        );

        let any = find_pauli_flow_bruteforce(&og, bound).map_err(fail)?;
        let incompatible = any.flow.as_ref().filter(|f| !f.order.lt(one, two));
        let c = leg(
            "incompatible_flow",
            incompatible.is_some(),
            match incompatible {
                Some(f) => format!("flow {}", serde_json::to_string(&flow_json(&og, f)).expect("json")),
                None => "no flow without 1 < 2".into(),
            },
        );
        let ok = robust && !ordered.found() && incompatible.is_some();
        all &= ok;
        lines.push(format!("{}: {}", fx.name, if ok { "pass" } else { "FAIL" }));
        instances.push(json!({ "name": fx.name, "passed": ok, "legs": [a, b, c] }));
    }
    Ok(Outcome {
        passed: all,
        summary: lines.join(", "),
        report: json!({ "passed": all, "instances": instances }),
        artifact: None,
    })
}

/// A random open graph; with `attempts`, the first of that many draws that
/// admits a Pauli flow.
pub fn generate(spec: &InstanceSpec, attempts: Option<usize>, bound: BruteForceBound) -> Result<Outcome, CliError> {
    if spec.inputs > spec.n || spec.outputs > spec.n {
        return Err(CliError("more inputs or outputs than vertices".into()));
    }
    if !(0.0..=1.0).contains(&spec.edge_probability) {
        return Err(CliError("edge probability must lie in [0, 1]".into()));
    }
    let og = match attempts {
        None => random_open_graph(spec),
        Some(k) => match random_flow_admitting(spec, k, bound) {
            Some((og, _)) => og,
            None => {
                return Ok(Outcome {
                    passed: false,
                    summary: format!("no flow-admitting instance in {k} draws"),
                    report: json!({ "spec": spec, "found": false }),
                    artifact: None,
                })
            }
        },
    };
    Ok(Outcome {
        passed: true,
        summary: format!("{} vertices, {} edges", og.n(), og.graph().edges().count()),
        report: json!({ "spec": spec, "graph": serde_json::to_value(og.to_doc()).expect("json") }),
        artifact: Some(og.to_json() + "\n"),
    })
}
