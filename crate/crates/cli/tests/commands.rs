use std::process::Command;

use serde_json::Value;

use pauliflow::enumerate::subsets;
use pauliflow::flowcheck::{verify_pauli_flow, CorrectionFlow, PartialOrder};
use pauliflow::flowfind::{find_pauli_flow_bruteforce, BruteForceBound};
use pauliflow::pattern::Pattern;
use pauliflow::random::InstanceSpec;
use pauliflow::OpenGraph;
use pauliflow_cli::fixtures::*;
use pauliflow_cli::*;

const BOUND: BruteForceBound = BruteForceBound {
    max_measured: 6,
    max_correctors: 8,
};

fn sorted_commands(text: &str) -> Vec<String> {
    let pat = Pattern::parse(text).unwrap();
    let mut lines: Vec<String> = pat.to_text().lines().skip(3).map(str::to_string).collect();
    lines.sort();
    lines
}

fn robust(pattern: &str) -> Outcome {
    check(
        pattern,
        CheckOptions {
            level: Level::Robust,
            ..CheckOptions::default()
        },
    )
    .unwrap()
}

#[test]
fn verify_flow_on_fixtures() {
    let ok = verify_flow(SINGLE_EDGE_GRAPH, SINGLE_EDGE_FLOW).unwrap();
    assert!(ok.passed);
    assert_eq!(ok.exit_code(), 0);

    // Published order 1 < 2 with the corrections the pattern applies.
    let bad = verify_flow(COUNTER_XY_GRAPH, r#"{"p": {"1": ["2"], "2": ["3"]}, "order": [["1", "2"]]}"#).unwrap();
    assert!(!bad.passed);
    assert_eq!(bad.exit_code(), 1);
    assert!(bad.report["violation"]["condition"].is_string());
    assert!(bad.summary.contains("fails at"));

    assert!(verify_flow("{", SINGLE_EDGE_FLOW).is_err());
    assert!(verify_flow(SINGLE_EDGE_GRAPH, r#"{"p": {"zz": []}}"#).is_err());
}

#[test]
fn verify_flow_matches_brute_force_on_random_graphs() {
    for seed in 0..30 {
        let og = pauliflow::random::random_open_graph(&InstanceSpec::new(3 + seed as usize % 3, seed));
        let graph = og.to_json();
        let brute = find_pauli_flow_bruteforce(&og, BOUND).unwrap();
        if let Some(f) = &brute.flow {
            assert!(verify_flow(&graph, &f.to_json(&og)).unwrap().passed);
        }
        // Every candidate p with the empty order is judged like the library does.
        let measured: Vec<usize> = og.non_outputs().iter().collect();
        let candidates = subsets(&og.non_inputs());
        for c in candidates.iter().take(6) {
            let mut p = vec![None; og.n()];
            for &u in &measured {
                p[u] = Some(c.clone());
            }
            let f = CorrectionFlow::new(p, PartialOrder::empty(og.n()));
            let expected = verify_pauli_flow(&og, &f).unwrap().is_valid();
            assert_eq!(verify_flow(&graph, &f.to_json(&og)).unwrap().passed, expected);
        }
    }
}

#[test]
fn find_flow_examples() {
    let edge = find_flow(SINGLE_EDGE_GRAPH, BOUND).unwrap();
    assert!(edge.passed);
    let og = parse_graph(SINGLE_EDGE_GRAPH).unwrap();
    let f = CorrectionFlow::from_json(&og, edge.artifact.as_deref().unwrap()).unwrap();
    assert!(verify_pauli_flow(&og, &f).unwrap().is_valid());

    // The only flows of the counterexample put 2 first.
    let cx = find_flow(COUNTER_XY_GRAPH, BOUND).unwrap();
    assert!(cx.passed);
    assert_eq!(cx.report["flow"]["order"], serde_json::json!([["2", "1"]]));

    let z_input = r#"{"vertices": ["a", "b"], "edges": [["a", "b"]], "inputs": ["a"], "outputs": ["b"], "labels": {"a": "Z"}}"#;
    let none = find_flow(z_input, BOUND).unwrap();
    assert!(!none.passed);
    assert_eq!(none.artifact.as_deref(), Some("none\n"));
    assert_eq!(none.report["status"], "none");
}

#[test]
fn synthesize_single_edge_reproduces_fixture() {
    let out = synthesize(SINGLE_EDGE_GRAPH, parse_angle("1/4 pi").unwrap(), BOUND).unwrap();
    assert!(out.passed);
    let text = out.artifact.unwrap();
    assert_eq!(sorted_commands(&text), sorted_commands(SINGLE_EDGE_PATTERN));
    assert!(robust(&text).passed);
}

#[test]
fn synthesized_random_patterns_pass_robust_check() {
    let mut checked = 0;
    for seed in 0..40 {
        let spec = InstanceSpec::new(4, seed);
        let Ok(gen) = generate(&spec, Some(50), BOUND) else { continue };
        let Some(graph) = gen.artifact else { continue };
        let out = synthesize(&graph, parse_angle("1/3 pi").unwrap(), BOUND).unwrap();
        assert!(out.passed, "{graph}");
        let verdict = robust(out.artifact.as_deref().unwrap());
        assert!(verdict.passed, "{graph}\n{}", verdict.summary);
        checked += 1;
    }
    assert!(checked >= 20);
}

#[test]
fn synthesize_without_flow() {
    let out = synthesize(
        r#"{"vertices": ["a"], "outputs": [], "labels": {"a": "X"}}"#,
        parse_angle("0").unwrap(),
        BOUND,
    )
    .unwrap();
    assert!(!out.passed);
    assert!(out.summary.starts_with("no flow"));
    assert!(out.artifact.is_none());
}

#[test]
fn check_levels() {
    for pat in [COUNTER_XY_PATTERN, COUNTER_YZ_PATTERN, SINGLE_EDGE_PATTERN] {
        assert!(robust(pat).passed);
        for level in [Level::Det, Level::Strong] {
            let out = check(pat, CheckOptions { level, ..CheckOptions::default() }).unwrap();
            assert!(out.passed, "{level:?}: {}", out.summary);
        }
    }
    let empty = "qubits:\ninput:\noutput:\n";
    for level in [Level::Det, Level::Strong, Level::Robust] {
        assert!(check(empty, CheckOptions { level, ..CheckOptions::default() }).unwrap().passed);
    }

    // Without X_2^{s_1} the pattern is still deterministic but a truncation
    // at {1} is not.
    let corrupted = COUNTER_XY_PATTERN.replace("X 2 s(1)\n", "");
    let out = robust(&corrupted);
    assert!(!out.passed);
    assert!(out.summary.contains("lowerset {1}"));
    let strong = check(&corrupted, CheckOptions { level: Level::Strong, ..CheckOptions::default() }).unwrap();
    assert!(strong.passed);

    assert!(check("M 1 QQ 0\n", CheckOptions::default()).is_err());
}

#[test]
fn parallelize_examples() {
    let edge = r#"{"vertices": ["a", "b"], "edges": [["a", "b"]], "inputs": [], "outputs": ["b"], "labels": {"a": "XZ"}}"#;
    let out = parallelize(edge, parse_angle("1/4 pi").unwrap(), BOUND).unwrap();
    assert!(out.passed, "{}", out.summary);
    assert_eq!(out.report["measurement_depth"], 1);

    assert!(parallelize(SINGLE_EDGE_GRAPH, parse_angle("0").unwrap(), BOUND).is_err());
    let triangle = r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["a", "c"]], "outputs": ["c"], "labels": {"a": "X", "b": "Z"}}"#;
    assert!(parallelize(triangle, parse_angle("0").unwrap(), BOUND).is_err());

    let mut depth_one = 0;
    for seed in 0..60 {
        let mut spec = InstanceSpec::new(6, seed);
        spec.bipartite = true;
        spec.labels = pauliflow::random::LabelSet::Real;
        spec.outputs = 3;
        spec.inputs = 1;
        let Ok(Outcome { artifact: Some(graph), .. }) = generate(&spec, Some(20), BOUND) else { continue };
        let out = parallelize(&graph, parse_angle("1/5 pi").unwrap(), BOUND).unwrap();
        assert!(out.passed, "{graph}\n{}", out.summary);
        assert_eq!(out.report["measurement_depth"], 1);
        let strong = check(
            out.artifact.as_deref().unwrap(),
            CheckOptions { level: Level::Strong, ..CheckOptions::default() },
        )
        .unwrap();
        assert!(strong.passed, "{graph}");
        depth_one += 1;
    }
    assert!(depth_one >= 20);
}

#[test]
fn counterexamples_pass() {
    let out = counterexamples(20, 2013).unwrap();
    assert!(out.passed, "{}", out.report);
    let instances = out.report["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 2);
    for inst in instances {
        let legs = inst["legs"].as_array().unwrap();
        assert_eq!(legs.len(), 3);
        assert!(legs.iter().all(|l| l["passed"] == true));
    }
}

#[test]
fn generate_examples() {
    let one = generate(&InstanceSpec::new(1, 0), None, BOUND).unwrap();
    let og = parse_graph(one.artifact.as_deref().unwrap()).unwrap();
    assert_eq!(og.n(), 1);

    let spec = InstanceSpec::new(7, 42);
    assert_eq!(generate(&spec, None, BOUND).unwrap().artifact, generate(&spec, None, BOUND).unwrap().artifact);
    let other = InstanceSpec::new(7, 43);
    assert_ne!(generate(&spec, None, BOUND).unwrap().artifact, generate(&other, None, BOUND).unwrap().artifact);

    for seed in 0..20 {
        let mut spec = InstanceSpec::new(8, seed);
        spec.bipartite = true;
        let og: OpenGraph = parse_graph(generate(&spec, None, BOUND).unwrap().artifact.as_deref().unwrap()).unwrap();
        assert!(og.graph().bipartition().is_some());
    }

    let with_flow = generate(&InstanceSpec::new(5, 9), Some(100), BOUND).unwrap();
    assert!(find_flow(with_flow.artifact.as_deref().unwrap(), BOUND).unwrap().passed);

    let mut bad = InstanceSpec::new(3, 0);
    bad.inputs = 4;
    assert!(generate(&bad, None, BOUND).is_err());
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pauliflow")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_exit_codes_and_json() {
    let (code, _) = run(&["verify-flow", &fixture("single_edge.json"), &fixture("single_edge_flow.json")]);
    assert_eq!(code, 0);
    let (code, _) = run(&["verify-flow", &fixture("single_edge.json"), "/nonexistent.json"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["check", &fixture("counter_xy.json")]);
    assert_eq!(code, 2);
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);

    let (code, stdout) = run(&["--json", "counterexamples"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["passed"], true);

    let (code, stdout) = run(&["find-flow", &fixture("counter_yz.json"), "--json"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["status"], "found");

    let (code, stdout) = run(&["synthesize", &fixture("single_edge.json")]);
    assert_eq!(code, 0);
    assert!(Pattern::parse(&stdout).is_ok());

    let (code, stdout) = run(&["--json", "check", &fixture("counter_yz.mcpat"), "--level", "robust", "--samples", "5"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["result"]["passed"], true);

    let dir = std::env::temp_dir().join(format!("pauliflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("g.json");
    let (code, _) = run(&["generate", "-n", "1", "--seed", "3", "-o", graph.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, stdout) = run(&["--json", "find-flow", graph.to_str().unwrap()]);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(code, if report["status"] == "found" { 0 } else { 1 });
    std::fs::remove_dir_all(&dir).unwrap();
}
