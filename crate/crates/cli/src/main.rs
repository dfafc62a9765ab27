use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pauliflow::random::{InstanceSpec, LabelSet};
use pauliflow_cli::{brute_force_bound, parse_angle, CheckOptions, CliError, Level, Outcome};

#[derive(Parser)]
#[command(name = "pauliflow", version, about = "Pauli flow search, correction synthesis and determinism checks")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Output {
    /// Write the produced file here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Bound {
    /// Largest |Oᶜ| handed to exhaustive search; |Iᶜ| may be two larger.
    #[arg(long, default_value_t = 6)]
    brute_force_bound: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a flow file against an open graph.
    VerifyFlow { graph: PathBuf, flow: PathBuf },
    /// Search for a Pauli flow; prints the flow or "none".
    FindFlow {
        graph: PathBuf,
        #[command(flatten)]
        bound: Bound,
        #[command(flatten)]
        out: Output,
    },
    /// Flow, correction strategy and `.mcpat` pattern for an open graph.
    Synthesize {
        graph: PathBuf,
        /// Angle of every planar measurement, e.g. "1/4 pi" or "0.3".
        #[arg(long, default_value = "1/4 pi")]
        angle: String,
        #[command(flatten)]
        bound: Bound,
        #[command(flatten)]
        out: Output,
    },
    /// Determinism check of a pattern.
    Check {
        pattern: PathBuf,
        #[arg(long, value_enum, default_value = "robust")]
        level: Level,
        /// Random angle samples per lowerset.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 2013)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Depth-1 pattern for a bipartite real open graph.
    Parallelize {
        graph: PathBuf,
        #[arg(long, default_value = "1/4 pi")]
        angle: String,
        #[command(flatten)]
        bound: Bound,
        #[command(flatten)]
        out: Output,
    },
    /// Reruns the bundled counterexamples.
    Counterexamples {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 2013)]
        seed: u64,
    },
    /// Random open graph.
    Generate {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_probability: f64,
        /// Defaults to n / 3.
        #[arg(long)]
        inputs: Option<usize>,
        /// Defaults to max(ceil(n / 3), 1).
        #[arg(long)]
        outputs: Option<usize>,
        /// all, real, planar or pauli.
        #[arg(long, default_value = "all")]
        labels: String,
        #[arg(long)]
        bipartite: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Redraw until the instance has a Pauli flow.
        #[arg(long)]
        flow: bool,
        #[arg(long, default_value_t = 1000)]
        attempts: usize,
        #[command(flatten)]
        bound: Bound,
        #[command(flatten)]
        out: Output,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn labels(name: &str) -> Result<LabelSet, CliError> {
    Ok(match name {
        "all" => LabelSet::All,
        "real" => LabelSet::Real,
        "planar" => LabelSet::Planar,
        "pauli" => LabelSet::Pauli,
        _ => return Err(CliError(format!("unknown label set {name:?}"))),
    })
}

fn run(cmd: Cmd) -> Result<(Outcome, Option<PathBuf>), CliError> {
    Ok(match cmd {
        Cmd::VerifyFlow { graph, flow } => (pauliflow_cli::verify_flow(&read(&graph)?, &read(&flow)?)?, None),
        Cmd::FindFlow { graph, bound, out } => (
            pauliflow_cli::find_flow(&read(&graph)?, brute_force_bound(bound.brute_force_bound))?,
            out.output,
        ),
        Cmd::Synthesize {
            graph,
            angle,
            bound,
            out,
        } => (
            pauliflow_cli::synthesize(
                &read(&graph)?,
                parse_angle(&angle)?,
                brute_force_bound(bound.brute_force_bound),
            )?,
            out.output,
        ),
        Cmd::Check {
            pattern,
            level,
            samples,
            seed,
            tolerance,
        } => (
            pauliflow_cli::check(
                &read(&pattern)?,
                CheckOptions {
                    level,
                    samples,
                    seed,
                    tolerance,
                },
            )?,
            None,
        ),
        Cmd::Parallelize {
            graph,
            angle,
            bound,
            out,
        } => (
            pauliflow_cli::parallelize(
                &read(&graph)?,
                parse_angle(&angle)?,
                brute_force_bound(bound.brute_force_bound),
            )?,
            out.output,
        ),
        Cmd::Counterexamples { samples, seed } => (pauliflow_cli::counterexamples(samples, seed)?, None),
        Cmd::Generate {
            n,
            edge_probability,
            inputs,
            outputs,
            labels: label_set,
            bipartite,
            seed,
            flow,
            attempts,
            bound,
            out,
        } => {
            let mut spec = InstanceSpec::new(n, seed);
            spec.edge_probability = edge_probability;
            spec.inputs = inputs.unwrap_or(spec.inputs);
            spec.outputs = outputs.unwrap_or(spec.outputs);
            spec.labels = labels(&label_set)?;
            spec.bipartite = bipartite;
            let attempts = flow.then_some(attempts);
            (
                pauliflow_cli::generate(&spec, attempts, brute_force_bound(bound.brute_force_bound))?,
                out.output,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command) {
        Ok((outcome, path)) => {
            let mut report = outcome.report.clone();
            if let (Some(artifact), Some(path)) = (&outcome.artifact, &path) {
                if let Err(e) = fs::write(path, artifact) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if json {
                if let serde_json::Value::Object(map) = &mut report {
                    map.insert("passed".into(), outcome.passed.into());
                    map.insert("summary".into(), outcome.summary.clone().into());
                }
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                match (&outcome.artifact, &path) {
                    (Some(artifact), None) => {
                        print!("{artifact}");
                        eprintln!("{}", outcome.summary);
                    }
                    _ => println!("{}", outcome.summary),
                }
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": e.0 }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
