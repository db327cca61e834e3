use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qschrod::config::{list_scenarios, resolve, Quantity, ScenarioSource};
use qschrod::emit::{emit, Format};
use qschrod::scenario::{check_invariants, run_scenario_with};
use qschrod::Error;

#[derive(Parser)]
#[command(name = "qschrod", version, about = "Gate-level Schrödinger evolution scenarios")]
struct Cli {
    /// Extra directory searched for `*.toml` scenarios.
    #[arg(long, global = true, env = "QSCHROD_SCENARIO_DIR")]
    scenario_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario by name, or a scenario file.
    Run(RunArgs),
    /// List built-in and user scenarios.
    List,
}

#[derive(clap::Args)]
struct RunArgs {
    scenario: String,
    #[arg(long = "n")]
    n_qubits: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Trotter steps to record after the initial state (frames = steps + 1).
    #[arg(long, conflicts_with = "frames")]
    steps: Option<usize>,
    #[arg(long)]
    frames: Option<usize>,
    #[arg(long)]
    substeps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also record sampled histograms with this many shots per frame.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, env = "QSCHROD_OUTPUT_DIR", default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Compare against the split-operator reference; exit 2 if it deviates.
    #[arg(long)]
    oracle_check: bool,
    /// Write the wall time into metadata.json (breaks byte-identity).
    #[arg(long)]
    record_timing: bool,
}

fn run(args: RunArgs, scenario_dir: Option<&Path>) -> Result<(), Error> {
    let mut cfg = resolve(&args.scenario, scenario_dir)?;
    if let Some(n) = args.n_qubits {
        cfg.n_qubits = n;
    }
    if let Some(e) = args.epsilon {
        cfg.epsilon = e;
    }
    if let Some(s) = args.steps {
        cfg.frames = s + 1;
    }
    if let Some(f) = args.frames {
        cfg.frames = f;
    }
    if let Some(s) = args.substeps {
        cfg.substeps = s;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(shots) = args.shots {
        cfg.shots = shots;
        if !cfg.outputs.contains(&Quantity::Samples) {
            cfg.outputs.push(Quantity::Samples);
        }
    }
    let result = run_scenario_with(&cfg, args.oracle_check)?;
    for w in &result.metadata.warnings {
        eprintln!("warning: {w}");
    }
    let written = emit(&result, &args.out, args.format, args.record_timing)?;
    for p in &written {
        println!("{}", p.display());
    }
    eprintln!(
        "{}: {} frames x {} points in {:.3} s, norm drift {:.2e}",
        cfg.name,
        cfg.frames,
        1usize << cfg.n_qubits,
        result.wall_time_seconds,
        result.metadata.norm_drift
    );
    if let Some(dev) = result.metadata.oracle_max_deviation {
        eprintln!("oracle check: max deviation {dev:.3e}");
    }
    check_invariants(&result)
}

fn list(scenario_dir: Option<&Path>) {
    for e in list_scenarios(scenario_dir) {
        let origin = match &e.source {
            ScenarioSource::Builtin => "builtin".to_string(),
            ScenarioSource::File(p) => p.display().to_string(),
        };
        match &e.error {
            None => println!("{:<18} {:<40} {}", e.name, origin, e.description),
            Some(err) => println!("{:<18} {:<40} [parse error] {}", e.name, origin, err),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let dir = cli.scenario_dir.as_deref();
    match cli.command {
        Command::List => {
            list(dir);
            ExitCode::SUCCESS
        }
        Command::Run(args) => match run(args, dir) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
    }
}
