use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use doublevec::scalar::ScalarKind;
use doublevec::Dims;
use doublevec_cli::compute::compute;
use doublevec_cli::suites::{run_suite, SuiteConfig};
use doublevec_cli::{read_json, render, CliError};

#[derive(Parser)]
#[command(name = "doublevec", version, about = "Checks and computations for double vector spaces and their bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON file (suite fixture or compute operands)
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write the JSON result here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Fiber dimensions as n1,n2,n0
    #[arg(long, global = true, default_value = "2,2,2")]
    dims: String,

    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// rational or float
    #[arg(long, global = true, default_value = "rational")]
    scalar: String,

    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite: aut, dual, frames, algebra, bundles, dla, connections
    Suite { name: String },
    /// Run one operation on the --input operands
    Compute { op: String },
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let dims: Dims = cli.dims.parse().map_err(CliError::input)?;
    let scalar: ScalarKind = cli.scalar.parse().map_err(CliError::input)?;
    let input = match &cli.input {
        Some(p) => Some((p.display().to_string(), read_json(p)?)),
        None => None,
    };
    match &cli.command {
        Command::Suite { name } => {
            let cfg = SuiteConfig { dims, trials: cli.trials, seed: cli.seed, scalar, tol: cli.tol, fixture: input };
            let start = Instant::now();
            let report = run_suite(name, &cfg)?;
            eprintln!("{name}: {} properties in {:.2?}", report.properties.len(), start.elapsed());
            Ok((render(&report.to_json()), report.all_pass()))
        }
        Command::Compute { op } => {
            let (_, v) = input.ok_or_else(|| CliError::Input("compute needs --input".into()))?;
            Ok((render(&compute(op, &v, scalar, cli.tol)?), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, pass) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
