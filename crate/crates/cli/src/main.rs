//! `ionparity` scenario runner.
//!
//! ```text
//! ionparity <scenario> [--config <path>] [--out <dir>] [--seed <u64>] [--emit-plots]
//! ```
//!
//! Exit status: 0 when every threshold passes, 1 when a threshold fails,
//! 2 for an invalid configuration, 3 for I/O errors.

mod config;
mod report;
mod scenarios;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::Scenario;
use crate::report::CliError;

#[derive(Parser)]
#[command(name = "ionparity", version, about = "Trapped-ion parity gate scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal parity pulse g n σx for t = π/g.
    ParityIdeal(RunArgs),
    /// Calibrated two-beam realisation of the parity pulse.
    ParityTwoBeam(RunArgs),
    /// Full sideband evolution against the rotating-wave approximation.
    RwaCompare(RunArgs),
    /// Three-level Raman model against its adiabatic elimination.
    AdiabaticCompare(RunArgs),
    /// NOT gate on even/odd qubits.
    NotGate(RunArgs),
    /// Time-reversal sandwich for a parity-odd generator.
    TimeReversal(RunArgs),
    /// Feasibility arithmetic: couplings, parity strength, pulse time, ratios.
    Design(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// Scenario config (JSON). Built-in defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides `run.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write an SVG plot of the time series.
    #[arg(long)]
    emit_plots: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, args) = match cli.command {
        Command::ParityIdeal(a) => (Scenario::ParityIdeal, a),
        Command::ParityTwoBeam(a) => (Scenario::ParityTwoBeam, a),
        Command::RwaCompare(a) => (Scenario::RwaCompare, a),
        Command::AdiabaticCompare(a) => (Scenario::AdiabaticCompare, a),
        Command::NotGate(a) => (Scenario::NotGate, a),
        Command::TimeReversal(a) => (Scenario::TimeReversal, a),
        Command::Design(a) => (Scenario::Design, a),
    };
    match run(scenario, &args) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ionparity {}: {e}", scenario.name());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(scenario: Scenario, args: &RunArgs) -> Result<String, CliError> {
    let loaded = config::load(scenario, args.config.as_deref(), args.seed)?;
    let outcome = scenarios::run(scenario, &loaded)?;
    let written = report::write_outputs(scenario, &loaded, &outcome, &args.out, args.emit_plots)?;
    let failed: Vec<&str> = outcome.thresholds.iter().filter(|t| !t.passed).map(|t| t.name.as_str()).collect();
    if failed.is_empty() {
        Ok(format!("{}: all thresholds passed; report {}", scenario.name(), written.display()))
    } else {
        Err(CliError::ThresholdFailed(format!("{} (report {})", failed.join(", "), written.display())))
    }
}
