//! `slitlab` — quantum slit-diffraction patterns, uncertainty diagnostics,
//! and the classical-optics correspondence from the command line.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{CliError, CliResult, RawConfig, ResolvedRun};

#[derive(Parser)]
#[command(
    name = "slitlab",
    about = "Quantum-mechanical slit diffraction: patterns, spreads, and divergence diagnostics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args)]
struct CommonArgs {
    /// Config file (flat `key = value` lines); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Override the model: boxcar, well, sampled, or multislit.
    #[arg(long)]
    model: Option<String>,

    /// Override the slit width.
    #[arg(long = "a")]
    width: Option<f64>,

    /// Override the incident momentum.
    #[arg(long = "p")]
    momentum: Option<f64>,

    /// Override the reduced Planck constant.
    #[arg(long)]
    hbar: Option<f64>,

    /// Override the particle mass.
    #[arg(long)]
    mass: Option<f64>,

    /// Override the momentum grid as `min:max:points`.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the diffraction pattern as CSV.
    Pattern(CommonArgs),
    /// Emit full JSON diagnostics for the configured model.
    Report(CommonArgs),
    /// Compare the boxcar and hard-wall ground-state models as JSON.
    Compare(CommonArgs),
}

fn resolve_run(args: &CommonArgs) -> CliResult<ResolvedRun> {
    let mut raw = match &args.config {
        Some(path) => RawConfig::load(path)?,
        None => RawConfig::default(),
    };
    raw.apply_overrides(
        args.model.as_deref(),
        args.width,
        args.momentum,
        args.hbar,
        args.mass,
        args.grid.as_deref(),
    )?;
    config::resolve(&raw)
}

fn deliver(content: String, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run() -> CliResult<()> {
    let cli = Cli::parse();
    let (args, content) = match &cli.command {
        Command::Pattern(args) => (args, commands::run_pattern(&resolve_run(args)?)?),
        Command::Report(args) => (args, commands::run_report(&resolve_run(args)?)?),
        Command::Compare(args) => (args, commands::run_compare(&resolve_run(args)?)?),
    };
    deliver(content, args.out.as_ref())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("slitlab: {e}");
        std::process::exit(e.exit_code());
    }
}
