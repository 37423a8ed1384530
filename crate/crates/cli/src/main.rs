// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! `trion-sim`: steady states, fluorescence dips, emission spectra and
//! photon correlations of a two-laser-driven three-level Λ emitter.
//!
//! Exit codes: 0 success, 2 configuration/schema violation, 3 numerical
//! failure, 4 I/O failure.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use trion_sim_cli::commands::{execute, CommandKind};
use trion_sim_cli::config::{parse_config, resolve, violations, RunConfig};
use trion_sim_cli::CliError;

#[derive(Parser)]
#[command(name = "trion-sim", version, about = "Driven three-level Λ-emitter simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration file; optional when a preset supplies the model
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (overrides `[output].path`; default `<command>.csv`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Model preset (qd1 | qd2); overrides the config's preset key
    #[arg(long)]
    preset: Option<String>,
    /// Worker threads for grid evaluation (0 = automatic); the
    /// TRION_SIM_THREADS environment variable is used when unset
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Single steady-state evaluation of the configured model
    Steady(RunArgs),
    /// 1-D or 2-D parameter sweep of a steady-state observable
    Sweep(RunArgs),
    /// Emission spectrum of one radiative channel
    Spectrum(RunArgs),
    /// Photon correlation g²(τ) between two channels
    G2(RunArgs),
    /// Calibrate the power-to-Rabi conversion from a saturation curve
    FitRabi(RunArgs),
    /// Master-equation vs rate-equation detuning profiles, side by side
    RateCompare(RunArgs),
    /// Check a configuration file and list every violation
    Validate(RunArgs),
}

fn read_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display())))?;
            parse_config(&text)
        }
    }
}

fn effective_threads(args: &RunArgs) -> usize {
    args.threads
        .or_else(|| {
            std::env::var("TRION_SIM_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0)
}

#[cfg(feature = "parallel")]
fn init_threads(n: usize) {
    if n > 0 {
        // ignore AlreadyInitialized: the pool can only be set once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn init_threads(_n: usize) {}

fn run(kind: CommandKind, args: &RunArgs) -> Result<(), CliError> {
    init_threads(effective_threads(args));
    let cfg = read_config(args.config.as_deref())?;
    let resolved = resolve(&cfg, args.preset.as_deref())?;
    let content = execute(kind, &resolved)?;
    let path = args
        .out
        .clone()
        .or_else(|| resolved.output.path.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", kind.name())));
    std::fs::write(&path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn validate(args: &RunArgs) -> Result<(), CliError> {
    let cfg = read_config(args.config.as_deref())?;
    let resolved = resolve(&cfg, args.preset.as_deref())?;
    let problems = violations(&resolved);
    if problems.is_empty() {
        println!("configuration is valid");
        Ok(())
    } else {
        for p in &problems {
            println!("violation: {p}");
        }
        Err(CliError::Config(format!(
            "{} violation(s) found",
            problems.len()
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Steady(a) => run(CommandKind::Steady, a),
        Command::Sweep(a) => run(CommandKind::Sweep, a),
        Command::Spectrum(a) => run(CommandKind::Spectrum, a),
        Command::G2(a) => run(CommandKind::G2, a),
        Command::FitRabi(a) => run(CommandKind::FitRabi, a),
        Command::RateCompare(a) => run(CommandKind::RateCompare, a),
        Command::Validate(a) => validate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
