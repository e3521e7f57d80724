//! Batch experiment harness for the inductive library.
//!
//! One task per invocation, driven by a versioned TOML config:
//!
//! ```text
//! inductive predict  --config experiment.toml [--out DIR]
//! inductive simulate --config experiment.toml [--seed N] [--out DIR]
//! inductive audit    --config experiment.toml [--tolerance T] [--out DIR]
//! inductive converge --config experiment.toml [--seed N] [--out DIR]
//! inductive compare  --config experiment.toml [--seed N] [--out DIR]
//! ```
//!
//! Exit codes: 0 success, 2 config error, 3 enumeration resource limit,
//! 4 numerical degeneracy.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod config;
mod output;
mod tasks;

use config::ExperimentConfig;
use tasks::TaskContext;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Config(String),
    ResourceLimit(String),
    Degeneracy(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::ResourceLimit(_) => 3,
            CliError::Degeneracy(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m)
            | CliError::Config(m)
            | CliError::ResourceLimit(m)
            | CliError::Degeneracy(m) => m,
        }
    }
}

impl From<inductive::InductiveError> for CliError {
    fn from(e: inductive::InductiveError) -> Self {
        match e {
            inductive::InductiveError::ResourceLimit(m) => CliError::ResourceLimit(m),
            inductive::InductiveError::NumericalDegeneracy(m) => CliError::Degeneracy(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "inductive",
    about = "Predictions, simulations, symmetry audits, and convergence studies for rules of succession"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a rule's predictive distribution on a given history.
    Predict(TaskArgs),
    /// Sample a trajectory from the rule's own observation process.
    Simulate(TaskArgs),
    /// Run symmetry-postulate checks and write a report.
    Audit(TaskArgs),
    /// Track the predictive trajectory along a simulated stream against
    /// candidate limits.
    Converge(TaskArgs),
    /// Run two or more rules on one stream and tabulate their
    /// trajectories side by side.
    Compare(TaskArgs),
}

#[derive(Args)]
struct TaskArgs {
    /// Experiment configuration (TOML, schema version 1).
    #[arg(long)]
    config: PathBuf,
    /// Seed for stochastic tasks; overrides process.seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; overrides output.dir (default `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance for audit checks; overrides audit.tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
}

fn load(args: &TaskArgs) -> Result<(ExperimentConfig, TaskContext), CliError> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CliError::Config(format!("reading {}: {e}", args.config.display())))?;
    let config = ExperimentConfig::parse(&text)?;
    let config_dir = args
        .config
        .parent()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."));
    Ok((
        config,
        TaskContext {
            config_dir,
            seed: args.seed,
            out: args.out.clone(),
            tolerance: args.tolerance,
        },
    ))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Predict(args) => {
            let (config, ctx) = load(&args)?;
            tasks::run_predict(&config, &ctx)
        }
        Command::Simulate(args) => {
            let (config, ctx) = load(&args)?;
            tasks::run_simulate(&config, &ctx)
        }
        Command::Audit(args) => {
            let (config, ctx) = load(&args)?;
            tasks::run_audit(&config, &ctx)
        }
        Command::Converge(args) => {
            let (config, ctx) = load(&args)?;
            tasks::run_converge(&config, &ctx)
        }
        Command::Compare(args) => {
            let (config, ctx) = load(&args)?;
            tasks::run_compare(&config, &ctx)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
