//! `seedlex` command-line pipeline.
//!
//! Exit codes: 0 on success, 1 for runtime or data errors, 2 for usage or
//! configuration errors.

mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{
    BuildArgs, CompareArgs, EvalArgs, ExperimentArgs, InspectArgs, ScoreArgs,
};
use crate::config::RunConfig;

/// A problem with how the tool was invoked or configured (exit code 2).
#[derive(Debug)]
pub struct UsageError(String);

impl UsageError {
    pub fn new(message: impl Into<String>) -> Self {
        UsageError(message.into())
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(name = "seedlex", version, about = "Seed-word lexicon induction, scoring and evaluation")]
struct Cli {
    /// Run configuration (TOML).
    #[arg(short, long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides the config.
    #[arg(long, global = true, env = "SEEDLEX_OUTPUT_DIR")]
    out_dir: Option<PathBuf>,

    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "SEEDLEX_THREADS")]
    threads: Option<usize>,

    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand seed words into a lexicon CSV with a provenance sidecar.
    Build(BuildArgs),
    /// Score a corpus with a lexicon (and optionally frame lexicons).
    Score(ScoreArgs),
    /// Evaluate predictions against labelled data.
    Eval(EvalArgs),
    /// Compare two lexicon CSVs.
    Compare(CompareArgs),
    /// Measure accuracy across random seed subsamples.
    SeedExperiment(ExperimentArgs),
    /// Print the top and bottom entries of a lexicon.
    Inspect(InspectArgs),
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| UsageError::new(format!("cannot set thread count: {e}")))?;
    }
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(dir) = cli.out_dir {
        config.output_dir = Some(dir);
    }
    match cli.command {
        Command::Build(args) => commands::build(&config, &args),
        Command::Score(args) => commands::score(&config, &args),
        Command::Eval(args) => commands::eval(&config, &args),
        Command::Compare(args) => commands::compare(&config, &args),
        Command::SeedExperiment(args) => commands::seed_experiment(&config, &args),
        Command::Inspect(args) => commands::inspect(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
