//! `qdistill`: distillability analysis of low-rank and tripartite states.
//!
//! Data goes to stdout (or `--output`), diagnostics to stderr. Exit status is
//! 0 on success, 2 for unusable input and 3 for a numerical failure.

mod commands;
mod config;
mod error;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qdistill_core::Side;

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qdistill",
    version,
    about = "Distillability bounds, filtering protocols and full-undistillability checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative eigenvalue cutoff used for every rank.
    #[arg(long, global = true, default_value_t = qdistill_core::kernels::DEFAULT_RANK_TOL)]
    rank_tol: f64,

    /// A state is PPT when its partial transpose has no eigenvalue below -ppt_tol.
    #[arg(long, global = true, default_value_t = qdistill_core::kernels::DEFAULT_PPT_TOL)]
    ppt_tol: f64,

    /// Seed for sampling and for the random phase of the witness search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random conditioning vectors tried after the basis vectors.
    #[arg(long, global = true, default_value_t = qdistill_core::distill::DEFAULT_WITNESS_BUDGET)]
    budget: usize,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a state: bipartite inputs and channels are purified first.
    Analyze {
        /// State or channel JSON file, or `-` for stdin.
        file: PathBuf,
    },
    /// Apply the flattening filter on one side and report the resulting rates.
    Filter {
        file: PathBuf,
        #[arg(long, value_parser = parse_side)]
        side: Side,
    },
    /// Sample low-rank states and check the almost-sure rank and witness facts.
    Sample {
        d_a: usize,
        d_b: usize,
        d_e: usize,
        n: usize,
    },
    /// Print a named state or channel as JSON.
    Example {
        #[arg(value_enum)]
        name: commands::ExampleName,
        /// Dimension parameter (example1, maximally-mixed).
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Depolarizing parameter of example1, in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        /// Emit the complementary channel instead (channel examples only).
        #[arg(long)]
        complement: bool,
    },
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: qdistill_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = RunConfig::new(cli.rank_tol, cli.ppt_tol, cli.seed, cli.budget, cli.format)?;
    let text = match cli.command {
        Command::Analyze { file } => commands::analyze(&file, &config)?,
        Command::Filter { file, side } => commands::filter(&file, side, &config)?,
        Command::Sample { d_a, d_b, d_e, n } => commands::sample(d_a, d_b, d_e, n, &config)?,
        Command::Example {
            name,
            d,
            q,
            complement,
        } => commands::example(name, d, q, complement, &config)?,
    };
    match cli.output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdistill: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
