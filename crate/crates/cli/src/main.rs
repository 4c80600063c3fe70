//! `woven`: frame and woven-family analyses from JSON documents.
//!
//! Every command prints one canonical JSON line on standard output. Exit code
//! 0 means the examined property holds, 1 that it fails (with a witness where
//! one exists), 2 that the input or the invocation was rejected.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "woven",
    version,
    about = "Frames, fusion frames and woven families"
)]
struct Cli {
    /// Report format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal bounds and structural flags of every system in a document.
    Analyze {
        /// Family document, or `-` for standard input.
        input: PathBuf,
    },
    /// Universal bounds over all (or sampled) weavings; exit 1 when not woven.
    Woven(WovenArgs),
    /// Closeness certificate between the two systems of a fusion document.
    Perturb(PerturbArgs),
    /// Rebuild a worked instance and compare with its expected quantities.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct WovenArgs {
    input: PathBuf,
    /// Enumerate every partition (the default when under the cap).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Examine the uniform partitions plus this many random ones.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lower-bound threshold below which a weaving is reported as a witness.
    #[arg(long, default_value_t = woven_core::weaving::DEFAULT_WITNESS_EPS)]
    eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PerturbMethod {
    Pw,
    Op,
    Proj,
}

#[derive(Debug, Args)]
struct PerturbArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    method: PerturbMethod,
    #[arg(long)]
    lambda1: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long = "K")]
    k: Option<f64>,
    /// Measure projection differences with squared norms.
    #[arg(long)]
    squared: bool,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MissingIndexArg {
    Zero,
    Omitted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderingArg {
    Aligned,
    Swapped,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// One of ex3_2, ex4_1, ex4_2, ex5_4.
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = woven_core::instances::DEFAULT_TRUNCATION_DIM)]
    dim: usize,
    #[arg(long, default_value_t = woven_core::instances::DEFAULT_DELTA)]
    delta: f64,
    /// How ex4_2 models its missing first subspace.
    #[arg(long, value_enum, default_value_t = MissingIndexArg::Zero)]
    missing_index: MissingIndexArg,
    /// How ex5_4 pairs the second decomposition with the first.
    #[arg(long, value_enum, default_value_t = OrderingArg::Aligned)]
    ordering: OrderingArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Format::Json = cli.format;
    match commands::run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.line);
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
