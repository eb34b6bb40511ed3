//! `cooprepair` command-line tool.
//!
//! Exit codes: 0 success, 1 a requested property fails, 2 usage or format
//! error, 3 decode failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cooprepair", version, about = "Erasure codes with cooperative locality")]
pub struct Cli {
    /// Output format for reports printed to stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Run oracles and sweeps on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code and write it as JSON.
    Construct(ConstructArgs),
    /// Check locality, distance, bounds or matrix consistency of a code file.
    Verify(VerifyArgs),
    /// Repair one erasure pattern with a chosen strategy.
    Repair(RepairArgs),
    /// Run an adversarial or random erasure sweep.
    Simulate(SimulateArgs),
    /// Run the subcode construction behind the distance bound.
    Witness(WitnessArgs),
    /// Girth, spectral and expansion diagnostics for a graph.
    Graph(GraphArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hadamard,
    Mds,
    Partition,
    /// Partition code whose local groups repair only `--t` erasures.
    Weakened,
    Product,
    Concatenated,
    Edge,
    Expander,
    Zemor,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GraphSource {
    /// Built-in graph: heawood, pg2-Q, cycle-L, kbip-A-B, complete-N, ring-N.
    #[arg(long, conflicts_with = "file")]
    pub named: Option<String>,
    /// Graph file ("graph N" or "bipartite L R" header, one "u v" edge per line).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Field order.
    #[arg(long)]
    pub q: Option<u64>,
    /// Dimension (hadamard, mds, partition).
    #[arg(long)]
    pub k: Option<usize>,
    /// Length (mds).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Number of cooperatively repaired erasures ℓ.
    #[arg(long = "l")]
    pub ell: Option<usize>,
    /// Inner redundancy (concatenated).
    #[arg(long)]
    pub x: Option<usize>,
    /// Number of groups (weakened).
    #[arg(long)]
    pub groups: Option<usize>,
    /// Information symbols per group (weakened).
    #[arg(long)]
    pub s: Option<usize>,
    /// Local redundancy (weakened, expander).
    #[arg(long)]
    pub t: Option<usize>,
    /// Local code distance (zemor).
    #[arg(long)]
    pub local_dmin: Option<usize>,
    #[command(flatten)]
    pub graph: GraphSource,
    /// Output path; the code JSON goes to stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Check (r, ℓ)-cooperative locality with the exhaustive oracle.
    #[arg(long)]
    pub locality: bool,
    /// Compute the minimum distance.
    #[arg(long)]
    pub distance: bool,
    /// Compare the minimum distance with the distance and rate bounds.
    #[arg(long)]
    pub bounds: bool,
    /// Check that generator and parity-check matrices agree.
    #[arg(long)]
    pub consistency: bool,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long = "l")]
    pub ell: Option<usize>,
    /// Budget for the exhaustive locality search before greedy fallback.
    #[arg(long)]
    pub cap: Option<u128>,
}

#[derive(Args, Debug)]
pub struct RepairArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub strategy: String,
    /// Comma-separated erased positions.
    #[arg(long, value_delimiter = ',', required = true)]
    pub erase: Vec<usize>,
    /// Seed of the random codeword being repaired.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest repair set searched by generic-linear.
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Round limit for zemor.
    #[arg(long)]
    pub max_rounds: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub strategy: String,
    #[arg(long = "l")]
    pub ell: usize,
    /// Try every ℓ-subset.
    #[arg(long, conflicts_with = "trials")]
    pub exhaustive: bool,
    /// Number of uniformly random ℓ-subsets.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Seed for the codeword and sampled patterns; generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pattern cap for exhaustive sweeps.
    #[arg(long, default_value_t = 10_000_000)]
    pub cap: u64,
    #[arg(long)]
    pub r_max: Option<usize>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Write the report JSON here as well as printing it.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub r: usize,
    #[arg(long = "l")]
    pub ell: usize,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long)]
    pub girth: bool,
    /// Adjacency spectrum and λ.
    #[arg(long)]
    pub lambda: bool,
    /// Left-side vertex expansion of a bipartite graph.
    #[arg(long)]
    pub expansion: bool,
    /// Largest left set size for --expansion.
    #[arg(long)]
    pub s_max: Option<usize>,
    /// Subset budget for --expansion before sampling.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u128,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the graph in file format.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Failure classes, each mapped to one exit code.
#[derive(Debug)]
pub enum Failure {
    Property(String),
    Usage(String),
    Decode(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Property(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Decode(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Property(m) | Failure::Usage(m) | Failure::Decode(m) => m,
        }
    }
}

impl From<cooprepair::Error> for Failure {
    fn from(e: cooprepair::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
