use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

/// Vertex connectivity solvers, 4-clique reductions and their checks.
#[derive(Debug, Parser)]
#[command(name = "vconn", version)]
pub struct Cli {
    /// Worker threads for pair-level sweeps (default: available parallelism).
    #[arg(long, global = true, env = "VCONN_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph or a 4-partite instance.
    Gen(GenArgs),
    /// Run a connectivity solver on a graph file.
    Vc(VcArgs),
    /// Build the all-pairs or Steiner hard instance of a graph.
    Reduce(ReduceArgs),
    /// Run a randomised property suite.
    Verify(VerifyArgs),
    /// Time solvers against each other on random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Gnp,
    Planted4,
    Fourpartite,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Skip planting the 4-clique (planted4 only).
    #[arg(long)]
    pub no_plant: bool,
    /// Source graph (fourpartite only).
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    St,
    Global,
    Ssvc,
    Apvc,
    Steiner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Naive,
    Fast,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Mode {
    #[default]
    Default,
    Gh,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Degree threshold (fast) or connectivity cap (sampled).
    #[arg(long)]
    pub k: Option<usize>,
    /// Sampling constant.
    #[arg(long)]
    pub c: Option<f64>,
    /// Resolve uncertified sampled pairs with a direct capped flow.
    #[arg(long)]
    pub fallback: bool,
    #[arg(long, value_enum, default_value_t = Mode::Default)]
    pub mode: Mode,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VcArgs {
    pub problem: Problem,
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Naive)]
    pub algo: Algo,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub terminals: Vec<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Payload file; the JSON report then goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReduceKind {
    Apvc,
    Steiner,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub kind: ReduceKind,
    pub graph: PathBuf,
    /// Demand edges as an edge-list document (steiner only).
    #[arg(long)]
    pub demand: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long, default_value_t = 50)]
    pub seeds: usize,
    /// Largest source graph size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub fallback: bool,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Problem::Apvc)]
    pub problem: Problem,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Algo::Naive, Algo::Fast])]
    pub algos: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_values_t = [40, 80, 160])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit status classes.
#[derive(Debug)]
pub enum Failure {
    /// A check or assertion failed (exit 1).
    Check(String),
    /// Bad arguments or unreadable input (exit 2).
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<vconn::Error> for Failure {
    fn from(e: vconn::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    let threads = cli.threads;
    match vconn::par::with_threads(threads, move || commands::run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
