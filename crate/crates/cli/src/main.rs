use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exspectra_core::spectra::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use exspectra_core::SpectralOptions;

mod commands;
mod output;

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] exspectra_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Parser)]
#[command(name = "exspectra", version, about = "Extended adjacency spectra of graphs")]
struct Cli {
    /// Output format; `enumerate` prints plain text when omitted, other commands JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Power-iteration residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long = "max-iter", global = true, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Worker threads for scans (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral quantities, indices and the characteristic polynomial of one graph.
    Compute(ComputeArgs),
    /// Free trees (or connected graph classes) of one order.
    Enumerate(EnumerateArgs),
    /// Largest and smallest trees of one order by extended spectral radius.
    Rank(RankArgs),
    /// Run one verification check over a range of orders.
    Verify(VerifyArgs),
    /// Exhaustive evidence for the star being the maximum over connected graphs.
    Conjecture(ConjectureArgs),
}

#[derive(Args)]
pub struct ComputeArgs {
    /// Family name: P, S, C, K_ab, T1..T5, Z, W, H1..H6, spider, double_star (or `T2:12`).
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub legs: Vec<usize>,
    /// Edge-list file: header `n m`, then `m` lines `u v`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "eta1")]
    pub what: Vec<Quantity>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Eta1,
    Lambda1,
    Energy,
    M1,
    F,
    Bounds,
    Charpoly,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Emit::Count)]
    pub emit: Emit,
    #[arg(long, value_enum, default_value_t = Kind::Trees)]
    pub kind: Kind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Count,
    Codes,
    Edges,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Trees,
    /// One representative per isomorphism class of connected graphs (n <= 7).
    Connected,
}

#[derive(Args)]
pub struct RankArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub top: usize,
    #[arg(long, default_value_t = 0)]
    pub bottom: usize,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// Orders to check, `a..b` (inclusive) or a single `n`; each check has its own default.
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    #[value(name = "theorem-1.2")]
    Theorem12,
    #[value(name = "theorem-1.3")]
    Theorem13,
    #[value(name = "theorem-4.1")]
    Theorem41,
    Conjecture,
    Claims,
    Bounds,
    Paths,
    Appendix,
    Star,
    CompleteBipartite,
}

#[derive(Args)]
pub struct ConjectureArgs {
    #[arg(long = "max-n", default_value_t = 7)]
    pub max_n: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let opts = SpectralOptions {
        tol: cli.tol,
        max_iter: cli.max_iter,
    };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Compute(args) => commands::compute(args, &opts),
        Command::Enumerate(args) => commands::enumerate(args),
        Command::Rank(args) => commands::rank(args, &opts),
        Command::Verify(args) => commands::verify(args, &opts),
        Command::Conjecture(args) => commands::conjecture(args, &opts),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let output = match result {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = output.write(cli.format, elapsed, &mut stdout) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if output.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
