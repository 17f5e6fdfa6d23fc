//! `dsp` — generate, verify, search, audit, and export sets of integers
//! whose subsets all have distinct products.
//!
//! Exit codes: 0 success / distinct, 1 collision found, 2 inconclusive
//! (budget ran out), 64 invalid request, 65 unreadable or malformed
//! input. No other codes are emitted.

mod output;

mod commands;
mod formats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;

use crate::output::{errout, errout_raw, out_raw};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "dsp",
    version,
    about = "Sets of integers whose subsets all have distinct products: \
             constructions, exact verification, factor graphs, and exact \
             extremal values at small scale."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one of the five constructions as a dsp-set/1 file.
    Construct(ConstructArgs),
    /// Decide whether a set has distinct subset products (exit 0/1/2).
    Verify(VerifyArgs),
    /// Compute f, h, or g exactly by exhaustive search.
    Exact(ExactArgs),
    /// Export a set's prime factorization graph and audit cycle removal.
    Graph(GraphArgs),
    /// Tabulate construction sizes against their exact count formulas.
    Bounds(BoundsArgs),
}

/// Construction family selector.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Primes and prime squares up to the bound.
    Erdos,
    /// Prime powers with distinct-subset-sum exponent sets.
    GkChain,
    /// Primes, some replaced by grouped triple products.
    Triples,
    /// Squarefree near-primes from a spanning tree on the medium primes.
    Tree,
    /// A dense squarefree family with medium-prime pair products.
    Squarefree,
}

/// Spanning-tree shape for the tree construction.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum TreeShape {
    /// Chain the medium primes in ascending order.
    Path,
    /// Join every medium prime to the smallest one.
    Star,
}

#[derive(Args)]
pub struct ConstructArgs {
    /// Which family to build.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Upper bound N: every element lies in [1, N].
    #[arg(long)]
    pub n: u64,
    /// Write the set file here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Density parameter for --kind squarefree (default 0.05).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Tree shape for --kind tree (default path).
    #[arg(long, value_enum, value_name = "SHAPE")]
    pub tree: Option<TreeShape>,
    /// JSON exponent table for --kind gk-chain: an array of
    /// {size, max_exponent, exponents} rows.
    #[arg(long, value_name = "PATH")]
    pub ek_table: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Set file: dsp-set/1 JSON, or one integer per line.
    pub set_path: PathBuf,
    /// Search-node budget per connected component.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Force the exhaustive oracle (rejects sets above its size cap).
    #[arg(long)]
    pub oracle: bool,
    /// Where to write a collision certificate
    /// (default: the set path with extension cert.json).
    #[arg(long, value_name = "PATH")]
    pub cert_out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("function").required(true).multiple(false).args(["f", "h", "g"])))]
pub struct ExactArgs {
    /// Largest subset of [1, n] with distinct subset products.
    #[arg(long)]
    pub f: bool,
    /// Largest squarefree subset of [1, n] with distinct subset products.
    #[arg(long)]
    pub h: bool,
    /// Least m such that some n-element subset of [1, m] has distinct
    /// subset sums.
    #[arg(long)]
    pub g: bool,
    /// The parameter: the bound for --f/--h, the set size for --g.
    #[arg(long)]
    pub n: u64,
    /// Search-node budget.
    #[arg(long)]
    pub budget: Option<u64>,
}

/// Which extremal function an `exact` invocation asks for.
#[derive(Copy, Clone, PartialEq, Eq)]
pub enum ExactFunction {
    F,
    H,
    G,
}

impl ExactArgs {
    pub fn function(&self) -> ExactFunction {
        match (self.f, self.h, self.g) {
            (true, _, _) => ExactFunction::F,
            (_, true, _) => ExactFunction::H,
            _ => ExactFunction::G,
        }
    }
}

#[derive(Args)]
pub struct GraphArgs {
    /// Set file: dsp-set/1 JSON, or one integer per line.
    pub set_path: PathBuf,
    /// Write a Graphviz DOT rendering of the (reduced) graph here.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Run the cycle-removal pipeline and print its audit report.
    #[arg(long)]
    pub audit: bool,
    /// Cycle-length threshold for the audit (default max(3, n^(1/12))).
    #[arg(long, value_name = "L")]
    pub threshold: Option<usize>,
}

#[derive(Args)]
pub struct BoundsArgs {
    /// Upper bound N to evaluate every construction at.
    #[arg(long)]
    pub n: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; every other
            // argument problem is an invalid request (64), freeing
            // exit code 2 for inconclusive verdicts.
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                out_raw!("{err}");
                return ExitCode::SUCCESS;
            }
            errout_raw!("{err}");
            return ExitCode::from(64);
        }
    };

    let outcome = match &cli.command {
        Command::Construct(args) => commands::construct(args),
        Command::Verify(args) => commands::verify(args),
        Command::Exact(args) => commands::exact(args),
        Command::Graph(args) => commands::graph(args),
        Command::Bounds(args) => commands::bounds(args),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            errout!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
