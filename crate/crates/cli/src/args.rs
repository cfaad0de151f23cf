use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "wci",
    version,
    about = "Degree/weight pairs of weighted complete intersections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PairArg {
    /// Pair as JSON, e.g. '{"degrees":[84],"weights":[6,6,14,14,21,21]}'.
    #[arg(long)]
    pub pair: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kind (Fano, CalabiYau, GeneralType) and index of a pair.
    Classify(PairArg),
    /// Regularity, well-formedness, Cartier and linear-cone checks.
    Check(PairArg),
    /// Positive representation of the degree sum by the weights.
    Represent {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
        /// Residue-table entries the oracle may allocate.
        #[arg(long, default_value_t = 1 << 24, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Hodge numbers from the Hilbert series.
    Hodge {
        #[command(flatten)]
        pair: PairArg,
        /// h^{0,n}, the coefficient at the index (default when no flag is given).
        #[arg(long)]
        h0n: bool,
        /// Primitive middle Hodge numbers (Cartier hypersurfaces only).
        #[arg(long)]
        middle: bool,
        /// Hodge-level verdict with the branch predicting it.
        #[arg(long)]
        verdict: bool,
        /// Highest series degree that may be expanded.
        #[arg(long, default_value_t = 1 << 24, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Prime counting, explicit bounds and prime chains.
    Primes {
        #[command(subcommand)]
        command: PrimesCommand,
    },
    /// Non-regular Cartier pair of general type with h^{0,n} = 0.
    Counterexample {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        dim: u64,
    },
    /// Pair built from the first N + 1 primes with no positive representation.
    PointFamily {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Exhaustive scan of regular pairs within bounds.
    Scan(ScanArgs),
    /// Runs every acceptance criterion and prints a pass/fail table.
    Reproduce {
        /// Emit the results as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Worker threads for the scan.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Residue dynamic program; exact for every pair.
    Oracle,
    /// Constructive algorithm for Cartier regular general-type pairs.
    Cartier,
    /// Constructive algorithm for regular general-type pairs with k <= 2.
    Codim2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree_sum: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_weight: u64,
    /// Records go here; the summary is printed on standard output.
    /// Without it, records and then the summary go to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Keep pairs in which a degree equals a weight.
    #[arg(long)]
    pub include_linear_cones: bool,
    /// Stop enumerating after this many pairs.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_pairs: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum PrimesCommand {
    /// π(x).
    Pi {
        #[arg(long)]
        x: u64,
    },
    /// x/ln x < π(x) < 1.25506 x/ln x for every x in [x, to].
    RsCheck {
        #[arg(long)]
        x: u64,
        /// End of the range; defaults to x.
        #[arg(long)]
        to: Option<u64>,
    },
    /// At least n + 1 primes in (x, 2x), and in (2x/3, x) once n >= 7.
    IntervalLemma {
        #[arg(long, value_parser = clap::value_parser!(u32).range(5..64))]
        n: u32,
        /// Points to test; defaults to 2^n.
        #[arg(long = "x", num_args = 1..)]
        xs: Vec<u64>,
    },
    /// Greedy prime chain whose reciprocal sums straddle 1.
    Straddle {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Exact minimum of 1 - Σ 1/p over n distinct primes with positive result.
    Delta {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Search nodes before giving up.
        #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Upper bound on δ(n) from a greedy chain.
    DeltaBound {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}
