use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "twobridge", version, about = "Cone-manifold invariants of the two-bridge knots C(2n,4)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Working precision in mantissa bits.
    #[arg(long, global = true, env = "TWOBRIDGE_BITS", default_value_t = 256)]
    pub bits: u32,

    /// Simpson panels per integration segment (even). The default depends
    /// on the command.
    #[arg(long, global = true)]
    pub panels: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// JSON file of previously computed alpha_0 values.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Significant digits in numeric cells; defaults to what the precision carries.
    #[arg(long, global = true)]
    pub digits: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transition angle and complete-structure CS invariant for each twist.
    Table1 {
        /// Rows for n = 1..=N and n = -1..=-N.
        #[arg(long, default_value_t = 9)]
        n_max: i64,
        /// Only these n (repeatable).
        #[arg(long = "n", allow_negative_numbers = true)]
        only: Vec<i64>,
    },
    /// Orbifold and cyclic-cover CS invariants over an (n, k) grid.
    Table2 {
        #[arg(long, default_value_t = 9)]
        n_max: i64,
        #[arg(long = "n", allow_negative_numbers = true)]
        only: Vec<i64>,
        #[arg(long, default_value_t = 3)]
        k_min: u32,
        #[arg(long, default_value_t = 10)]
        k_max: u32,
    },
    /// The angle where the hyperbolic structure degenerates.
    Alpha0 {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Hyperbolic volume at cone angle `alpha` or `2 pi / k`.
    Volume {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, conflicts_with = "k", required_unless_present = "k")]
        alpha: Option<String>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// CS invariant at cone angle `2 pi / k`, or of the complete structure without `--k`.
    Cs {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Branch and integrand data on a grid of cone angles.
    Profile {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        points: usize,
    },
    /// Run the oracle and regression checks.
    Verify,
}
