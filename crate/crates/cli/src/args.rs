use std::path::PathBuf;

use cfcalc::SearchBudget;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cfcalc",
    version,
    about = "Constructible functions, link operators and algebraicity obstructions on simplicial complexes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplex counts, dimension and Euler characteristic.
    Info { file: PathBuf },
    /// Per-label values and Euler integrals of a list of terms.
    Table {
        file: PathBuf,
        /// A term to tabulate; repeat for several rows. Defaults to
        /// 1, L(1), L(1)^2, L(L(1)^2), W(L(1)^2) and L(1)*W(L(1)^2).
        #[arg(long = "row", value_name = "EXPR")]
        rows: Vec<String>,
    },
    /// Evaluates a term on the complex.
    Eval {
        file: PathBuf,
        #[arg(long, value_name = "EXPR")]
        expr: String,
        /// Report one value per label instead of one per simplex.
        #[arg(long)]
        by_label: bool,
    },
    /// Checks that every link has even Euler characteristic.
    Sullivan { file: PathBuf },
    /// Searches for a generated function with a non-integer value.
    CheckSet {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Searches for a non-integer value or an odd Euler integral.
    CheckLink {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Writes the built-in example spaces as complex documents.
    Fixtures {
        /// One of circle, sphere, figure-eight, figure-eight-plus-point,
        /// suspended-figure-eight, y, x. All of them when omitted.
        name: Option<String>,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Maximum nesting of L.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: u64,
    /// Maximum number of L-factors in a product.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree: u64,
    /// Maximum number of distinct functions generated per stage.
    #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_functions: u64,
    /// Keep going after the first witness and count all of them.
    #[arg(long)]
    pub exhaustive: bool,
    /// Evaluate candidates on the thread pool.
    #[arg(long)]
    pub parallel: bool,
}

impl SearchArgs {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_halflink_depth: self.depth as usize,
            max_product_degree: self.degree as usize,
            max_functions: self.max_functions as usize,
        }
    }
}
