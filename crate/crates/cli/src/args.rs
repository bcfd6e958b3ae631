use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Distribution of Hertzsprung-pattern occurrences in involutions.
#[derive(Debug, Parser)]
#[command(name = "hertzinv", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Enumerated,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// Cluster series C_T over x, a, b, c.
    C,
    /// Involutory cluster series CI_T over x, t, u, v, w.
    Ci,
    /// First argument A of the continued fraction.
    A,
    /// Second argument B of the continued fraction.
    B,
    /// The distribution F_T.
    F,
    /// Marked involutions MI_T.
    Mi,
}

/// A pattern set given on the command line.
#[derive(Debug, Args)]
pub struct PatternArgs {
    /// Comma-separated patterns in one-line notation, e.g. 231,312.
    #[arg(long, short = 'p')]
    pub patterns: String,

    /// Add missing inverses instead of rejecting the set.
    #[arg(long)]
    pub close: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// F_T coefficients for lengths 0..=n through the continued fraction.
    Distribution {
        #[command(flatten)]
        set: PatternArgs,
        #[arg(long, short = 'n')]
        n: u32,
        /// Number of continued fraction levels (default n/2 + 2).
        #[arg(long)]
        depth: Option<usize>,
        /// Cluster series source; closed-form for the four known families,
        /// enumerated otherwise.
        #[arg(long, value_enum)]
        source: Option<SourceArg>,
    },
    /// Brute-force statistics of all involutions of length n.
    Oracle {
        #[command(flatten)]
        set: PatternArgs,
        #[arg(long, short = 'n')]
        n: usize,
        /// Allow n above 12.
        #[arg(long)]
        force: bool,
    },
    /// T-clusters up to a given length.
    Clusters {
        #[command(flatten)]
        set: PatternArgs,
        #[arg(long)]
        max_n: usize,
        /// Only involutory clusters.
        #[arg(long)]
        involutory: bool,
    },
    /// A generating function of the pipeline, truncated at x^n.
    Series {
        #[command(flatten)]
        set: PatternArgs,
        #[arg(long, short = 'n')]
        n: u32,
        #[arg(long, value_enum, default_value_t = SeriesKind::F)]
        kind: SeriesKind,
        #[arg(long, value_enum)]
        source: Option<SourceArg>,
        #[arg(long)]
        depth: Option<usize>,
        /// Print the rational closed form of C or CI instead of its expansion.
        #[arg(long)]
        rational: bool,
    },
    /// A specialization of the {12,21} distribution.
    Sequence {
        /// hertzsprung, irreducible, fpf_irreducible or matchings_short_pairs.
        #[arg(long)]
        preset: String,
        #[arg(long, short = 'n')]
        n: u32,
        /// b-file ("n a(n)" per line) to compare against.
        #[arg(long)]
        expect_file: Option<PathBuf>,
    },
    /// Wilf classes of the patterns of one length.
    Wilf {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        max_n: usize,
        /// Allow max n above 12.
        #[arg(long)]
        force: bool,
    },
    /// Cross-checks the pipeline against the oracle; exits 1 on any failure.
    Verify {
        #[command(flatten)]
        set: PatternArgs,
        #[arg(long, short = 'n')]
        n: u32,
        #[arg(long)]
        depth: Option<usize>,
        /// Allow n above 12.
        #[arg(long)]
        force: bool,
    },
}
