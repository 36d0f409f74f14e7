use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cforge", version, about = "Tangles, branched covers, knot invariants and concordance certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Write the JSON result envelope to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Row limit for coset enumeration.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_cosets: u64,

    /// Largest diagram generated for invariants.
    #[arg(long, global = true, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_crossings: u64,

    /// Worker threads for certificate batches.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational tangle calculus.
    #[command(subcommand)]
    Tangle(TangleCmd),
    /// Classical invariants of a knot expression.
    #[command(subcommand)]
    Knot(KnotCmd),
    /// Branched double covers of satellites.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Group presentations and coset enumeration.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Independence and non-sliceness certificates.
    #[command(subcommand)]
    Cert(CertCmd),
}

#[derive(Debug, Subcommand)]
pub enum TangleCmd {
    /// Fraction of a tangle word such as "[-1,3,-2]".
    Eval {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Canonical word of a fraction such as "-3/5" or "inf".
    Canon {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Sigma,
    Det,
    Stilde,
    All,
}

#[derive(Debug, Subcommand)]
pub enum KnotCmd {
    /// Signature, determinant and s̃.
    Invariant {
        /// Knot expression: inline JSON, a JSON file, or `unknot`.
        #[arg(long = "in")]
        input: String,
        #[arg(long, value_enum, default_value_t = Invariant::All)]
        what: Invariant,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoverCmd {
    /// Surgery description of the branched double cover of P_n(K).
    Compute {
        /// `builtin:Pn`, `builtin:Qn`, inline JSON, or a JSON file.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        companion: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Wirtinger presentation of a braid closure, optionally with a `1/n`
    /// surgery relator.
    Present {
        /// Knot expression with a known closed braid.
        #[arg(long, conflicts_with = "sum", required_unless_present = "sum")]
        knot: Option<String>,
        /// Connected-sum braid `p:q:k:copies`.
        #[arg(long)]
        sum: Option<String>,
        /// Identify the arcs entering each block (needs --sum).
        #[arg(long, requires = "sum")]
        identify: bool,
        /// Add the relator `λ^n μ`.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: Option<u32>,
    },
    /// Enumerate cosets of a subgroup in a presented group.
    Enumerate {
        /// Presentation file in the text format, or JSON.
        #[arg(long = "in")]
        input: PathBuf,
        /// Subgroup generator words; the trivial subgroup by default.
        #[arg(long)]
        subgroup: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CertCmd {
    /// Linear independence of {P_n(K)} over a range of n.
    Maintorus {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        companion: String,
        #[arg(long, default_value_t = 1)]
        from: i64,
        #[arg(long, default_value_t = 10)]
        to: i64,
        /// Accept h(S^3_1(K#J#K)) < 0 when the s̃ criterion does not give it.
        #[arg(long)]
        assume_h_negative: bool,
    },
    /// Non-sliceness of a single P_n(K).
    Notslice {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        companion: String,
        #[arg(long)]
        n: i64,
    },
    /// Independence of a family of satellites of torus-knot sums.
    Rankexpand {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: i64,
        /// Family members `m:k`, comma separated.
        #[arg(long)]
        members: String,
    },
    /// Run a JSON array of certificate requests.
    Batch {
        #[arg(long = "in")]
        input: PathBuf,
    },
}
