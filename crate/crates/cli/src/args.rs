use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "permpat", version, about = "Avoidability of x·π^i(x)·π^j(x)·π^k(x) under morphic permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for parallel searches (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,

    /// Seed for sampled inputs.
    #[arg(long, default_value_t = 2024, global = true)]
    pub seed: u64,

    /// Log to standard error; repeat for more detail.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The fourteen α parameters of an exponent triple.
    Alphas(Exponents),
    /// σ, the smallest maximum of α over the unavoidable parameter sets.
    Sigma(Exponents),
    /// Avoidability interval and boundary report.
    Classify(Exponents),
    /// The generated unavoidable parameter sets.
    Families {
        /// Only this family (1..=10).
        #[arg(long)]
        family: Option<usize>,
    },
    /// Longest word avoiding the forbidden structures, by backtracking.
    Search(SearchArgs),
    /// Check one word for instances.
    VerifyWord {
        /// The word, as digits or comma-separated letters.
        #[arg(long)]
        word: String,
        #[command(flatten)]
        detector: DetectorArgs,
    },
    /// Bounded avoidance certificate for a morphic word.
    VerifyMorphic(MorphicArgs),
}

#[derive(Args, Debug, Clone, Copy, Serialize)]
pub struct Exponents {
    #[arg(long)]
    pub i: u64,
    #[arg(long)]
    pub j: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// A single cycle through every letter.
    Cycle,
    /// One fixed letter, a cycle on the rest.
    Fixcycle,
    /// One cycle plus any number of fixed letters.
    Anycycle,
    /// Every permutation.
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Abstract,
    Fixed,
}

#[derive(Args, Debug, Clone)]
pub struct DetectorArgs {
    /// Alphabet size.
    #[arg(long)]
    pub m: usize,
    /// Forbidden α parameters, e.g. `1,2,4,6,7`.
    #[arg(long, conflicts_with = "patterns")]
    pub forbidden: Option<String>,
    /// Forbidden equality structures given directly, e.g. `0012,0101`.
    #[arg(long)]
    pub patterns: Option<String>,
    #[arg(long, value_enum, default_value_t = ModelArg::Cycle)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Abstract)]
    pub mode: ModeArg,
    /// Exponents for `--mode fixed`.
    #[arg(long, requires_all = ["j", "k"])]
    pub i: Option<u64>,
    #[arg(long)]
    pub j: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Do not treat `uuuu` (the identity instance) as forbidden.
    #[arg(long)]
    pub no_identity: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[command(flatten)]
    pub detector: DetectorArgs,
    /// Stop once an avoiding word of this length is found.
    #[arg(long, default_value_t = 1000)]
    pub cap: usize,
    /// Maximum number of search nodes.
    #[arg(long, default_value_t = permpat_core::search::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Explore every letter at every step instead of canonical words only.
    #[arg(long)]
    pub no_pruning: bool,
    /// Split the tree into parallel tasks at this depth (0 = sequential).
    #[arg(long, default_value_t = 0)]
    pub split_depth: usize,
    /// Instead of `--forbidden`, forbid a random set of this many α
    /// parameters drawn with `--seed`.
    #[arg(long, conflicts_with_all = ["forbidden", "patterns"])]
    pub sample_size: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    HAlpha,
    ThueMorse,
    TernaryThue,
}

#[derive(Args, Debug, Clone)]
pub struct MorphicArgs {
    /// JSON spec file with `base`, `seed`, optional `coding` and `alphabet`.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub spec: Option<PathBuf>,
    /// A bundled spec instead of a file.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Forbidden α parameters.
    #[arg(long, conflicts_with = "patterns")]
    pub forbidden: Option<String>,
    /// Forbidden equality structures given directly.
    #[arg(long)]
    pub patterns: Option<String>,
    #[arg(long, value_enum, default_value_t = ModelArg::All)]
    pub model: ModelArg,
    /// Largest block length checked.
    #[arg(long, default_value_t = permpat_core::verify::H_ALPHA_U_MAX)]
    pub umax: usize,
    /// Prefix length checked.
    #[arg(long, default_value_t = 3000)]
    pub len: usize,
    /// Maximum number of factor checks.
    #[arg(long, default_value_t = u64::MAX)]
    pub budget: u64,
    /// Do not treat `uuuu` as forbidden.
    #[arg(long)]
    pub no_identity: bool,
    /// Also report whether the prefix is free of fourth powers.
    #[arg(long)]
    pub four_powers: bool,
}
