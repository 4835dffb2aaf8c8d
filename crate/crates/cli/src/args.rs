use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "biclosed", version, about = "Biclosed sets of type A roots and quasitrivial semigroups")]
pub struct Cli {
    /// Write results here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Worker threads for the exhaustive searches.
    #[arg(long, global = true, value_name = "K")]
    pub jobs: Option<usize>,

    /// Allow the largest ranks (brute force over 2^30 subsets, verify at rank 4).
    #[arg(long, global = true)]
    pub force_large: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every biclosed set or every associative quasitrivial operation.
    Enumerate(EnumerateArgs),
    /// Map a biclosed set to its operation or an operation to its set.
    Convert(ConvertArgs),
    /// Decide associativity of a quasitrivial table.
    Check(CheckArgs),
    /// Put a biclosed set in the form w(Φ⁺_{Δ₁,Δ₂}).
    Classify(InputArgs),
    /// Apply a permutation to a root set or an operation.
    Act(ActArgs),
    /// Hasse diagram of the biclosed sets, with order and lattice checks.
    Poset(PosetArgs),
    /// Run every acceptance check up to the given rank.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct InputArgs {
    /// JSON file holding a root set {"n","roots"} or a table {"m","table"}.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// The same JSON given inline.
    #[arg(long, value_name = "JSON")]
    pub json: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Object {
    Biclosed,
    Semigroup,
    Report,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Jsonl,
    Csv,
    Dot,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, value_enum, default_value = "biclosed")]
    pub object: Object,
    /// Rank of the root system.
    #[arg(long, conflicts_with = "m")]
    pub n: Option<usize>,
    /// Size of the underlying set, `n + 1`.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Semigroup,
    Biclosed,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Direction; inferred from the input shape when omitted.
    #[arg(long, value_enum)]
    pub to: Option<Target>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Direct,
    Biclosed,
    Both,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub via: Via,
}

#[derive(Args, Debug)]
pub struct ActArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Cycle notation such as "(1,2)(3,4)" or an image list such as "[2,1,3]".
    #[arg(long, required_unless_present = "random")]
    pub perm: Option<String>,
    /// Also check F_{wC} = w·F_C on the instance.
    #[arg(long)]
    pub verify_equivariance: bool,
    /// Check equivariance on this many random (set, permutation) pairs instead.
    #[arg(long, value_name = "COUNT", requires = "n", conflicts_with_all = ["perm", "input", "json"])]
    pub random: Option<usize>,
    /// Rank for random instances.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct PosetArgs {
    #[arg(long)]
    pub n: usize,
    /// Compare containment with the operation order on every pair.
    #[arg(long)]
    pub check_isomorphism: bool,
    /// Compute every meet and join.
    #[arg(long)]
    pub check_lattice: bool,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Include wall times in the report.
    #[arg(long)]
    pub timings: bool,
}
