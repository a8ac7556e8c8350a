use aperiodic::{EnumerationGuard, Identity, SizeGuard};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "aperiodic",
    version,
    about = "Exact counts of aperiodic words and the congruences they imply"
)]
pub struct Cli {
    /// Emit a single JSON document instead of line-oriented text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count aperiodic words of length N over m symbols.
    Count(CountArgs),
    /// Report the exact period of a word.
    Period(PeriodArgs),
    /// List words of length N by period class, in lexicographic order.
    Enumerate(EnumerateArgs),
    /// Check an identity exhaustively over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Mobius,
    InclusionExclusion,
    PrimePower,
    All,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(short = 'm', long = "alphabet")]
    pub alphabet: u64,

    #[arg(short = 'n', long = "length")]
    pub length: u64,

    #[arg(long, value_enum, default_value_t = Method::Mobius)]
    pub method: Method,

    /// Also print the number of words for every exact period dividing N.
    #[arg(long)]
    pub breakdown: bool,

    /// Largest exact count, in bits, the tool will materialize.
    #[arg(long, default_value_t = SizeGuard::DEFAULT_BITS)]
    pub guard_bits: u64,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    /// Word as compact digits ("0110") or a comma list ("0,1,1,0"); "-" reads stdin.
    pub word: String,

    /// Alphabet size; defaults to one more than the largest symbol.
    #[arg(short = 'm', long = "alphabet")]
    pub alphabet: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    All,
    Symmetries,
    Asymmetries,
    Lyndon,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(short = 'm', long = "alphabet")]
    pub alphabet: u32,

    #[arg(short = 'n', long = "length")]
    pub length: usize,

    #[arg(long, value_enum, default_value_t = Filter::All)]
    pub filter: Filter,

    /// Stop after this many words; lifts the requirement that the whole space fits the guard.
    #[arg(long)]
    pub limit: Option<u64>,

    /// Largest number of words the tool will walk.
    #[arg(long, default_value_t = EnumerationGuard::DEFAULT_WORDS)]
    pub guard_words: u64,

    #[arg(long, default_value_t = SizeGuard::DEFAULT_BITS)]
    pub guard_bits: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// fermat, euler, divisor-sum, period-divisibility or tau-primality.
    #[arg(value_parser = parse_identity)]
    pub identity: Identity,

    #[arg(long)]
    pub max_m: Option<u64>,

    /// Upper bound on N (or n, or J, depending on the identity).
    #[arg(long, conflicts_with = "max_p")]
    pub max_n: Option<u64>,

    /// Upper bound on the prime p (fermat).
    #[arg(long)]
    pub max_p: Option<u64>,

    /// Write every checked instance to a CSV file.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<std::path::PathBuf>,

    #[arg(long, default_value_t = SizeGuard::DEFAULT_BITS)]
    pub guard_bits: u64,
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse().map_err(|e: aperiodic::Error| e.to_string())
}
