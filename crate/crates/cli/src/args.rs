use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "carlitz-lab", version, about = "Exact Bernoulli-Carlitz, Cauchy-Carlitz and Stirling-Carlitz numbers over F_r(T)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single value.
    Compute(ComputeArgs),
    /// Tabulate values over ranges of N, n and k.
    Table(TableArgs),
    /// Run the built-in golden-value and cross-route checks.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Bc,
    Cc,
    Stirling1,
    Stirling2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Series,
    Composition,
    Binomial,
    Stirling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Complete,
    Assoc,
    Restricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field size r = p^e.
    #[arg(long)]
    pub r: Option<u32>,
    /// Characteristic p (with --e for extension fields).
    #[arg(long)]
    pub p: Option<u32>,
    /// Extension degree e.
    #[arg(long)]
    pub e: Option<u32>,
    /// Monic irreducible modulus of degree e over F_p, coefficients low to high, e.g. "1,0,1".
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads (CARLITZ_LAB_THREADS takes precedence when set).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct StirlingArgs {
    /// Stirling-Carlitz flavor.
    #[arg(long, value_enum, default_value = "complete")]
    pub flavor: FlavorArg,
    /// Index m of an associated (>= m) or restricted (<= m) flavor.
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Truncation level N (bc, cc).
    #[arg(long = "N")]
    pub big_n: Option<u32>,
    #[arg(long)]
    pub n: u64,
    /// Second index k (stirling1, stirling2).
    #[arg(long)]
    pub k: Option<u64>,
    /// Evaluation route (bc, cc).
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[command(flatten)]
    pub stirling: StirlingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Truncation levels, e.g. "2" or "0..2" (inclusive).
    #[arg(long = "N")]
    pub big_n: Option<String>,
    /// Index range, e.g. "0..270" (inclusive).
    #[arg(long)]
    pub n: String,
    /// Step through the n range.
    #[arg(long, default_value_t = 1)]
    pub step: u64,
    /// Second index range (stirling1, stirling2).
    #[arg(long)]
    pub k: Option<String>,
    /// Evaluation routes (bc, cc); repeat or separate with commas.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub method: Vec<MethodArg>,
    #[command(flatten)]
    pub stirling: StirlingArgs,
    /// Permit n ranges beyond 100000.
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, value_enum, default_value = "fast")]
    pub level: LevelArg,
    #[command(flatten)]
    pub output: OutputArgs,
}
