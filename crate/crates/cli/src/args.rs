//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xdarboux::laguerre::SeedFamily;

#[derive(Parser, Debug)]
#[command(
    name = "xdarboux",
    version,
    about = "Exact Darboux transformations of Laguerre operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact coefficient tables of L_n or X_n.
    Table(TableArgs),
    /// Polynomial values on a grid.
    Eval(EvalArgs),
    /// Run the exact identity suite; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Closed-form norms against certified quadrature.
    Norms(NormsArgs),
    /// Factorize the classical operator at a seed eigenfunction.
    Factorize(FactorizeArgs),
    /// Certified isolating intervals for the real zeros.
    Zeros(ZerosArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Classical,
    #[value(name = "type1", alias = "typeI")]
    Type1,
    #[value(name = "type2", alias = "typeII")]
    Type2,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::Type1 => "type1",
            Self::Type2 => "type2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    /// Rational parameter as an exact literal `p/q` or `p`.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    /// Codimension of the exceptional family.
    #[arg(long)]
    pub m: Option<u32>,
    /// Inclusive degree range `a..b` (or a single `n`).
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this path atomically instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// `lo:hi:steps`, giving `steps + 1` equally spaced points.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    /// Single `k`; a default sweep is used when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Single `m`; `0..=2` when absent.
    #[arg(long)]
    pub m: Option<u32>,
    /// Degree range; its upper end is the largest degree checked.
    #[arg(long)]
    pub n: Option<String>,
    /// Flip one sign inside the suite to confirm that it detects failures.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct NormsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Also report the off-diagonal Gram entries.
    #[arg(long)]
    pub gram: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FactorizeArgs {
    /// Classical operator parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Seed family: phi1, phi2, phi3 or phi4.
    #[arg(long, value_parser = parse_seed)]
    pub seed: SeedFamily,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_seed(s: &str) -> Result<SeedFamily, String> {
    s.parse()
        .map_err(|_| format!("unknown seed family `{s}`; expected phi1, phi2, phi3 or phi4"))
}
