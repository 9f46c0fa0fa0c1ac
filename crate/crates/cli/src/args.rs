use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qpos",
    version,
    about = "Expand, verify and scan signed two-color partition q-series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Worker threads; output does not depend on this
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of a family series
    Expand(ExpandArgs),
    /// Check an identity or a step of a positivity argument
    Verify(VerifyArgs),
    /// Report negative coefficients of a series or a conjecture preset
    Scan(ScanArgs),
    /// Compare brute-force partition counts with the series
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 100)]
    pub order: usize,
    /// Expand the total-count series instead of the signed one
    #[arg(long)]
    pub unsigned: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    #[value(name = "thmC")]
    ThmC,
    #[value(name = "thmD")]
    ThmD,
    Special,
    Heine,
    Lemma51,
    Lemma52,
    C23cases,
    C41decomp,
    Gauss,
    Keysum,
    Circle,
    Fcalc,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub identity: Identity,
    /// Restrict family checks to one k (default: the whole grid)
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Upper bound on the auxiliary index n for the lemma checks
    #[arg(long)]
    pub nmax: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Ck1,
    C24,
    C2m,
    D22,
    D23,
    Dkm,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(
        long,
        value_enum,
        conflicts_with = "preset",
        required_unless_present = "preset"
    )]
    pub family: Option<FamilyArg>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 500)]
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Signed,
    Unsigned,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = OracleKind::Signed)]
    pub kind: OracleKind,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub m: u32,
    /// Largest partitioned integer (at most 60)
    #[arg(long, default_value_t = 20)]
    pub nmax: u32,
}
