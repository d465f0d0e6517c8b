use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "laplace", version, about = "Exact Laplace-method expansion coefficients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scaled coefficients of a problem file, or a seeded random sweep without --input.
    Coeffs(CoeffsArgs),
    /// Stirling coefficients of the gamma function by five routes.
    Gamma(ExampleArgs),
    /// Q polynomials and diagonal coefficients of the incomplete gamma function.
    Igamma(ExampleArgs),
    /// Bell, potential and Stirling triangles.
    Tables(TablesArgs),
    /// Numeric sweeps against quadrature; writes CSV.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Direct,
    Wojdylo,
    Comtet,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RouteArg::All)]
    pub route: RouteArg,
    /// Overrides the file's n_max; for the sweep, the largest n_max drawn.
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
    /// Zero-fill short coefficient lists.
    #[arg(long)]
    pub pad: bool,
    /// Seed of the random sweep.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(long, value_name = "N", default_value_t = 4)]
    pub n_max: usize,
    /// Coefficient route feeding the pipeline values.
    #[arg(long, value_enum, default_value_t = RouteArg::All)]
    pub route: RouteArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Problem file whose normalized `a_k/a_0` drive the Bell and potential tables;
    /// defaults to the gamma example.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub pad: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "F", default_value_t = 10.0)]
    pub lambda_min: f64,
    #[arg(long, value_name = "F", default_value_t = 1000.0)]
    pub lambda_max: f64,
    #[arg(long, value_name = "N", default_value_t = 9)]
    pub points: usize,
    /// Largest number of expansion terms N; every N in 1..=n_max is checked.
    #[arg(long, value_name = "N", default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
