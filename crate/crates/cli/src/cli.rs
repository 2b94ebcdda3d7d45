use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Gamma-function remainders: certificates, monotonicity evidence and inequality checks.
#[derive(Debug, Parser)]
#[command(name = "burnside", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Omit the `#` provenance line (with its timestamp) before CSV output.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Selector {
    /// Catalog function (theta, vartheta, b, w, H, H_lambda, F_alpha, g_alpha, BigF, BigG, Lambda_pq, Phi_pq, f_pqr).
    #[arg(long)]
    pub function: Option<String>,
    /// Function parameter as NAME=VALUE, e.g. alpha=0.5.
    #[arg(long = "param", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
    /// Select the completely monotonic claim set.
    #[arg(long)]
    pub theorem1: bool,
    /// Select the logarithmically completely monotonic claim set.
    #[arg(long)]
    pub theorem2: bool,
    /// Sharpness witnesses (F_alpha, g_alpha, H, BigF, BigG).
    #[arg(long)]
    pub witnesses: bool,
    /// Item of the selected theorem: `5`, `item5`, `theorem1-item5`, `fn8`.
    #[arg(long)]
    pub item: Vec<String>,
    /// Every item of the selected theorem.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// First grid point; defaults to the domain's left end plus 0.01.
    #[arg(long)]
    pub start: Option<f64>,
    /// Grid spacing; when given, claims run on this single grid.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub count: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a catalog function.
    Eval {
        #[arg(long)]
        function: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        x: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Search for an absolute-monotonicity certificate of an exponential polynomial.
    CertifyAm {
        /// f1, f2, f3, h1, h2, h3, h4.
        #[arg(long, required_unless_present = "expr", conflicts_with = "expr")]
        function: Option<String>,
        /// Exponential polynomial in t, e.g. "E^(2t) - 2t E^(t) - 1".
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value_t = 64)]
        max_depth: u32,
        /// Write the certificate JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-difference evidence of complete monotonicity.
    VerifyCm {
        #[command(flatten)]
        selector: Selector,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 8)]
        max_order: u32,
        /// Test -f instead of f.
        #[arg(long)]
        negate: bool,
        /// Working precision in decimal digits (at least 25).
        #[arg(long, default_value_t = 32)]
        digits: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Finite-difference evidence of logarithmic complete monotonicity.
    VerifyLcm {
        #[command(flatten)]
        selector: Selector,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 6)]
        max_order: u32,
        #[arg(long, default_value_t = 32)]
        digits: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Sign and monotonicity of Lambda_pq / Phi_pq against the listed regions.
    Regions {
        /// lambda or phi.
        #[arg(long, required_unless_present = "representatives")]
        family: Option<String>,
        #[arg(long, allow_negative_numbers = true, requires = "family")]
        p: Option<f64>,
        #[arg(long, allow_negative_numbers = true, requires = "family")]
        q: Option<f64>,
        /// One representative (p, q) per listed sub-region.
        #[arg(long, conflicts_with = "family")]
        representatives: bool,
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        #[arg(long, default_value_t = 20.0)]
        hi: f64,
        #[arg(long, default_value_t = 64)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Verify catalog inequalities on grids.
    Bounds {
        /// Spec names; all specs when omitted.
        #[arg(long)]
        spec: Vec<String>,
        /// Value of the parameter k for the Lu bounds.
        #[arg(long)]
        k: Option<f64>,
        /// JSON manifest replacing the built-in catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Emit one summary row per spec instead of every grid point.
        #[arg(long)]
        summary: bool,
        /// Grid override: `--lo`, `--hi`, `--count` (200 points when omitted).
        #[arg(long, requires = "hi")]
        lo: Option<f64>,
        #[arg(long, requires = "lo")]
        hi: Option<f64>,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Locate crossovers between two bounds of the same target.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_parser = ["lower", "upper"], default_value = "upper")]
        side: String,
        #[arg(long, default_value_t = 1.0)]
        lo: f64,
        #[arg(long, default_value_t = 1e4)]
        hi: f64,
        /// Value of k for whichever spec takes it.
        #[arg(long)]
        k: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the acceptance checks.
    Report {
        /// Criterion numbers; all when omitted.
        #[arg(long)]
        criterion: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}
