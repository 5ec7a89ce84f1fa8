//! Command-line surface of `zetabound`: argument definitions, run
//! configuration, output formats and the subcommand implementations.

pub mod commands;
pub mod complex;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use thiserror::Error;
use zetabound::ZetaError;

pub use commands::run;
pub use config::{Format, Overrides, RunConfig, CONFIG_ENV};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const IO: u8 = 1;
    pub const DOMAIN: u8 = 2;
    pub const REFUSED: u8 = 3;
    pub const PRECISION: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("certificate refused: {0}")]
    Refused(String),
    #[error("configuration: {0}")]
    Config(String),
    /// Some scan points could not be evaluated; the output marks them.
    #[error("scan incomplete: {failed} point(s) failed, first at sigma={sigma}: {source}")]
    ScanIncomplete {
        failed: usize,
        sigma: f64,
        source: ZetaError,
    },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Zeta(e) => zeta_exit_code(e),
            CliError::ScanIncomplete { source, .. } => zeta_exit_code(source),
            CliError::Refused(_) => exit::REFUSED,
            CliError::Config(_) => exit::DOMAIN,
            CliError::Io(_) => exit::IO,
        }
    }
}

pub fn zeta_exit_code(e: &ZetaError) -> u8 {
    match e {
        ZetaError::Precision { .. } => exit::PRECISION,
        ZetaError::ScanAborted { source, .. } => zeta_exit_code(source),
        ZetaError::Pole { .. }
        | ZetaError::Domain(_)
        | ZetaError::Overflow(_)
        | ZetaError::Parameter(_) => exit::DOMAIN,
    }
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    complex::parse_complex(s)
}

#[derive(Debug, Parser)]
#[command(
    name = "zetabound",
    version,
    about = "Hurwitz zeta / Dirichlet L evaluation and real-axis zero-free certificates"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    /// key=value config file (defaults to $ZETABOUND_CONFIG)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Truncation error target for the evaluator
    #[arg(long, global = true)]
    pub target: Option<f64>,
    /// Largest number of directly summed terms
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Largest number of Bernoulli corrections (<= 60)
    #[arg(long, global = true)]
    pub max_k: Option<usize>,
    /// Half-width of the excluded band around s = 1
    #[arg(long, global = true)]
    pub pole_band: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for scans and L-function terms
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl GlobalArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            target: self.target,
            max_n: self.max_n,
            max_k: self.max_k,
            pole_band: self.pole_band,
            format: self.format.map(|f| match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            }),
            out: self.out.clone(),
            jobs: self.jobs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Hurwitz zeta function ζ(s, w)
    Eval {
        /// Complex argument, e.g. 2, 0.5+14.134725i
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, default_value_t = 1.0)]
        w: f64,
    },
    /// Compare ζ(σ, w) with the closed-form upper bound
    Bound {
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 1.0)]
        w: f64,
    },
    /// Issue a zero-free / negativity certificate (JSON)
    Certify {
        #[command(subcommand)]
        target: CertifyTarget,
    },
    /// Sign scan over a σ grid (CSV or JSON)
    Scan(ScanArgs),
    /// Print the Dirichlet characters modulo q
    Chars {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum CertifyTarget {
    /// ζ(σ, w) < 0 from the bound, when σ ∈ (0,1) and 1-σ <= w
    Negative {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        w: f64,
    },
    /// ζ(σ) has no zeros in (0, 1)
    Riemann,
    /// L(χ₂, σ) has no zeros in (0, 1), χ₂ the character mod 2
    Chi2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScanSubjectArg {
    Riemann,
    Hurwitz,
    #[value(name = "L")]
    L,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub subject: ScanSubjectArg,
    /// Shift for the hurwitz subject
    #[arg(long)]
    pub w: Option<f64>,
    /// Modulus for the L subject
    #[arg(long)]
    pub q: Option<u32>,
    /// Character index (chars order) for the L subject
    #[arg(long, default_value_t = 0)]
    pub chi: usize,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub step: f64,
    /// Also write the numeric_scan certificate (JSON) here
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}
