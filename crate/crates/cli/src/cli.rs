//! Command-line interface definition.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::SchemeKind;

#[derive(Debug, Parser)]
#[command(
    name = "spinsqueeze",
    version,
    about = "Spin-squeezing estimates for dispersively probed atomic ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Tabular output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Comma-separated values with a `#`-prefixed header block.
    Csv,
    /// Newline-delimited JSON, one object per row.
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Refractive index and differential light shift over a frequency grid
    Spectrum {
        /// JSON file with beam, vapour and grid parameters
        #[arg(long)]
        config: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Squeezing estimate for one probing scenario (single-line JSON)
    Squeeze {
        /// JSON file describing the scenario
        #[arg(long)]
        config: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the probing scheme named in the config
        #[arg(long, value_enum)]
        scheme: Option<SchemeKind>,
        /// Override the squeezing formula (single-d1 | cycling |
        /// two-colour-d1); defaults to the scheme's natural choice
        #[arg(long)]
        formula: Option<String>,
    },
    /// Optimised squeezing across a log-spaced span of optical depths
    Sweep {
        /// Squeezing formula: single-d1 | cycling | two-colour-d1
        #[arg(long)]
        formula: String,
        /// Smallest resonant optical depth
        #[arg(long, default_value_t = 1.0)]
        d_min: f64,
        /// Largest resonant optical depth
        #[arg(long, default_value_t = 1.0e4)]
        d_max: f64,
        /// Number of log-spaced depths (inclusive endpoints)
        #[arg(long, default_value_t = 41)]
        points: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output encoding
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Minimise xi^2 over the scattering probability at fixed depth
    Optimize {
        /// Squeezing formula: single-d1 | cycling | two-colour-d1
        #[arg(long)]
        formula: String,
        /// Resonant optical depth
        #[arg(long)]
        depth: f64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact counting-statistics checks of the linearised formulas (NDJSON)
    OracleCheck {
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
