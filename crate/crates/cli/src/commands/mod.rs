//! Subcommand implementations and the process-level error type.

mod optimize;
mod oracle_check;
mod spectrum;
mod squeeze;
mod sweep;

use std::fmt;
use std::process::ExitCode;

use crate::cli::Command;

/// Process-level error, carrying the exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation, configuration or input data (exit code 2).
    Usage(String),
    /// The model rejected the requested evaluation, an iteration failed,
    /// or a verification check did not pass (exit code 1).
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Compute(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Compute(msg) => f.write_str(msg),
        }
    }
}

impl From<spinsqueeze::Error> for CliError {
    fn from(err: spinsqueeze::Error) -> Self {
        use spinsqueeze::Error;
        match &err {
            Error::InvalidInput(_) | Error::DataFile(_) => CliError::Usage(err.to_string()),
            Error::Domain(_) | Error::Numerical(_) => CliError::Compute(err.to_string()),
        }
    }
}

/// Run the selected subcommand.
pub fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Spectrum {
            config,
            out,
            format,
        } => spectrum::run(config, out.as_deref(), *format),
        Command::Squeeze {
            config,
            out,
            scheme,
            formula,
        } => squeeze::run(config, out.as_deref(), *scheme, formula.as_deref()),
        Command::Sweep {
            formula,
            d_min,
            d_max,
            points,
            out,
            format,
        } => sweep::run(formula, *d_min, *d_max, *points, out.as_deref(), *format),
        Command::Optimize {
            formula,
            depth,
            out,
        } => optimize::run(formula, *depth, out.as_deref()),
        Command::OracleCheck { out } => oracle_check::run(out.as_deref()),
    }
}
