//! `spinsqueeze`: spin-squeezing estimates for dispersively probed atomic
//! ensembles, from the command line.
//!
//! Subcommands: `spectrum`, `squeeze`, `sweep`, `optimize`, `oracle-check`.
//! Exit codes: 0 on success, 1 when the model rejects the requested
//! evaluation or a verification check fails, 2 for malformed invocations,
//! configuration files or input data.

mod cli;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    env_logger::init();
    let args = cli::Cli::parse();
    match commands::dispatch(&args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
