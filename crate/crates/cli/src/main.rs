//! `qqpart` command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input or
//! configuration, 3 numerical failure.

mod cli;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Command};
use crate::commands::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Bound(args) => commands::bound(args),
        Command::Tc(args) => commands::tc(args),
        Command::Sflip(args) => commands::sflip(args),
        Command::Verify(args) => commands::verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Verification => eprintln!("error: verification failed"),
                Failure::Invalid(msg) | Failure::Numerical(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
