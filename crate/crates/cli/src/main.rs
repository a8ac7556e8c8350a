//! `aperiodic`: count aperiodic words, find exact periods, enumerate words by
//! period and sweep the congruences that follow from the counts.
//!
//! Exit codes: 0 success, 1 counterexample or method disagreement,
//! 2 usage error, 3 size-guard error.

mod args;
mod commands;
mod output;

use std::io::{self, ErrorKind};
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Core(aperiodic::Error),
    Usage(String),
    Io(io::Error),
}

impl From<aperiodic::Error> for CliError {
    fn from(e: aperiodic::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

/// Result of a command that ran to completion: verified (or computed) vs. refuted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Refuted,
}

pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_SIZE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(a) => commands::count(&a, cli.json),
        Command::Period(a) => commands::period(&a, cli.json),
        Command::Enumerate(a) => commands::enumerate(&a, cli.json),
        Command::Verify(a) => commands::verify(&a, cli.json),
    };
    match result {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Refuted) => ExitCode::from(EXIT_REFUTED),
        Err(CliError::Io(e)) if e.kind() == ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_REFUTED)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Core(e)) if e.is_size() => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_SIZE)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
