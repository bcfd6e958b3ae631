//! `hertzinv`: command-line front end for `hertzinv-core`.
//!
//! Exit codes: 0 success, 1 a cross-check or expected sequence failed,
//! 2 usage error, 3 invalid pattern set, 4 brute-force size guard.

mod args;
mod commands;
mod render;
mod verify;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use hertzinv_core::Error;

use args::{Cli, Command};
use commands::SeriesRequest;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INVALID_SET: u8 = 3;
const EXIT_GUARD: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn guard(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_GUARD,
            message: message.into(),
        }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(e: csv::Error) -> Self {
        CliError::internal(format!("write failed: {e}"))
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::internal(format!("write failed: {e}"))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAPermutation(_)
            | Error::PatternTooShort(_)
            | Error::BadPatternSpec(_)
            | Error::DuplicatePattern(_)
            | Error::NotSimple { .. }
            | Error::NotSelfInverse(_) => EXIT_INVALID_SET,
            Error::Mismatch(_) | Error::UnstableDepth(_) | Error::NegativeCoefficient { .. } => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Distribution { set, n, depth, source } => {
            let set = commands::parse_set(&set)?;
            let source = commands::pick_source(&set, source);
            commands::distribution(out, format, &set, n, depth, source)
        }
        Command::Oracle { set, n, force } => {
            let set = commands::parse_set(&set)?;
            commands::guard(n, force)?;
            commands::oracle(out, format, &set, n)
        }
        Command::Clusters { set, max_n, involutory } => {
            let set = commands::parse_set(&set)?;
            commands::clusters(out, format, &set, max_n, involutory)
        }
        Command::Series {
            set,
            n,
            kind,
            source,
            depth,
            rational,
        } => {
            let set = commands::parse_set(&set)?;
            let source = commands::pick_source(&set, source);
            let req = SeriesRequest {
                n,
                kind,
                source,
                depth,
                rational,
            };
            commands::series(out, format, &set, req)
        }
        Command::Sequence { preset, n, expect_file } => {
            commands::sequence(out, format, &preset, n, expect_file.as_deref())
        }
        Command::Wilf { length, max_n, force } => {
            commands::guard(max_n, force)?;
            commands::wilf(out, format, length, max_n)
        }
        Command::Verify { set, n, depth, force } => {
            let set = commands::parse_set(&set)?;
            commands::guard(n as usize, force)?;
            verify::verify(out, format, &set, n, depth)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
