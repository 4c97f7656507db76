//! Command-line front end for the `leastprime` library.
//!
//! [`run`] parses arguments, validates every flag combination, runs the
//! requested computation on a dedicated thread pool and writes the report
//! to `out` in the chosen format. Errors go to `err` and select the exit
//! code.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use thiserror::Error;

mod args;
mod commands;
mod format;

pub use args::{Cli, Format};
pub use commands::{MonteCarloReport, TableReport, TableRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    /// A flag value or combination that cannot be run.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] leastprime::Error),

    #[error("cannot write output: {0}")]
    Output(#[from] io::Error),

    #[error("cannot encode output: {0}")]
    Encode(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(e: impl ToString) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(leastprime::Error::Invariant(_)) => EXIT_INTERNAL,
            CliError::Core(_) => EXIT_INPUT,
            CliError::Output(_) | CliError::Encode(_) => EXIT_INTERNAL,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_USAGE => "usage",
            EXIT_INPUT => "input",
            _ => "internal",
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    kind: &'a str,
    message: String,
    exit_code: i32,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let format = cli.format;
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let code = e.exit_code();
            let _ = if format == Format::Json {
                let report = ErrorReport {
                    kind: e.kind(),
                    message: e.to_string(),
                    exit_code: code,
                };
                writeln!(err, "{}", serde_json::json!({ "error": report }))
            } else {
                writeln!(err, "error ({}): {e}", e.kind())
            };
            code
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(CliError::usage)?;
    let plan = commands::Plan::validate(cli)?;
    let report = pool.install(|| plan.compute())?;
    report.write(plan.format(), out)
}
