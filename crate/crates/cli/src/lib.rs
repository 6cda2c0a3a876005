//! File formats and command-line front end for `egs-core`.

pub mod anchors;
pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::fs;
use std::io::{self, Write};

use args::{Cli, Command};
use commands::Outcome;
pub use error::CliError;

/// Compute the command's output without writing anything.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Forecast(a) => commands::forecast_cmd(a),
        Command::Table2(a) => commands::table2_cmd(a),
        Command::Compare(a) => commands::compare_cmd(a),
        Command::Oracle(a) => commands::oracle_cmd(a),
        Command::Convert(a) => commands::convert_cmd(a),
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Deliver a finished outcome: side files, then the CSV (file or stdout),
/// then the report (file or stderr).
pub fn deliver(outcome: &Outcome) -> Result<(), CliError> {
    for (path, text) in &outcome.files {
        write_file(path, text)?;
    }
    match &outcome.out {
        Some(path) => write_file(path, &outcome.csv)?,
        None => io::stdout().lock().write_all(outcome.csv.as_bytes())?,
    }
    match &outcome.report_path {
        Some(path) => write_file(path, &outcome.report)?,
        None if outcome.report.is_empty() => {}
        None => io::stderr().lock().write_all(outcome.report.as_bytes())?,
    }
    Ok(())
}
