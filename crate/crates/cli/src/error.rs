use std::fmt::Write as _;
use std::io;
use std::path::PathBuf;

use egs_core::scenario::Violation;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{origin}: {source}")]
    Json {
        origin: String,
        source: serde_json::Error,
    },

    #[error("{}", list_violations(.0))]
    InvalidScenario(Vec<Violation>),

    #[error(transparent)]
    Engine(#[from] egs_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("writing CSV: {0}")]
    Csv(#[from] io::Error),
}

fn list_violations(v: &[Violation]) -> String {
    let mut s = format!("invalid scenario ({} violation(s)):", v.len());
    for item in v {
        let _ = write!(s, "\n  {item}");
    }
    s
}
