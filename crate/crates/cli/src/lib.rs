//! Experiment runner behind the `entangle` binary.

pub mod output;
pub mod run;
pub mod scenario;

use std::path::Path;

pub use output::{Cell, Format, Table};
pub use run::{run, Report};
pub use scenario::{Cli, Command, Scenario, DEFAULT_SEED};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<entangle::Error> for CliError {
    fn from(e: entangle::Error) -> Self {
        use entangle::Error as E;
        match e {
            E::InvalidParameter { .. } | E::DegenerateCycle | E::TooManyQubits(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Invariant(other.to_string()),
        }
    }
}

/// Run `scenario`, print its table to `out` and write any transcript.
pub fn execute<W: std::io::Write>(scenario: &Scenario, out: W) -> Result<(), CliError> {
    let report = run(scenario)?;
    if let Some(path) = &scenario.transcript {
        write_transcript(path, &report.transcript)?;
    }
    report.table.write(scenario.format, out)?;
    Ok(())
}

fn write_transcript(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(CliError::Io)
}
