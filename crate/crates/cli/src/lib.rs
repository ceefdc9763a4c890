//! Command-line harness for the relay simulator: configuration parsing, the
//! named experiments and CSV output.

pub mod commands;
pub mod config;
pub mod format;
pub mod manifest;

use std::path::PathBuf;

pub use commands::{run, Outcome};
pub use config::{parse_config, RunConfig};
pub use manifest::{Command, GridAxis, RunManifest};

/// Exit status for success, input errors and failed verification.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("{key} = {value} is outside {range}")]
    Domain {
        key: String,
        value: String,
        range: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error("grid: {0}")]
    Grid(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Model(relaysim_core::Error),
}

impl From<relaysim_core::Error> for CliError {
    fn from(e: relaysim_core::Error) -> Self {
        match e {
            relaysim_core::Error::Domain { name, value, range } => CliError::Domain {
                key: name.to_string(),
                value: value.to_string(),
                range: range.to_string(),
            },
            other => CliError::Model(other),
        }
    }
}
