//! Command-line front end: argument parsing, run/scan drivers and report
//! rendering. The binary in `main.rs` only maps outcomes to exit codes.

pub mod args;
pub mod reference;
pub mod report;
mod run;

use std::fmt;

pub use args::Cli;
pub use run::{execute, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

/// A user-facing failure; always maps to exit code 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<qelectra::Error> for CliError {
    fn from(e: qelectra::Error) -> Self {
        Self::input(e.to_string())
    }
}

/// Caps the global rayon pool from `QELECTRA_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QELECTRA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input(format!("QELECTRA_THREADS must be a positive integer, got `{raw}`")))?;
    // a pool that already exists keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
