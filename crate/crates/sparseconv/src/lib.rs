//! File formats, property suites and subcommands for the `sparseconv` CLI.
//!
//! The numerical work lives in [`sparseconv_core`]; this crate adds JSON and
//! CSV I/O, parallel drivers and the exit-code policy.

pub mod commands;
pub mod json;
pub mod suites;
pub mod sweep;

use std::process::ExitCode;

pub use commands::{CommandOutput, Status};

/// Environment variable capping the worker pool; `0` or unset means automatic.
pub const THREADS_ENV: &str = "SPARSECONV_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] sparseconv_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 verification failure, 2 usage or input error, 3 budget exceeded.
    pub fn exit_code(&self) -> u8 {
        use sparseconv_core::Error as E;
        match self {
            CliError::Core(E::Budget { .. }) => 3,
            CliError::Core(E::Shape(_) | E::NotHermitian { .. }) => 1,
            _ => 2,
        }
    }
}

impl From<CliError> for ExitCode {
    fn from(e: CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}

/// Parses a thread count as found in [`THREADS_ENV`].
pub fn parse_threads(value: Option<&str>) -> Result<usize, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
    }
}

pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let n = parse_threads(std::env::var(THREADS_ENV).ok().as_deref())?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threads_env_values() {
        assert_eq!(parse_threads(None).unwrap(), 0);
        assert_eq!(parse_threads(Some("4")).unwrap(), 4);
        assert_eq!(parse_threads(Some(" 0 ")).unwrap(), 0);
        assert!(parse_threads(Some("-1")).is_err());
    }

    #[test]
    fn exit_codes() {
        let budget = CliError::Core(sparseconv_core::Error::Budget { needed: 2, limit: 1, advice: "" });
        assert_eq!(budget.exit_code(), 3);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(sparseconv_core::Error::GroupMismatch).exit_code(), 2);
    }
}
