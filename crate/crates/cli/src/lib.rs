//! Library side of the `reefopt` command-line tool: config schema and
//! subcommand implementations.

pub mod commands;
pub mod config;
pub mod error;

pub use config::{BuiltProblem, LoadedConfig, RunConfig};
pub use error::CliError;

/// Environment variable capping the worker threads used by `compare`.
pub const THREADS_ENV: &str = "REEFOPT_THREADS";

/// Size the global rayon pool from `REEFOPT_THREADS` when it is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV}={value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Other(e.to_string()))
}
