pub mod freeze;
pub mod intertwine;
pub mod jack;
pub mod simulate;
pub mod tpd;
pub mod verify;

use crate::error::{CliError, CliResult};

pub(crate) fn list<T>(flag: &str, s: &str, parse: impl Fn(&str) -> Result<T, String>) -> CliResult<T> {
    parse(s).map_err(|e| CliError::Parse(format!("--{flag}: {e}")))
}

/// `-(N-1)/2, ..., (N-1)/2` with unit spacing.
pub(crate) fn default_start(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 - 0.5 * (n as f64 - 1.0)).collect()
}
