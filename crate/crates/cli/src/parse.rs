//! Flag value parsers. Lists are comma separated.

use dunkl::{Partition, Rational};

pub fn partition(s: &str) -> Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad part {p:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

pub fn rational(s: &str) -> Result<Rational, String> {
    dunkl::symfunc::parse_rational(s).map_err(|e| e.to_string())
}

pub fn floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("bad number {v:?}: {e}")))
        .collect()
}

pub fn rationals(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').map(rational).collect()
}
