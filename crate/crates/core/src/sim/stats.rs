//! Sorted marginals, moments and Kolmogorov-Smirnov distances.

use serde::{Deserialize, Serialize};

use super::Ensemble;
use crate::error::{Error, Result};

/// Sorted coordinate samples at one recorded time: `out[m]` holds the
/// `m`-th smallest particle of every trajectory, in ascending order.
pub fn sorted_marginals(e: &Ensemble, time_index: usize) -> Vec<Vec<f64>> {
    let n = e.n();
    let mut out = vec![Vec::with_capacity(e.trajectories.len()); n];
    for tr in 0..e.trajectories.len() {
        for (m, v) in e.sorted_at(tr, time_index).into_iter().enumerate() {
            out[m].push(v);
        }
    }
    for col in &mut out {
        col.sort_by(f64::total_cmp);
    }
    out
}

/// Fraction of an ascending sample that is `<= x`.
pub fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|v| *v <= x) as f64 / sorted.len() as f64
}

/// Two-sample statistic `sup |F_a - F_b|` of two ascending samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// `sup |F_n - F|` for an ascending sample against a continuous CDF.
/// Returns NaN if the CDF does anywhere.
pub fn ks_one_sample(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        if f.is_nan() {
            return f64::NAN;
        }
        d = d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    d
}

/// 1% two-sample critical value `1.63 sqrt((n + m) / (n m))`.
pub fn ks_critical_value(n: usize, m: usize) -> f64 {
    1.63 * ((n + m) as f64 / (n * m) as f64).sqrt()
}

/// KS distance per sorted coordinate at the final recorded time.
pub fn ks_compare(a: &Ensemble, b: &Ensemble) -> Result<Vec<f64>> {
    if a.times != b.times || a.n() != b.n() {
        return Err(Error::GridMismatch);
    }
    let last = a.times.len() - 1;
    let ma = sorted_marginals(a, last);
    let mb = sorted_marginals(b, last);
    Ok(ma.iter().zip(&mb).map(|(x, y)| ks_two_sample(x, y)).collect())
}

/// Per-time, per-sorted-coordinate moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub times: Vec<f64>,
    pub n_traj: usize,
    pub mean: Vec<Vec<f64>>,
    pub variance: Vec<Vec<f64>>,
    pub min_gap: Vec<f64>,
}

pub fn ensemble_stats(e: &Ensemble) -> EnsembleStats {
    let paths: Vec<&[Vec<f64>]> = e.trajectories.iter().map(|t| t.positions.as_slice()).collect();
    moments(&e.times, &paths, e.n())
}

/// [`ensemble_stats`] from bare recorded positions, `paths[traj][time]`
/// (labeled or sorted).
pub fn position_stats(times: &[f64], paths: &[&[Vec<f64>]]) -> Result<EnsembleStats> {
    let n = paths.first().and_then(|p| p.first()).map_or(0, Vec::len);
    if paths.is_empty() || n == 0 {
        return Err(Error::Domain("no positions to summarize".into()));
    }
    for p in paths {
        if p.len() != times.len() {
            return Err(Error::GridMismatch);
        }
        if let Some(bad) = p.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: bad.len(),
            });
        }
    }
    Ok(moments(times, paths, n))
}

fn moments(times: &[f64], paths: &[&[Vec<f64>]], n: usize) -> EnsembleStats {
    let m = paths.len() as f64;
    let mut mean = Vec::with_capacity(times.len());
    let mut variance = Vec::with_capacity(times.len());
    let mut min_gap = Vec::with_capacity(times.len());
    for ti in 0..times.len() {
        let mut s = vec![0.0; n];
        let mut s2 = vec![0.0; n];
        let mut gap = f64::INFINITY;
        for path in paths {
            let mut v = path[ti].clone();
            v.sort_by(f64::total_cmp);
            for (c, x) in v.iter().enumerate() {
                s[c] += x;
                s2[c] += x * x;
            }
            gap = v.windows(2).map(|w| w[1] - w[0]).fold(gap, f64::min);
        }
        let mu: Vec<f64> = s.iter().map(|x| x / m).collect();
        let var = s2
            .iter()
            .zip(&mu)
            .map(|(q, u)| if m > 1.0 { (q - m * u * u) / (m - 1.0) } else { 0.0 })
            .collect();
        mean.push(mu);
        variance.push(var);
        min_gap.push(gap);
    }
    EnsembleStats {
        times: times.to_vec(),
        n_traj: paths.len(),
        mean,
        variance,
        min_gap,
    }
}

/// Displacement of `sum_i X_i` from its start at the final time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentreOfMass {
    pub mean: f64,
    pub std_error: f64,
}

pub fn centre_of_mass(e: &Ensemble) -> CentreOfMass {
    let last = e.times.len() - 1;
    let d: Vec<f64> = e
        .trajectories
        .iter()
        .map(|tr| tr.positions[last].iter().sum::<f64>() - tr.start.iter().sum::<f64>())
        .collect();
    let m = d.len() as f64;
    let mean = d.iter().sum::<f64>() / m;
    let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
    CentreOfMass {
        mean,
        std_error: (var / m).sqrt(),
    }
}
