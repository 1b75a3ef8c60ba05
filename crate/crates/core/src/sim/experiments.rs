//! Strong-coupling freezing experiment and Monte Carlo check of `c_k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{simulate_dyson, SimConfig};
use crate::error::{Error, Result};
use crate::hermite::freeze_prediction;
use crate::intertwine::WeightNorm;

/// Final configuration of Dyson's model at large `k`, scaled by `1/sqrt(k)`,
/// against the frozen prediction `sqrt(2t) z_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreezeReport {
    pub n: usize,
    pub k: f64,
    pub t: f64,
    pub n_traj: usize,
    pub prediction: Vec<f64>,
    /// Mean over trajectories of the centered, sorted, scaled configuration.
    pub mean_scaled: Vec<f64>,
    /// Mean over trajectories of `max_i |v_i - mean(v) - prediction_i|`.
    pub mean_max_dev: f64,
    /// Root mean square of `v_i - mean(v) - prediction_i` over trajectories and particles.
    pub rms_dev: f64,
    pub per_particle_rms: Vec<f64>,
    /// Mean over trajectories of `mean(v)`; not removed by the comparison
    /// above and of order `sum(x0) / (N sqrt(k))`.
    pub centre_offset: f64,
    /// As `mean_max_dev` but without centering.
    pub uncentered_mean_max_dev: f64,
}

/// Runs Dyson's model at `beta = 2k` from `x0` to `config.t_end`.
pub fn freeze_experiment(config: &SimConfig, x0: &[f64]) -> Result<FreezeReport> {
    if config.k < 100.0 {
        return Err(Error::Domain(format!(
            "freezing experiment needs k >= 100, got {}",
            config.k
        )));
    }
    let e = simulate_dyson(config, x0)?;
    let t = config.t_end;
    let n = config.n;
    let pred = freeze_prediction(n, t)?;
    let scale = config.k.sqrt();
    let last = e.times.len() - 1;

    let mut mean_scaled = vec![0.0; n];
    let mut sq = vec![0.0; n];
    let mut max_dev_sum = 0.0;
    let mut raw_dev_sum = 0.0;
    let mut offset_sum = 0.0;
    for tr in 0..e.trajectories.len() {
        let v: Vec<f64> = e.sorted_at(tr, last).iter().map(|y| y / scale).collect();
        let centre = v.iter().sum::<f64>() / n as f64;
        offset_sum += centre;
        let mut max_dev = 0.0f64;
        let mut raw_dev = 0.0f64;
        for i in 0..n {
            let d = v[i] - centre - pred[i];
            mean_scaled[i] += v[i] - centre;
            sq[i] += d * d;
            max_dev = max_dev.max(d.abs());
            raw_dev = raw_dev.max((v[i] - pred[i]).abs());
        }
        max_dev_sum += max_dev;
        raw_dev_sum += raw_dev;
    }
    let m = e.trajectories.len() as f64;
    Ok(FreezeReport {
        n,
        k: config.k,
        t,
        n_traj: e.trajectories.len(),
        prediction: pred,
        mean_scaled: mean_scaled.iter().map(|s| s / m).collect(),
        mean_max_dev: max_dev_sum / m,
        rms_dev: (sq.iter().sum::<f64>() / (m * n as f64)).sqrt(),
        per_particle_rms: sq.iter().map(|s| (s / m).sqrt()).collect(),
        centre_offset: offset_sum / m,
        uncentered_mean_max_dev: raw_dev_sum / m,
    })
}

/// Monte Carlo estimate of `c_k` against its closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormCheck {
    pub n: usize,
    pub k: f64,
    pub samples: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub closed_form: f64,
    pub rel_error: f64,
    /// `(estimate - closed_form) / std_error`.
    pub z_score: f64,
}

const CHUNK: usize = 1 << 14;

/// Estimates `(2 pi)^{N/2} E[w_k(G)]` for standard Gaussian `G` in `R^N`.
/// Chunk `c` of the samples uses stream `c` of `ChaCha8Rng(seed)`.
pub fn mc_norm_check(n: usize, k: f64, samples: usize, seed: u64) -> Result<NormCheck> {
    if !(1..=4).contains(&n) || !(k > 0.0 && k <= 2.0) {
        return Err(Error::Domain(format!(
            "Monte Carlo normalization supports 1 <= N <= 4, 0 < k <= 2; got N = {n}, k = {k}"
        )));
    }
    if samples < 2 {
        return Err(Error::Domain("need at least two samples".into()));
    }
    let norm = WeightNorm::from_f64(n, k)?;
    let n_chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut g = vec![0.0; n];
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                for v in g.iter_mut() {
                    *v = rng.sample(StandardNormal);
                }
                let w = norm.weight(&g);
                s += w;
                s2 += w * w;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partial.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let m = samples as f64;
    let mean = s / m;
    let var = (s2 - m * mean * mean) / (m - 1.0);
    let factor = (2.0 * std::f64::consts::PI).powf(0.5 * n as f64);
    let estimate = factor * mean;
    let std_error = factor * (var.max(0.0) / m).sqrt();
    let z_score = if std_error > 0.0 {
        (estimate - norm.c_k) / std_error
    } else {
        0.0
    };
    Ok(NormCheck {
        n,
        k,
        samples,
        estimate,
        std_error,
        closed_form: norm.c_k,
        rel_error: (estimate - norm.c_k).abs() / norm.c_k,
        z_score,
    })
}
