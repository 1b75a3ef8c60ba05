//! Euler-Maruyama simulation of Dyson's Brownian motion and of the type-A
//! Dunkl process with exchange jumps.
//!
//! Both processes share the continuous part
//!
//! ```text
//! dX_i = dB_i + k sum_{j != i} dt / (X_i - X_j)        (beta = 2k)
//! ```
//!
//! The Dunkl process additionally swaps coordinates `i` and `j` at rate
//! `k / (X_i - X_j)^2`. A step that would change the relative order of any
//! two particles, or whose largest jump probability exceeds `rate_step`, is
//! split in half with a Brownian bridge draw for the midpoint, recursively
//! up to `guard_depth` times.
//!
//! Trajectory `i` draws from `ChaCha8Rng` seeded with `seed` on stream `i`,
//! so ensembles are bit-identical for any number of worker threads.

mod experiments;
mod stats;

pub use experiments::{freeze_experiment, mc_norm_check, FreezeReport, NormCheck};
pub use stats::{
    centre_of_mass, empirical_cdf, ensemble_stats, ks_compare, ks_critical_value, ks_one_sample, ks_two_sample,
    position_stats, sorted_marginals, CentreOfMass, EnsembleStats,
};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simulation parameters. Field names double as the JSON config schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n: usize,
    /// Coupling `k = beta / 2`.
    pub k: f64,
    pub dt: f64,
    pub t_end: f64,
    pub n_traj: usize,
    pub seed: u64,
    #[serde(default = "default_guard_depth")]
    pub guard_depth: u32,
    /// Largest admissible per-pair jump probability in one substep.
    #[serde(default = "default_thinning_cap")]
    pub thinning_cap: f64,
    /// Target bound on `max pair rate * substep`.
    #[serde(default = "default_rate_step")]
    pub rate_step: f64,
    /// Record every this many `dt` steps; 0 keeps only both end points.
    #[serde(default)]
    pub record_every: usize,
    /// Dunkl process only: start each trajectory from a uniformly permuted `x0`.
    #[serde(default = "default_true")]
    pub symmetric_start: bool,
}

fn default_guard_depth() -> u32 {
    40
}

fn default_thinning_cap() -> f64 {
    0.5
}

fn default_rate_step() -> f64 {
    0.1
}

fn default_true() -> bool {
    true
}

impl SimConfig {
    pub fn new(n: usize, k: f64, dt: f64, t_end: f64, n_traj: usize, seed: u64) -> Self {
        Self {
            n,
            k,
            dt,
            t_end,
            n_traj,
            seed,
            guard_depth: default_guard_depth(),
            thinning_cap: default_thinning_cap(),
            rate_step: default_rate_step(),
            record_every: 0,
            symmetric_start: true,
        }
    }

    pub fn beta(&self) -> f64 {
        2.0 * self.k
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} must be positive, got {v}")))
            }
        };
        positive(self.k, "k")?;
        positive(self.dt, "dt")?;
        positive(self.t_end, "t_end")?;
        positive(self.rate_step, "rate_step")?;
        positive(self.thinning_cap, "thinning_cap")?;
        if self.n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if self.n_traj == 0 {
            return Err(Error::Domain("n_traj must be at least 1".into()));
        }
        if self.thinning_cap > 1.0 {
            return Err(Error::Domain("thinning_cap must not exceed 1".into()));
        }
        Ok(())
    }

    fn n_steps(&self) -> usize {
        ((self.t_end / self.dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
    }

    /// Recorded time grid.
    pub fn times(&self) -> Vec<f64> {
        let n_steps = self.n_steps();
        let mut times = vec![0.0];
        for s in 1..=n_steps {
            let recorded = s == n_steps || (self.record_every > 0 && s % self.record_every == 0);
            if recorded {
                times.push(self.step_time(s, n_steps));
            }
        }
        times
    }

    fn step_time(&self, s: usize, n_steps: usize) -> f64 {
        if s == n_steps {
            self.t_end
        } else {
            s as f64 * self.dt
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Process {
    Dyson,
    Dunkl,
}

/// A swap of coordinates `i < j` at `time`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpEvent {
    pub time: f64,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Trajectory index, which is also its RNG stream.
    pub index: usize,
    /// Labeled starting point (a permutation of `x0` under symmetric start).
    pub start: Vec<f64>,
    /// Labeled positions at each recorded time.
    pub positions: Vec<Vec<f64>>,
    pub jumps: Vec<JumpEvent>,
    /// Number of step halvings triggered by the ordering guard.
    pub halvings: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub process: Process,
    pub config: SimConfig,
    pub x0: Vec<f64>,
    pub times: Vec<f64>,
    pub trajectories: Vec<Trajectory>,
}

impl Ensemble {
    pub fn n(&self) -> usize {
        self.config.n
    }

    /// Sorted positions of trajectory `traj` at recorded time `time_index`.
    pub fn sorted_at(&self, traj: usize, time_index: usize) -> Vec<f64> {
        let mut v = self.trajectories[traj].positions[time_index].clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn total_jumps(&self) -> usize {
        self.trajectories.iter().map(|t| t.jumps.len()).sum()
    }
}

pub fn simulate_dyson(config: &SimConfig, x0: &[f64]) -> Result<Ensemble> {
    simulate(Process::Dyson, config, x0)
}

pub fn simulate_dunkl(config: &SimConfig, x0: &[f64]) -> Result<Ensemble> {
    simulate(Process::Dunkl, config, x0)
}

fn simulate(process: Process, config: &SimConfig, x0: &[f64]) -> Result<Ensemble> {
    config.validate()?;
    if x0.len() != config.n {
        return Err(Error::Dimension {
            expected: config.n,
            got: x0.len(),
        });
    }
    if x0.iter().any(|v| !v.is_finite()) || x0.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Unordered { name: "x0" });
    }
    let results: Vec<Result<Trajectory>> = (0..config.n_traj)
        .into_par_iter()
        .map(|i| Walker::new(process, config, x0, i).run())
        .collect();
    let trajectories = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Ensemble {
        process,
        config: config.clone(),
        x0: x0.to_vec(),
        times: config.times(),
        trajectories,
    })
}

struct Walker<'a> {
    cfg: &'a SimConfig,
    jumps_on: bool,
    index: usize,
    rng: ChaCha8Rng,
    x: Vec<f64>,
    drift: Vec<f64>,
    trial: Vec<f64>,
    jumps: Vec<JumpEvent>,
    halvings: u64,
}

impl<'a> Walker<'a> {
    fn new(process: Process, cfg: &'a SimConfig, x0: &[f64], index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64);
        let jumps_on = process == Process::Dunkl;
        let mut x = x0.to_vec();
        if jumps_on && cfg.symmetric_start {
            x.shuffle(&mut rng);
        }
        Self {
            cfg,
            jumps_on,
            index,
            rng,
            drift: vec![0.0; x.len()],
            trial: vec![0.0; x.len()],
            x,
            jumps: Vec::new(),
            halvings: 0,
        }
    }

    fn run(mut self) -> Result<Trajectory> {
        let start = self.x.clone();
        let n_steps = self.cfg.n_steps();
        let mut positions = vec![start.clone()];
        let mut t = 0.0;
        for s in 1..=n_steps {
            let t_next = self.cfg.step_time(s, n_steps);
            self.advance(t, t_next)?;
            t = t_next;
            if s == n_steps || (self.cfg.record_every > 0 && s % self.cfg.record_every == 0) {
                positions.push(self.x.clone());
            }
        }
        Ok(Trajectory {
            index: self.index,
            start,
            positions,
            jumps: self.jumps,
            halvings: self.halvings,
        })
    }

    fn max_rate(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.x.len() {
            for j in (i + 1)..self.x.len() {
                m = m.max(self.cfg.k / (self.x[i] - self.x[j]).powi(2));
            }
        }
        m
    }

    fn advance(&mut self, mut t: f64, t_next: f64) -> Result<()> {
        while t < t_next {
            let mut h = t_next - t;
            if self.jumps_on {
                let rate = self.max_rate();
                if rate * h > self.cfg.rate_step {
                    h = self.cfg.rate_step / rate;
                }
            }
            let last = t + h >= t_next;
            let sq = h.sqrt();
            let dw: Vec<f64> = (0..self.x.len())
                .map(|_| sq * self.rng.sample::<f64, _>(StandardNormal))
                .collect();
            self.step(t, h, &dw, 0)?;
            t = if last { t_next } else { t + h };
        }
        Ok(())
    }

    fn step(&mut self, t: f64, h: f64, dw: &[f64], depth: u32) -> Result<()> {
        let n = self.x.len();
        let too_fast = self.jumps_on && self.max_rate() * h > self.cfg.rate_step;
        for i in 0..n {
            self.drift[i] = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (self.x[i] - self.x[j]))
                .sum::<f64>()
                * self.cfg.k;
        }
        for (i, w) in dw.iter().enumerate() {
            self.trial[i] = self.x[i] + self.drift[i] * h + w;
        }
        if !too_fast && self.order_kept() {
            let rates_from = self.x.clone();
            std::mem::swap(&mut self.x, &mut self.trial);
            if self.jumps_on {
                self.thin(&rates_from, t + h, h)?;
            }
            return Ok(());
        }
        if depth >= self.cfg.guard_depth {
            return Err(Error::GuardExhausted {
                trajectory: self.index,
                time: t,
            });
        }
        self.halvings += 1;
        let half = 0.5 * h.sqrt();
        let first: Vec<f64> = dw
            .iter()
            .map(|w| 0.5 * w + half * self.rng.sample::<f64, _>(StandardNormal))
            .collect();
        let second: Vec<f64> = dw.iter().zip(&first).map(|(w, f)| w - f).collect();
        self.step(t, 0.5 * h, &first, depth + 1)?;
        self.step(t + 0.5 * h, 0.5 * h, &second, depth + 1)
    }

    fn order_kept(&self) -> bool {
        let n = self.x.len();
        if self.trial.iter().any(|v| !v.is_finite()) {
            return false;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let before = self.x[j] - self.x[i];
                let after = self.trial[j] - self.trial[i];
                if after == 0.0 || (before > 0.0) != (after > 0.0) {
                    return false;
                }
            }
        }
        true
    }

    /// Pairwise swaps with probability `k h / (x_i - x_j)^2`, rates taken at
    /// the start of the substep.
    fn thin(&mut self, from: &[f64], t_end: f64, h: f64) -> Result<()> {
        let n = from.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let p = self.cfg.k * h / (from[i] - from[j]).powi(2);
                if p > self.cfg.thinning_cap {
                    return Err(Error::ThinningCap {
                        trajectory: self.index,
                        time: t_end,
                    });
                }
                if self.rng.random::<f64>() < p {
                    self.x.swap(i, j);
                    self.jumps.push(JumpEvent { time: t_end, i, j });
                }
            }
        }
        Ok(())
    }
}
