use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime};

use clap::Args;
use dunkl::sim::{freeze_experiment, FreezeReport, SimConfig};
use serde::{Deserialize, Serialize};

use super::{default_start, list};
use crate::error::CliResult;
use crate::manifest::{sibling, RunManifest};
use crate::parse;

/// Dyson's model at large `k` against the frozen configuration `sqrt(2t) z_N`.
#[derive(Debug, Args)]
pub struct FreezeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub traj: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub dt: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// JSON report; a manifest is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreezeRun {
    pub x0: Vec<f64>,
    pub sim: SimConfig,
}

pub fn execute(run: &FreezeRun) -> CliResult<FreezeReport> {
    Ok(freeze_experiment(&run.sim, &run.x0)?)
}

pub fn write_outputs(
    out: &Path,
    run: &FreezeRun,
    r: &FreezeReport,
    started: SystemTime,
    clock: Instant,
) -> CliResult<()> {
    std::fs::write(out, serde_json::to_string_pretty(r)? + "\n")?;
    let mut m = RunManifest::new(
        "freeze",
        serde_json::to_value(run)?,
        run.sim.seed,
        started,
        clock.elapsed(),
    );
    m.add_output(out)?;
    m.write(&sibling(out, "manifest.json"))
}

pub fn run(a: &FreezeArgs) -> CliResult<()> {
    let started = SystemTime::now();
    let clock = Instant::now();
    let x0 = match &a.x0 {
        Some(s) => list("x0", s, parse::floats)?,
        None => default_start(a.n),
    };
    let run = FreezeRun {
        x0,
        sim: SimConfig::new(a.n, a.k, a.dt, a.t, a.traj, a.seed),
    };
    let r = execute(&run)?;
    println!("freeze N={} k={} t={} trajectories={}", r.n, r.k, r.t, r.n_traj);
    println!("i prediction mean rms");
    for i in 0..r.n {
        println!(
            "{i} {:.6} {:.6} {:.6}",
            r.prediction[i], r.mean_scaled[i], r.per_particle_rms[i]
        );
    }
    println!("mean max deviation {:.6}", r.mean_max_dev);
    println!("rms deviation {:.6}", r.rms_dev);
    println!("centre offset {:.6}", r.centre_offset);
    println!("uncentered mean max deviation {:.6}", r.uncentered_mean_max_dev);
    if let Some(out) = &a.out {
        write_outputs(out, &run, &r, started, clock)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}
