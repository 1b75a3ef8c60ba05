use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime};

use clap::{Args, ValueEnum};
use dunkl::sim::{ensemble_stats, position_stats, simulate_dunkl, simulate_dyson, Ensemble, Process, SimConfig};
use serde::{Deserialize, Serialize};

use super::{default_start, freeze, list};
use crate::error::{CliError, CliResult};
use crate::io::{read_trajectories, stats_csv, write_bytes, write_jumps, write_trajectories};
use crate::manifest::{sibling, RunManifest};
use crate::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcessArg {
    Dyson,
    Dunkl,
}

impl From<ProcessArg> for Process {
    fn from(p: ProcessArg) -> Self {
        match p {
            ProcessArg::Dyson => Process::Dyson,
            ProcessArg::Dunkl => Process::Dunkl,
        }
    }
}

/// Simulates an ensemble. Flags override fields of `--config`.
#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON file with `SimConfig` fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ProcessArg::Dyson)]
    pub process: ProcessArg,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub traj: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub record_every: Option<usize>,
    /// Dunkl process: start every trajectory from `x0` as given.
    #[arg(long)]
    pub ordered_start: bool,
    /// Ordered starting point; defaults to unit spacing about 0.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Trajectory CSV; jumps, statistics and manifest are written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything needed to rerun a simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateRun {
    pub process: Process,
    pub x0: Vec<f64>,
    pub sim: SimConfig,
}

fn missing(flag: &str) -> CliError {
    CliError::Parse(format!("--{flag} is required without --config"))
}

fn resolve(a: &SimulateArgs) -> CliResult<SimulateRun> {
    let mut c = match &a.config {
        Some(path) => serde_json::from_str::<SimConfig>(&std::fs::read_to_string(path)?)?,
        None => SimConfig::new(
            a.n.ok_or_else(|| missing("n"))?,
            a.k.ok_or_else(|| missing("k"))?,
            a.dt.ok_or_else(|| missing("dt"))?,
            a.t.ok_or_else(|| missing("t"))?,
            a.traj.ok_or_else(|| missing("traj"))?,
            a.seed.ok_or_else(|| missing("seed"))?,
        ),
    };
    if let Some(v) = a.n {
        c.n = v;
    }
    if let Some(v) = a.k {
        c.k = v;
    }
    if let Some(v) = a.dt {
        c.dt = v;
    }
    if let Some(v) = a.t {
        c.t_end = v;
    }
    if let Some(v) = a.traj {
        c.n_traj = v;
    }
    if let Some(v) = a.seed {
        c.seed = v;
    }
    if let Some(v) = a.record_every {
        c.record_every = v;
    }
    if a.ordered_start {
        c.symmetric_start = false;
    }
    let x0 = match &a.x0 {
        Some(s) => list("x0", s, parse::floats)?,
        None => default_start(c.n),
    };
    Ok(SimulateRun {
        process: a.process.into(),
        x0,
        sim: c,
    })
}

fn execute(run: &SimulateRun) -> CliResult<Ensemble> {
    Ok(match run.process {
        Process::Dyson => simulate_dyson(&run.sim, &run.x0)?,
        Process::Dunkl => simulate_dunkl(&run.sim, &run.x0)?,
    })
}

/// Writes the trajectory CSV at `out` plus `.jumps.csv`, `.stats.csv` and
/// `.manifest.json` siblings.
pub fn write_outputs(
    out: &Path,
    run: &SimulateRun,
    e: &Ensemble,
    started: SystemTime,
    clock: Instant,
) -> CliResult<()> {
    let jumps = sibling(out, "jumps.csv");
    let stats = sibling(out, "stats.csv");
    write_trajectories(out, e)?;
    write_jumps(&jumps, e)?;
    write_bytes(&stats, &stats_csv(&ensemble_stats(e))?)?;
    let mut m = RunManifest::new(
        "simulate",
        serde_json::to_value(run)?,
        run.sim.seed,
        started,
        clock.elapsed(),
    );
    for p in [out, jumps.as_path(), stats.as_path()] {
        m.add_output(p)?;
    }
    m.write(&sibling(out, "manifest.json"))
}

pub fn run(a: &SimulateArgs) -> CliResult<()> {
    let started = SystemTime::now();
    let clock = Instant::now();
    let run = resolve(a)?;
    let e = execute(&run)?;
    let s = ensemble_stats(&e);
    let last = s.times.len() - 1;
    println!(
        "{:?} N={} k={} beta={} trajectories={} t={}",
        run.process,
        run.sim.n,
        run.sim.k,
        run.sim.beta(),
        run.sim.n_traj,
        run.sim.t_end
    );
    println!(
        "jumps {} halvings {}",
        e.total_jumps(),
        e.trajectories.iter().map(|t| t.halvings).sum::<u64>()
    );
    println!("coordinate mean variance");
    for i in 0..run.sim.n {
        println!("{i} {:.6} {:.6}", s.mean[last][i], s.variance[last][i]);
    }
    if let Some(out) = &a.out {
        write_outputs(out, &run, &e, started, clock)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

/// Recomputes the statistics CSV from a trajectory CSV.
#[derive(Debug, Args)]
pub struct StatsArgs {
    pub input: PathBuf,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn stats(a: &StatsArgs) -> CliResult<()> {
    let table = read_trajectories(&a.input)?;
    let paths: Vec<&[Vec<f64>]> = table.paths.iter().map(Vec::as_slice).collect();
    let bytes = stats_csv(&position_stats(&table.times, &paths)?)?;
    match &a.out {
        Some(p) => write_bytes(p, &bytes)?,
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    Ok(())
}

/// Reruns a manifest into `--dir` and compares output digests.
#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Directory for the regenerated files.
    #[arg(long)]
    pub dir: PathBuf,
}

pub fn replay(a: &ReplayArgs) -> CliResult<()> {
    let m = RunManifest::read(&a.manifest)?;
    let first = m
        .outputs
        .first()
        .ok_or_else(|| CliError::Parse("manifest lists no outputs".into()))?;
    std::fs::create_dir_all(&a.dir)?;
    let out = a.dir.join(&first.file);
    let started = SystemTime::now();
    let clock = Instant::now();
    match m.command.as_str() {
        "simulate" => {
            let run: SimulateRun = serde_json::from_value(m.config.clone())?;
            let e = execute(&run)?;
            write_outputs(&out, &run, &e, started, clock)?;
        }
        "freeze" => {
            let run: freeze::FreezeRun = serde_json::from_value(m.config.clone())?;
            freeze::write_outputs(&out, &run, &freeze::execute(&run)?, started, clock)?;
        }
        other => return Err(CliError::Parse(format!("unknown manifest command {other:?}"))),
    }
    let fresh = RunManifest::read(&sibling(&out, "manifest.json"))?;
    let mut mismatched = 0;
    for (old, new) in m.outputs.iter().zip(&fresh.outputs) {
        let same = old == new;
        println!("{} {}", old.file, if same { "identical" } else { "DIFFERS" });
        mismatched += usize::from(!same);
    }
    if mismatched > 0 || m.outputs.len() != fresh.outputs.len() {
        return Err(CliError::Assertion {
            failed: mismatched.max(1),
            total: m.outputs.len(),
        });
    }
    Ok(())
}
