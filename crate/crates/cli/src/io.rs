//! CSV schemas. Floats are written with 17 significant digits so that
//! re-parsing recovers every value bit for bit.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use dunkl::sim::{Ensemble, EnsembleStats};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `trajectory,time,x_0,...,x_{N-1}`: labeled positions at each recorded time.
pub fn write_trajectories(path: &Path, e: &Ensemble) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["trajectory".to_string(), "time".to_string()];
    header.extend((0..e.n()).map(|i| format!("x_{i}")));
    w.write_record(&header)?;
    for tr in &e.trajectories {
        for (t, pos) in e.times.iter().zip(&tr.positions) {
            let mut row = vec![tr.index.to_string(), fmt_f64(*t)];
            row.extend(pos.iter().map(|v| fmt_f64(*v)));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `trajectory,time,i,j` for every exchange jump.
pub fn write_jumps(path: &Path, e: &Ensemble) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["trajectory", "time", "i", "j"])?;
    for tr in &e.trajectories {
        for j in &tr.jumps {
            w.write_record([tr.index.to_string(), fmt_f64(j.time), j.i.to_string(), j.j.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Recorded times and `paths[trajectory][time]` read back from
/// [`write_trajectories`] output.
pub struct TrajectoryTable {
    pub times: Vec<f64>,
    pub paths: Vec<Vec<Vec<f64>>>,
}

pub fn read_trajectories(path: &Path) -> CliResult<TrajectoryTable> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.clone();
    let n = header
        .len()
        .checked_sub(2)
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Parse(format!("{}: expected trajectory,time,x_0,... columns", path.display())))?;
    if &header[0] != "trajectory" || &header[1] != "time" {
        return Err(CliError::Parse(format!("{}: unexpected header", path.display())));
    }
    let mut paths: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut index: Vec<usize> = Vec::new();
    let mut times_by_path: Vec<Vec<f64>> = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> CliResult<f64> {
            rec[i]
                .parse()
                .map_err(|e| CliError::Parse(format!("row {:?}: {e}", rec.position())))
        };
        let tr: usize = rec[0]
            .parse()
            .map_err(|e| CliError::Parse(format!("trajectory index: {e}")))?;
        if index.last() != Some(&tr) {
            index.push(tr);
            paths.push(Vec::new());
            times_by_path.push(Vec::new());
        }
        times_by_path.last_mut().expect("pushed").push(num(1)?);
        let pos = (0..n).map(|i| num(i + 2)).collect::<CliResult<Vec<_>>>()?;
        paths.last_mut().expect("pushed").push(pos);
    }
    let times = times_by_path.first().cloned().unwrap_or_default();
    if times_by_path.iter().any(|t| *t != times) {
        return Err(CliError::Parse("trajectories recorded on different time grids".into()));
    }
    Ok(TrajectoryTable { times, paths })
}

/// `time,min_gap,mean_0..,var_0..` over sorted coordinates.
pub fn stats_csv(s: &EnsembleStats) -> CliResult<Vec<u8>> {
    let n = s.mean.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["time".to_string(), "min_gap".to_string()];
    header.extend((0..n).map(|i| format!("mean_{i}")));
    header.extend((0..n).map(|i| format!("var_{i}")));
    w.write_record(&header)?;
    for (ti, t) in s.times.iter().enumerate() {
        let mut row = vec![fmt_f64(*t), fmt_f64(s.min_gap[ti])];
        row.extend(s.mean[ti].iter().map(|v| fmt_f64(*v)));
        row.extend(s.variance[ti].iter().map(|v| fmt_f64(*v)));
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult<()> {
    File::create(path)?.write_all(bytes)?;
    Ok(())
}

pub fn sha256_file(path: &Path) -> CliResult<String> {
    let mut buf = Vec::new();
    File::open(path)?.read_to_end(&mut buf)?;
    Ok(hex::encode(Sha256::digest(&buf)))
}
