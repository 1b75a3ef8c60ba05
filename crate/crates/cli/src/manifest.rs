//! Run manifests: enough to regenerate every output file exactly.

use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::CliResult;
use crate::io::sha256_file;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDigest {
    /// File name, relative to the manifest's directory.
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedLineage {
    pub seed: u64,
    pub generator: String,
    pub streams: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Subcommand that produced the outputs (`simulate` or `freeze`).
    pub command: String,
    /// Fully resolved configuration, replayable as is.
    pub config: serde_json::Value,
    pub library_version: String,
    pub seeds: SeedLineage,
    pub started_unix_secs: u64,
    pub wall_clock_secs: f64,
    pub outputs: Vec<OutputDigest>,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, seed: u64, started: SystemTime, elapsed: Duration) -> Self {
        Self {
            command: command.into(),
            config,
            library_version: dunkl::VERSION.into(),
            seeds: SeedLineage {
                seed,
                generator: "ChaCha8Rng::seed_from_u64(seed)".into(),
                streams: "trajectory i draws from stream i".into(),
            },
            started_unix_secs: started.duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            wall_clock_secs: elapsed.as_secs_f64(),
            outputs: Vec::new(),
        }
    }

    pub fn add_output(&mut self, path: &Path) -> CliResult<()> {
        self.outputs.push(OutputDigest {
            file: path
                .file_name()
                .map_or_else(String::new, |f| f.to_string_lossy().into_owned()),
            sha256: sha256_file(path)?,
        });
        Ok(())
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

/// `dir/stem.suffix` for an output path `dir/stem.ext`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}.{suffix}"))
}
