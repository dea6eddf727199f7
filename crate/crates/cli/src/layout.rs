//! On-disk layout of an experiment and the provenance header of every CSV.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult, IoContext};

pub struct Layout {
    pub root: PathBuf,
    provenance: String,
}

impl Layout {
    pub fn new(config: &ExperimentConfig) -> Self {
        Self {
            root: config.experiment_dir(),
            provenance: format!(
                "config_hash={} seed={} mipt-core={} mipt-cli={}",
                config.hash(),
                config.experiment.seed,
                mipt_core::VERSION,
                env!("CARGO_PKG_VERSION"),
            ),
        }
    }

    /// Body of the `#` comment line heading every CSV.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Directory of one `(L, p)` point.
    pub fn point_dir(&self, num_qubits: usize, rate: f64) -> PathBuf {
        self.root.join(format!("L{num_qubits}_p{rate}"))
    }

    pub fn targets(&self, num_qubits: usize, rate: f64) -> PathBuf {
        self.point_dir(num_qubits, rate).join("targets.jsonl")
    }

    pub fn series(&self, num_qubits: usize, rate: f64) -> PathBuf {
        self.point_dir(num_qubits, rate).join("series.jsonl")
    }

    pub fn shots(&self, num_qubits: usize, rate: f64, target: usize) -> PathBuf {
        self.point_dir(num_qubits, rate).join("shots").join(format!("target_{target}.jsonl"))
    }

    pub fn sector_stats(&self, num_qubits: usize, rate: f64) -> PathBuf {
        self.point_dir(num_qubits, rate).join("sector_stats.json")
    }

    pub fn file(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn curve(&self, num_qubits: usize) -> PathBuf {
        self.file(&format!("curve_L{num_qubits}.csv"))
    }

    pub fn analysis(&self, num_qubits: usize) -> PathBuf {
        self.file(&format!("analysis_L{num_qubits}.csv"))
    }
}

pub fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).at(parent)?;
    }
    Ok(BufWriter::new(File::create(path).at(path)?))
}

pub fn open(path: &Path, hint: &str) -> CliResult<BufReader<File>> {
    if !path.exists() {
        return Err(CliError::MissingInput { path: path.to_path_buf(), hint: hint.to_string() });
    }
    Ok(BufReader::new(File::open(path).at(path)?))
}
