//! Experiment configuration: a TOML file with one table per concern. Every
//! default is spelled out in the template written by `mipt init`.

use std::path::{Path, PathBuf};

use mipt_core::circuit::AveragingMode;
use mipt_core::quantum::DEFAULT_MAX_QUBITS;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult, IoContext};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub system: System,
    #[serde(default)]
    pub targets: Targets,
    #[serde(default)]
    pub steering: Steering,
    #[serde(default)]
    pub analysis: Analysis,
    #[serde(default)]
    pub timeevo: TimeEvo,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Experiment {
    pub name: String,
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
}

fn default_output() -> PathBuf {
    PathBuf::from("runs")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct System {
    pub sizes: Vec<usize>,
    pub rates: Vec<f64>,
    #[serde(default = "default_cycles_per_site")]
    pub cycles_per_site: usize,
    #[serde(default = "default_burn_in_per_site")]
    pub burn_in_per_site: usize,
    /// Empty means every length `1..=L/2`.
    #[serde(default)]
    pub subsystem_lengths: Vec<usize>,
}

fn default_cycles_per_site() -> usize {
    3
}
fn default_burn_in_per_site() -> usize {
    2
}

impl System {
    pub fn lengths_for(&self, num_qubits: usize) -> Vec<usize> {
        if self.subsystem_lengths.is_empty() {
            (1..=num_qubits / 2).collect()
        } else {
            self.subsystem_lengths.iter().copied().filter(|&l| l < num_qubits).collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Averaging {
    Trajectory,
    Time,
    Both,
}

impl Averaging {
    /// Mode used to record target series.
    pub fn recording_mode(self) -> AveragingMode {
        match self {
            Averaging::Trajectory => AveragingMode::Trajectory,
            Averaging::Time | Averaging::Both => AveragingMode::Time,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Targets {
    pub count: usize,
    pub averaging: Averaging,
}

impl Default for Targets {
    fn default() -> Self {
        Self { count: 50, averaging: Averaging::Trajectory }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Steering {
    pub runs_per_target: usize,
    pub unbiased: bool,
}

impl Default for Steering {
    fn default() -> Self {
        Self { runs_per_target: 1000, unbiased: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Sector0,
    Effective,
    Postselected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    /// Even length of the c_V pair; 0 picks the largest even `L_s <= L/2`.
    pub cv_even: usize,
    pub cv_j: usize,
    pub p_c: f64,
    pub nu: f64,
    pub a: f64,
    pub window: f64,
    pub samples: usize,
    /// `[start, end, step]`.
    pub p_c_grid: [f64; 3],
    pub nu_grid: [f64; 3],
    pub quantity: Quantity,
    pub odd_half_chain: bool,
    pub weighted: bool,
}

impl Default for Analysis {
    fn default() -> Self {
        Self {
            cv_even: 0,
            cv_j: 1,
            p_c: 0.14,
            nu: 1.3,
            a: 0.92,
            window: 0.05,
            samples: 101,
            p_c_grid: [0.10, 0.20, 0.0025],
            nu_grid: [0.9, 1.8, 0.025],
            quantity: Quantity::Sector0,
            odd_half_chain: false,
            weighted: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeEvo {
    pub size: usize,
    pub rate: f64,
    pub configs: usize,
    pub cycles: usize,
}

impl Default for TimeEvo {
    fn default() -> Self {
        Self { size: 12, rate: 0.0, configs: 20, cycles: 24 }
    }
}

pub const TEMPLATE: &str = r#"# Steered monitored-circuit experiment.

[experiment]
name = "fig4"
seed = 20240501
output = "runs"

[system]
sizes = [8, 12, 16]
rates = [0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5]
cycles_per_site = 3         # T = 3 L
burn_in_per_site = 2        # burn-in = 2 L (time averaging only)
subsystem_lengths = []      # empty: every L_s in 1..=L/2

[targets]
count = 50
averaging = "trajectory"    # trajectory | time | both

[steering]
runs_per_target = 1000
unbiased = true

[analysis]
cv_even = 0                 # 0: largest even L_s <= L/2
cv_j = 1
p_c = 0.14
nu = 1.3
a = 0.92
window = 0.05
samples = 101
p_c_grid = [0.10, 0.20, 0.0025]
nu_grid = [0.9, 1.8, 0.025]
quantity = "sector0"        # sector0 | effective | postselected
odd_half_chain = false
weighted = false

[timeevo]
size = 12
rate = 0.0
configs = 20
cycles = 24
"#;

/// 1-based line of `key` inside `[section]`, or of the section header when
/// the key is absent.
pub fn locate(source: &str, section: &str, key: &str) -> usize {
    let mut in_section = false;
    let mut header_line = 0;
    for (i, raw) in source.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('[') {
            in_section = line.trim_matches(|c| c == '[' || c == ']').trim() == section;
            if in_section {
                header_line = i + 1;
            }
            continue;
        }
        if in_section {
            if let Some((k, _)) = line.split_once('=') {
                if k.trim() == key {
                    return i + 1;
                }
            }
        }
    }
    header_line
}

fn line_of_offset(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].matches('\n').count() + 1
}

impl ExperimentConfig {
    pub fn parse(source: &str, path: &Path) -> CliResult<Self> {
        let config: ExperimentConfig = toml::from_str(source).map_err(|e| CliError::Config {
            path: path.to_path_buf(),
            line: e.span().map(|s| line_of_offset(source, s.start)).unwrap_or(0),
            message: e.message().trim().to_string(),
        })?;
        config.validate(source, path)?;
        Ok(config)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let source = std::fs::read_to_string(path).at(path)?;
        Self::parse(&source, path)
    }

    pub fn validate(&self, source: &str, path: &Path) -> CliResult<()> {
        let fail = |section: &str, key: &str, message: String| -> CliResult<()> {
            Err(CliError::Config {
                path: path.to_path_buf(),
                line: locate(source, section, key),
                message: format!("{section}.{key}: {message}"),
            })
        };
        let s = &self.system;
        if self.experiment.name.trim().is_empty() || self.experiment.name.contains(['/', '\\']) {
            return fail("experiment", "name", "must be a non-empty plain directory name".into());
        }
        if s.sizes.is_empty() {
            return fail("system", "sizes", "at least one size is required".into());
        }
        for &l in &s.sizes {
            if l < 4 || l % 2 != 0 || l > DEFAULT_MAX_QUBITS {
                return fail("system", "sizes", format!("size {l} must be even and within 4..={DEFAULT_MAX_QUBITS}"));
            }
        }
        if s.rates.is_empty() {
            return fail("system", "rates", "at least one rate is required".into());
        }
        for &p in &s.rates {
            if !(0.0..=1.0).contains(&p) {
                return fail("system", "rates", format!("rate {p} outside [0, 1]"));
            }
        }
        if s.rates.windows(2).any(|w| !(w[1] > w[0])) {
            return fail("system", "rates", "rates must be strictly increasing".into());
        }
        if s.cycles_per_site == 0 {
            return fail("system", "cycles_per_site", "must be at least 1".into());
        }
        if s.burn_in_per_site > s.cycles_per_site {
            return fail("system", "burn_in_per_site", "burn-in longer than the circuit".into());
        }
        if s.subsystem_lengths.contains(&0) {
            return fail("system", "subsystem_lengths", "lengths start at 1".into());
        }
        if self.targets.count == 0 {
            return fail("targets", "count", "need at least one target".into());
        }
        if self.steering.runs_per_target == 0 {
            return fail("steering", "runs_per_target", "need at least one run".into());
        }
        let a = &self.analysis;
        if a.cv_j % 2 != 1 {
            return fail("analysis", "cv_j", format!("{} must be odd", a.cv_j));
        }
        if a.cv_even != 0 && (a.cv_even % 2 != 0 || a.cv_even < a.cv_j + 2) {
            return fail("analysis", "cv_even", format!("{} must be even and at least cv_j + 2", a.cv_even));
        }
        if !(a.nu > 0.0) {
            return fail("analysis", "nu", "must be positive".into());
        }
        if !(a.a > 0.0) {
            return fail("analysis", "a", "must be positive".into());
        }
        if !(a.window > 0.0) {
            return fail("analysis", "window", "must be positive".into());
        }
        if a.samples < 2 {
            return fail("analysis", "samples", "need at least two points".into());
        }
        for (key, g) in [("p_c_grid", a.p_c_grid), ("nu_grid", a.nu_grid)] {
            if !(g[2] > 0.0 && g[1] >= g[0]) {
                return fail("analysis", key, "expected [start, end, step] with end >= start and step > 0".into());
            }
        }
        let t = &self.timeevo;
        if t.size < 4 || t.size % 4 != 0 || t.size > DEFAULT_MAX_QUBITS {
            return fail("timeevo", "size", format!("{} must be a multiple of 4 within 4..={DEFAULT_MAX_QUBITS}", t.size));
        }
        if !(0.0..=1.0).contains(&t.rate) {
            return fail("timeevo", "rate", format!("rate {} outside [0, 1]", t.rate));
        }
        if t.configs == 0 || t.cycles == 0 {
            return fail("timeevo", "configs", "configs and cycles must be positive".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, first 16 hex digits.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(serde_json::to_vec(self).expect("config serializes"));
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn experiment_dir(&self) -> PathBuf {
        self.experiment.output.join(&self.experiment.name)
    }
}
