//! `simulate`: target trajectories with exact per-cycle references.

use std::io::{BufRead, Write};
use std::time::Instant;

use mipt_core::circuit::averaging::summarize;
use mipt_core::circuit::{
    AveragingMode, CycleObservables, PersistedTarget, ReferenceEstimate, ReferenceSpec, TargetRecord,
};
use mipt_core::estimators::FluctuationCurve;
use mipt_core::rng::SeedStreams;
use serde::{Deserialize, Serialize};

use crate::config::{Averaging, ExperimentConfig};
use crate::error::{CliResult, IoContext};
use crate::layout::{create, open, Layout};

/// Master seed of one system size; shared by every rate so that circuits at
/// neighbouring rates use common random numbers.
pub fn size_seed(config: &ExperimentConfig, num_qubits: usize) -> u64 {
    SeedStreams::new(config.experiment.seed).derive_seed(&format!("size/{num_qubits}"))
}

pub fn reference_spec(config: &ExperimentConfig, num_qubits: usize, rate: f64) -> ReferenceSpec {
    let s = &config.system;
    ReferenceSpec {
        num_qubits,
        rate,
        num_cycles: s.cycles_per_site * num_qubits,
        burn_in: s.burn_in_per_site * num_qubits,
        num_targets: config.targets.count,
        seed: size_seed(config, num_qubits),
        subsystem_lengths: s.lengths_for(num_qubits),
        entropies: true,
        mode: config.targets.averaging.recording_mode(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesLine {
    pub target: usize,
    pub series: Vec<CycleObservables>,
}

/// One row of `reference.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    #[serde(rename = "L")]
    pub num_qubits: usize,
    pub p: f64,
    #[serde(rename = "L_s")]
    pub l_s: usize,
    pub mode: AveragingMode,
    pub variance: f64,
    pub stderr_variance: f64,
    pub von_neumann: Option<f64>,
    pub stderr_von_neumann: Option<f64>,
    pub renyi2: Option<f64>,
    pub stderr_renyi2: Option<f64>,
}

impl ReferenceRow {
    fn new(num_qubits: usize, p: f64, mode: AveragingMode, r: &ReferenceEstimate) -> Self {
        Self {
            num_qubits,
            p,
            l_s: r.l_s,
            mode,
            variance: r.variance.mean,
            stderr_variance: r.variance.stderr,
            von_neumann: r.von_neumann.map(|e| e.mean),
            stderr_von_neumann: r.von_neumann.map(|e| e.stderr),
            renyi2: r.renyi2.map(|e| e.mean),
            stderr_renyi2: r.renyi2.map(|e| e.stderr),
        }
    }
}

/// Reference averages from recorded series under `mode`.
fn references(
    series: &[Vec<CycleObservables>],
    num_cycles: usize,
    lengths: &[usize],
    mode: AveragingMode,
) -> Vec<ReferenceEstimate> {
    match mode {
        AveragingMode::Time => summarize(&series.iter().map(Vec::as_slice).collect::<Vec<_>>(), lengths),
        AveragingMode::Trajectory => {
            let finals: Vec<&[CycleObservables]> = series
                .iter()
                .map(|s| match s.last() {
                    Some(last) if last.cycle == num_cycles => std::slice::from_ref(last),
                    _ => &[],
                })
                .collect();
            summarize(&finals, lengths)
        }
    }
}

fn modes(averaging: Averaging) -> &'static [AveragingMode] {
    match averaging {
        Averaging::Trajectory => &[AveragingMode::Trajectory],
        Averaging::Time => &[AveragingMode::Time],
        Averaging::Both => &[AveragingMode::Trajectory, AveragingMode::Time],
    }
}

pub fn run(config: &ExperimentConfig) -> CliResult<()> {
    let layout = Layout::new(config);
    let mut rows = Vec::new();
    for &l in &config.system.sizes {
        let mut curve = FluctuationCurve::new(l);
        for &p in &config.system.rates {
            let started = Instant::now();
            let spec = reference_spec(config, l, p);
            let targets = spec.run_targets::<f64>(false)?;
            let mut out = create(&layout.targets(l, p))?;
            for t in &targets {
                writeln!(out, "{}", serde_json::to_string(&t.to_persisted())?).at(&layout.targets(l, p))?;
            }
            out.flush().at(&layout.targets(l, p))?;
            let mut out = create(&layout.series(l, p))?;
            for (j, t) in targets.iter().enumerate() {
                let line = SeriesLine { target: j, series: t.series.clone() };
                writeln!(out, "{}", serde_json::to_string(&line)?).at(&layout.series(l, p))?;
            }
            out.flush().at(&layout.series(l, p))?;

            let series: Vec<Vec<CycleObservables>> = targets.into_iter().map(|t| t.series).collect();
            for (k, &mode) in modes(config.targets.averaging).iter().enumerate() {
                let refs = references(&series, spec.num_cycles, &spec.subsystem_lengths, mode);
                for r in &refs {
                    rows.push(ReferenceRow::new(l, p, mode, r));
                    // the first mode listed feeds the fluctuation curve
                    if k == 0 && r.variance.count > 0 {
                        curve.entry(p, r.l_s).postselected = Some(r.variance);
                    }
                }
            }
            eprintln!(
                "simulate L={l} p={p}: {} targets, {:.1}s",
                spec.num_targets,
                started.elapsed().as_secs_f64()
            );
        }
        let path = layout.curve(l);
        let mut out = create(&path)?;
        curve.write_csv(&mut out, layout.provenance(), None, None)?;
        out.flush().at(&path)?;
    }
    let path = layout.file("reference.csv");
    let mut out = create(&path)?;
    writeln!(out, "# {}", layout.provenance()).at(&path)?;
    let mut w = csv::Writer::from_writer(out);
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush().at(&path)?;
    Ok(())
}

pub const SIMULATE_HINT: &str = "run `mipt simulate` with the same config first";

/// Targets persisted by `simulate` for one `(L, p)` point.
pub fn load_targets(layout: &Layout, num_qubits: usize, rate: f64) -> CliResult<Vec<TargetRecord<f64>>> {
    let path = layout.targets(num_qubits, rate);
    let input = open(&path, SIMULATE_HINT)?;
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line.at(&path)?;
        if line.trim().is_empty() {
            continue;
        }
        let persisted: PersistedTarget = serde_json::from_str(&line)?;
        out.push(TargetRecord::from_persisted(persisted));
    }
    Ok(out)
}

/// Rows of `reference.csv`.
pub fn load_references(layout: &Layout) -> CliResult<Vec<ReferenceRow>> {
    let input = open(&layout.file("reference.csv"), SIMULATE_HINT)?;
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    Ok(reader.deserialize().collect::<Result<Vec<ReferenceRow>, _>>()?)
}
