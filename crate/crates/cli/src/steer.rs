//! `steer`: steered ensembles for every persisted target, sector statistics,
//! and the sector-0 fluctuation curve.

use std::io::Write;
use std::time::Instant;

use mipt_core::circuit::{batch_steer, write_shots, CircuitRealization};
use mipt_core::estimators::{average_ensembles, sector_stats, EnsembleSummary, FluctuationCurve, SectorStats};
use mipt_core::rng::SeedStreams;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult, IoContext};
use crate::layout::{create, open, Layout};
use crate::simulate::{load_targets, size_seed, SIMULATE_HINT};

#[derive(Serialize)]
struct TargetStats {
    target: usize,
    success_fraction: f64,
    ensemble: EnsembleSummary,
    sectors: Vec<SectorStats>,
}

/// Seed of the steered runs of target `index`.
pub fn steer_seed(config: &ExperimentConfig, num_qubits: usize, index: usize) -> u64 {
    SeedStreams::new(size_seed(config, num_qubits)).derive_seed(&format!("steer/{index}"))
}

pub fn run(config: &ExperimentConfig) -> CliResult<()> {
    let layout = Layout::new(config);
    let runs = config.steering.runs_per_target;
    let unbiased = config.steering.unbiased;
    for &l in &config.system.sizes {
        let curve_path = layout.curve(l);
        let mut curves = FluctuationCurve::read_csv(open(&curve_path, SIMULATE_HINT)?)?;
        let mut curve = curves.pop().unwrap_or_else(|| FluctuationCurve::new(l));
        let lengths = config.system.lengths_for(l);
        for &p in &config.system.rates {
            let started = Instant::now();
            let targets = load_targets(&layout, l, p)?;
            let mut stats = Vec::with_capacity(targets.len());
            let mut ensembles = Vec::with_capacity(targets.len());
            for (j, target) in targets.iter().enumerate() {
                let realization = CircuitRealization::from_key(target.key)?;
                let shots = batch_steer(&realization, target, runs, steer_seed(config, l, j))?;
                let path = layout.shots(l, p, j);
                let mut out = create(&path)?;
                write_shots(&mut out, &shots)?;
                out.flush().at(&path)?;
                let ensemble = EnsembleSummary::from_shots(&shots, &lengths, unbiased);
                stats.push(TargetStats {
                    target: j,
                    success_fraction: ensemble.success_fraction(),
                    ensemble: ensemble.clone(),
                    sectors: sector_stats(&shots, &lengths, unbiased),
                });
                ensembles.push(ensemble);
            }
            let path = layout.sector_stats(l, p);
            let mut out = create(&path)?;
            serde_json::to_writer_pretty(&mut out, &stats)?;
            out.flush().at(&path)?;

            let averaged = average_ensembles(&ensembles).map_err(|e| match CliError::from(e) {
                CliError::InsufficientData(msg) => CliError::InsufficientData(format!(
                    "L={l} p={p}: no target has two sector-0 shots ({msg}); raise steering.runs_per_target"
                )),
                other => other,
            })?;
            for (l_s, raw, sector0) in averaged {
                let pt = curve.entry(p, l_s);
                pt.raw = raw;
                pt.sector0 = Some(sector0);
            }
            let fraction = stats.iter().map(|s| s.success_fraction).sum::<f64>() / stats.len().max(1) as f64;
            eprintln!(
                "steer L={l} p={p}: {} targets x {runs} runs, sector-0 fraction {fraction:.3}, {:.1}s",
                targets.len(),
                started.elapsed().as_secs_f64()
            );
        }
        let mut out = create(&curve_path)?;
        curve.write_csv(&mut out, layout.provenance(), None, None)?;
        out.flush().at(&curve_path)?;
    }
    Ok(())
}
