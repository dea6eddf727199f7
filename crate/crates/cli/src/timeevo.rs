//! `timeevo`: half-chain entropy and charge fluctuations per cycle from the
//! Neel and the mirrored zero-charge starts.

use std::io::Write;

use mipt_core::circuit::{run_time_evolution, InitialState};
use mipt_core::rng::SeedStreams;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{CliResult, IoContext};
use crate::layout::{create, Layout};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimeRow {
    pub start: &'static str,
    pub cycle: usize,
    pub s_vn: f64,
    pub stderr_s_vn: f64,
    pub variance: f64,
    pub stderr_variance: f64,
}

pub fn rows(config: &ExperimentConfig) -> CliResult<Vec<TimeRow>> {
    let t = &config.timeevo;
    let seed = SeedStreams::new(config.experiment.seed).derive_seed("timeevo");
    let mut rows = Vec::new();
    for start in [InitialState::Neel, InitialState::Mirrored] {
        let points = run_time_evolution::<f64>(t.size, t.rate, start, t.configs, t.cycles, seed)?;
        rows.extend(points.into_iter().map(|pt| TimeRow {
            start: start.label(),
            cycle: pt.cycle,
            s_vn: pt.von_neumann.mean,
            stderr_s_vn: pt.von_neumann.stderr,
            variance: pt.variance.mean,
            stderr_variance: pt.variance.stderr,
        }));
    }
    Ok(rows)
}

pub fn run(config: &ExperimentConfig) -> CliResult<()> {
    let layout = Layout::new(config);
    let rows = rows(config)?;
    let path = layout.file("timeevo.csv");
    let mut out = create(&path)?;
    writeln!(out, "# {}", layout.provenance()).at(&path)?;
    let mut w = csv::Writer::from_writer(out);
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush().at(&path)?;
    eprintln!("timeevo L={}: {} configurations x {} cycles", config.timeevo.size, config.timeevo.configs, config.timeevo.cycles);
    Ok(())
}
