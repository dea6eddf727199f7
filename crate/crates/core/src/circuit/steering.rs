//! Steered runs: replay a target's circuit, sample each outcome by the Born
//! rule, and apply Pauli-X whenever it disagrees with the target's outcome.
//! Every run ends with a Z readout of all qubits.

use std::io::{BufRead, Write};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::realization::CircuitRealization;
use super::trajectory::{CompiledCircuit, TargetRecord};
use crate::error::{invalid, Error, Result};
use crate::quantum::{block_charge, Outcome, StateVector};
use crate::rng::SeedStreams;
use crate::scalar::Real;

/// One steered run observed in the charge basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShotRecord {
    pub run: usize,
    pub num_qubits: usize,
    /// Bit `n` is the readout of qubit `n` (0 = up).
    pub readout: u32,
    pub total_charge: i32,
    /// Pauli-X corrections applied during the run.
    pub flips: u32,
}

impl ShotRecord {
    pub fn new(run: usize, num_qubits: usize, readout: u32, flips: u32) -> Self {
        Self {
            run,
            num_qubits,
            readout,
            total_charge: block_charge(readout as usize, num_qubits),
            flips,
        }
    }

    /// `z_{l_s}` of the readout.
    pub fn subsystem_charge(&self, l_s: usize) -> i32 {
        block_charge(self.readout as usize, l_s)
    }

    /// Readout as a bit string, qubit 0 leftmost.
    pub fn readout_string(&self) -> String {
        (0..self.num_qubits)
            .map(|n| if (self.readout >> n) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&ShotLine::from(self)).expect("shot serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let raw: ShotLine = serde_json::from_str(line)?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct ShotLine {
    run: usize,
    readout: String,
    zl: i32,
    flips: u32,
}

impl From<&ShotRecord> for ShotLine {
    fn from(s: &ShotRecord) -> Self {
        Self { run: s.run, readout: s.readout_string(), zl: s.total_charge, flips: s.flips }
    }
}

impl TryFrom<ShotLine> for ShotRecord {
    type Error = Error;

    fn try_from(line: ShotLine) -> Result<Self> {
        let num_qubits = line.readout.len();
        if num_qubits == 0 || num_qubits > 32 {
            return invalid(format!("readout of length {num_qubits}"));
        }
        let mut readout = 0u32;
        for (n, c) in line.readout.chars().enumerate() {
            match c {
                '0' => {}
                '1' => readout |= 1 << n,
                other => return invalid(format!("readout contains {other:?}")),
            }
        }
        let shot = ShotRecord::new(line.run, num_qubits, readout, line.flips);
        if shot.total_charge != line.zl {
            return invalid(format!(
                "zl {} disagrees with readout charge {}",
                line.zl, shot.total_charge
            ));
        }
        Ok(shot)
    }
}

pub fn write_shots<W: Write>(mut out: W, shots: &[ShotRecord]) -> Result<()> {
    for s in shots {
        writeln!(out, "{}", s.to_json_line())?;
    }
    Ok(())
}

pub fn read_shots<B: BufRead>(input: B) -> Result<Vec<ShotRecord>> {
    input
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| ShotRecord::from_json_line(&l?))
        .collect()
}

/// How in-circuit outcomes are produced during a steered run.
#[derive(Clone, Copy, Debug)]
pub enum OutcomePolicy<'a> {
    Born,
    /// Project onto the given outcomes instead of sampling.
    Forced(&'a [Outcome]),
}

/// A steered run together with the state right before the terminal readout.
#[derive(Clone, Debug)]
pub struct SteeredRun<R> {
    pub shot: ShotRecord,
    pub pre_readout: StateVector<R>,
}

fn check_target<R>(realization: &CircuitRealization, target: &TargetRecord<R>) -> Result<()> {
    if target.key != realization.key() {
        return invalid("target was recorded on a different circuit realization");
    }
    if target.outcomes.len() != realization.num_measurements() {
        return invalid(format!(
            "target has {} outcomes but the realization schedules {} measurements",
            target.outcomes.len(),
            realization.num_measurements()
        ));
    }
    Ok(())
}

/// Instrumented steered run. `observe(event, qubit, state)` sees the state
/// right after each measurement and its optional correction.
pub fn steer_with<R: Real, G: Rng + ?Sized>(
    compiled: &CompiledCircuit<'_, R>,
    target: &TargetRecord<R>,
    run_index: usize,
    rng: &mut G,
    policy: OutcomePolicy<'_>,
    mut observe: impl FnMut(usize, usize, &StateVector<R>),
) -> Result<SteeredRun<R>> {
    let realization = compiled.realization();
    check_target(realization, target)?;
    if let OutcomePolicy::Forced(forced) = policy {
        if forced.len() != target.outcomes.len() {
            return invalid("forced outcome list has the wrong length");
        }
    }
    let l = realization.num_qubits();
    let mut state = StateVector::<R>::neel(l)?;
    let mut flips = 0u32;
    compiled.evolve(
        &mut state,
        |event, q, s| {
            let got = match policy {
                OutcomePolicy::Born => s.measure(q, rng.random::<f64>())?,
                OutcomePolicy::Forced(forced) => {
                    s.project(q, forced[event])?;
                    forced[event]
                }
            };
            if got != target.outcomes[event] {
                s.apply_pauli_x(q)?;
                flips += 1;
            }
            observe(event, q, s);
            Ok(())
        },
        |_, _| Ok(()),
    )?;
    let pre_readout = state.clone();
    let mut readout = 0u32;
    for n in 0..l {
        if state.measure(n, rng.random::<f64>())? == Outcome::Down {
            readout |= 1 << n;
        }
    }
    Ok(SteeredRun { shot: ShotRecord::new(run_index, l, readout, flips), pre_readout })
}

/// One steered run drawing from the "outcomes/run_{run_index}" stream of
/// `master_seed`.
pub fn run_steered<R: Real>(
    compiled: &CompiledCircuit<'_, R>,
    target: &TargetRecord<R>,
    master_seed: u64,
    run_index: usize,
) -> Result<ShotRecord> {
    let mut rng = SeedStreams::new(master_seed).stream(&SeedStreams::run_label(run_index));
    Ok(steer_with(compiled, target, run_index, &mut rng, OutcomePolicy::Born, |_, _, _| {})?.shot)
}

/// `num_runs` independent steered runs, in run order. Output does not depend
/// on the rayon pool size.
pub fn batch_steer<R: Real>(
    realization: &CircuitRealization,
    target: &TargetRecord<R>,
    num_runs: usize,
    master_seed: u64,
) -> Result<Vec<ShotRecord>> {
    if num_runs == 0 {
        return invalid("need at least one steered run");
    }
    check_target(realization, target)?;
    let compiled = CompiledCircuit::<R>::new(realization);
    (0..num_runs)
        .into_par_iter()
        .map(|i| run_steered(&compiled, target, master_seed, i))
        .collect()
}
