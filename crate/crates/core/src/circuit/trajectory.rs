//! Target trajectories: Born-rule evolution with recorded outcomes and
//! optional exact observables.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::realization::{CircuitRealization, RealizationKey};
use crate::error::{invalid, Error, Result};
use crate::quantum::{
    entropy_from_spectrum, exact_charge_moments, schmidt_spectrum, GateMatrix, Outcome,
    StateVector,
};
use crate::rng::SeedStreams;
use crate::scalar::Real;

/// Gate matrices of a realization, assembled once per precision.
#[derive(Clone, Debug)]
pub struct CompiledCircuit<'a, R> {
    realization: &'a CircuitRealization,
    gates: Vec<Vec<(usize, GateMatrix<R>)>>,
}

impl<'a, R: Real> CompiledCircuit<'a, R> {
    pub fn new(realization: &'a CircuitRealization) -> Self {
        let l = realization.num_qubits();
        let gates = realization
            .half_cycles()
            .iter()
            .map(|h| h.parity.links(l).zip(&h.gates).map(|(n, g)| (n, g.matrix())).collect())
            .collect();
        Self { realization, gates }
    }

    pub fn realization(&self) -> &'a CircuitRealization {
        self.realization
    }

    /// Runs every half-cycle on `state`. `on_measure(event, qubit, state)`
    /// performs each scheduled measurement (events are numbered in execution
    /// order); `on_cycle(t, state)` sees the state after `t` completed
    /// cycles, starting with `t = 0`.
    pub fn evolve(
        &self,
        state: &mut StateVector<R>,
        mut on_measure: impl FnMut(usize, usize, &mut StateVector<R>) -> Result<()>,
        mut on_cycle: impl FnMut(usize, &StateVector<R>) -> Result<()>,
    ) -> Result<()> {
        if state.num_qubits() != self.realization.num_qubits() {
            return invalid("state and realization have different chain lengths");
        }
        on_cycle(0, state)?;
        let mut event = 0;
        for (h, (half, gates)) in
            self.realization.half_cycles().iter().zip(&self.gates).enumerate()
        {
            for (n, g) in gates {
                state.apply_gate(g, *n)?;
            }
            for &q in &half.measured {
                on_measure(event, q, state)?;
                event += 1;
            }
            if h % 2 == 1 {
                let drift = (state.norm_sqr() - 1.0).abs();
                debug_assert!(drift < R::drift_tolerance(), "norm drift {drift:e}");
                on_cycle(h / 2 + 1, state)?;
            }
        }
        Ok(())
    }
}

/// Exact observables of one subsystem at one time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsystemObservables {
    pub l_s: usize,
    pub mean: f64,
    pub variance: f64,
    pub von_neumann: Option<f64>,
    pub renyi2: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleObservables {
    /// Completed full cycles.
    pub cycle: usize,
    pub subsystems: Vec<SubsystemObservables>,
}

impl CycleObservables {
    pub fn get(&self, l_s: usize) -> Option<&SubsystemObservables> {
        self.subsystems.iter().find(|s| s.l_s == l_s)
    }
}

/// Which exact observables to record and when.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub subsystem_lengths: Vec<usize>,
    pub entropies: bool,
    /// Record after every completed cycle `t >= first_cycle`.
    pub first_cycle: usize,
}

impl SeriesSpec {
    pub fn observe<R: Real>(&self, cycle: usize, state: &StateVector<R>) -> Result<CycleObservables> {
        let subsystems = self
            .subsystem_lengths
            .iter()
            .map(|&l_s| {
                let moments = exact_charge_moments(state, l_s)?;
                let (von_neumann, renyi2) = if self.entropies {
                    let spectrum = schmidt_spectrum(state, l_s)?;
                    (
                        Some(entropy_from_spectrum(&spectrum, 1.0)?),
                        Some(entropy_from_spectrum(&spectrum, 2.0)?),
                    )
                } else {
                    (None, None)
                };
                Ok(SubsystemObservables {
                    l_s,
                    mean: moments.mean,
                    variance: moments.variance,
                    von_neumann,
                    renyi2,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycleObservables { cycle, subsystems })
    }
}

#[derive(Clone, Debug, Default)]
pub struct TargetOptions {
    pub keep_final_state: bool,
    pub series: Option<SeriesSpec>,
}

/// A target trajectory: its circuit, the recorded outcomes `m`, and the
/// optional exact references.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetRecord<R> {
    pub key: RealizationKey,
    pub outcome_seed: u64,
    pub outcomes: Vec<Outcome>,
    pub final_state: Option<StateVector<R>>,
    pub series: Vec<CycleObservables>,
}

/// On-disk form of a target: enough to regenerate the circuit and replay `m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistedTarget {
    pub seed: u64,
    pub p: f64,
    #[serde(rename = "L")]
    pub num_qubits: usize,
    #[serde(rename = "T")]
    pub num_cycles: usize,
    pub burn_in: usize,
    pub outcome_seed: u64,
    pub outcomes: Vec<Outcome>,
}

impl<R: Real> TargetRecord<R> {
    pub fn to_persisted(&self) -> PersistedTarget {
        PersistedTarget {
            seed: self.key.seed,
            p: self.key.rate,
            num_qubits: self.key.num_qubits,
            num_cycles: self.key.num_cycles,
            burn_in: self.key.burn_in,
            outcome_seed: self.outcome_seed,
            outcomes: self.outcomes.clone(),
        }
    }

    pub fn from_persisted(p: PersistedTarget) -> Self {
        Self {
            key: RealizationKey {
                num_qubits: p.num_qubits,
                rate: p.p,
                num_cycles: p.num_cycles,
                burn_in: p.burn_in,
                seed: p.seed,
            },
            outcome_seed: p.outcome_seed,
            outcomes: p.outcomes,
            final_state: None,
            series: Vec::new(),
        }
    }

    /// Observables recorded after the last cycle, if any.
    pub fn final_observables(&self) -> Option<&CycleObservables> {
        self.series.last().filter(|c| c.cycle == self.key.num_cycles)
    }
}

/// Runs a target trajectory from the Neel state with outcomes drawn from the
/// "outcomes/target" stream of `outcome_seed`.
pub fn run_target<R: Real>(
    realization: &CircuitRealization,
    outcome_seed: u64,
    options: &TargetOptions,
) -> Result<TargetRecord<R>> {
    let initial = StateVector::neel(realization.num_qubits())?;
    run_target_from(realization, initial, outcome_seed, options)
}

/// As [`run_target`], from an arbitrary initial state.
pub fn run_target_from<R: Real>(
    realization: &CircuitRealization,
    mut state: StateVector<R>,
    outcome_seed: u64,
    options: &TargetOptions,
) -> Result<TargetRecord<R>> {
    let compiled = CompiledCircuit::<R>::new(realization);
    let mut rng = SeedStreams::new(outcome_seed).stream("outcomes/target");
    let mut outcomes = Vec::with_capacity(realization.num_measurements());
    let mut series = Vec::new();
    compiled.evolve(
        &mut state,
        |_, q, s| {
            outcomes.push(s.measure(q, rng.random::<f64>())?);
            Ok(())
        },
        |t, s| {
            if let Some(spec) = &options.series {
                if t >= spec.first_cycle {
                    series.push(spec.observe(t, s)?);
                }
            }
            Ok(())
        },
    )?;
    if outcomes.len() != realization.num_measurements() {
        return Err(Error::AnalysisFailed("measurement count mismatch".into()));
    }
    Ok(TargetRecord {
        key: realization.key(),
        outcome_seed,
        outcomes,
        final_state: options.keep_final_state.then_some(state),
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{entanglement_entropy, total_charge_distribution};

    #[test]
    fn unitary_evolution_without_measurements() {
        let r = CircuitRealization::sample(6, 0.0, 3, 0, 5).unwrap();
        let t = run_target::<f64>(&r, 1, &TargetOptions { keep_final_state: true, series: None })
            .unwrap();
        assert!(t.outcomes.is_empty());
        let s = t.final_state.unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(entanglement_entropy(&s, 3, 1.0).unwrap() > 0.1);
    }

    #[test]
    fn full_measurement_layers_leave_product_states() {
        let r = CircuitRealization::sample(8, 1.0, 4, 0, 5).unwrap();
        let spec = SeriesSpec { subsystem_lengths: vec![4], entropies: true, first_cycle: 1 };
        let t = run_target::<f64>(
            &r,
            2,
            &TargetOptions { keep_final_state: true, series: Some(spec) },
        )
        .unwrap();
        assert_eq!(t.outcomes.len(), 64);
        assert_eq!(t.series.len(), 4);
        for c in &t.series {
            assert!(c.subsystems[0].von_neumann.unwrap().abs() < 1e-12);
            assert!(c.subsystems[0].variance.abs() < 1e-12);
        }
        let total = total_charge_distribution(t.final_state.as_ref().unwrap());
        assert_eq!(total.keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn persisted_round_trip() {
        let r = CircuitRealization::sample(6, 0.4, 3, 1, 8).unwrap();
        let t = run_target::<f64>(&r, 3, &TargetOptions::default()).unwrap();
        let json = serde_json::to_string(&t.to_persisted()).unwrap();
        assert!(json.contains("\"L\":6") && json.contains("\"T\":3"));
        let back = TargetRecord::<f64>::from_persisted(serde_json::from_str(&json).unwrap());
        assert_eq!(back, t);
    }
}
