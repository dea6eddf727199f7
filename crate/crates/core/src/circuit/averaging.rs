//! Exact (postselected) reference averages over target trajectories.
//!
//! Trajectory averaging takes each target's observables once, after the
//! final cycle. Time averaging additionally averages every completed cycle
//! from `burn_in` to the end of each target before averaging over targets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::realization::CircuitRealization;
use super::trajectory::{run_target, CycleObservables, SeriesSpec, TargetOptions, TargetRecord};
use crate::error::{invalid, Result};
use crate::rng::SeedStreams;
use crate::scalar::Real;
use crate::stats::{mean, Estimate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AveragingMode {
    Trajectory,
    Time,
}

/// Circuit seed and outcome seed of target `index` under `master_seed`.
pub fn target_seeds(master_seed: u64, index: usize) -> (u64, u64) {
    let s = SeedStreams::new(master_seed);
    (s.derive_seed(&format!("target/{index}/circuit")), s.derive_seed(&format!("target/{index}/outcomes")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSpec {
    pub num_qubits: usize,
    pub rate: f64,
    pub num_cycles: usize,
    pub burn_in: usize,
    pub num_targets: usize,
    pub seed: u64,
    pub subsystem_lengths: Vec<usize>,
    pub entropies: bool,
    pub mode: AveragingMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEstimate {
    pub l_s: usize,
    pub variance: Estimate,
    pub von_neumann: Option<Estimate>,
    pub renyi2: Option<Estimate>,
}

impl ReferenceSpec {
    pub fn series(&self) -> SeriesSpec {
        SeriesSpec {
            subsystem_lengths: self.subsystem_lengths.clone(),
            entropies: self.entropies,
            first_cycle: match self.mode {
                AveragingMode::Trajectory => self.num_cycles,
                AveragingMode::Time => self.burn_in.min(self.num_cycles),
            },
        }
    }

    /// Realization of target `index`.
    pub fn realization(&self, index: usize) -> Result<CircuitRealization> {
        let (circuit_seed, _) = target_seeds(self.seed, index);
        CircuitRealization::sample(self.num_qubits, self.rate, self.num_cycles, self.burn_in, circuit_seed)
    }

    /// Runs every target (in parallel) with the recording options of this
    /// spec.
    pub fn run_targets<R: Real>(&self, keep_final_state: bool) -> Result<Vec<TargetRecord<R>>> {
        if self.num_targets == 0 {
            return invalid("need at least one target");
        }
        let options = TargetOptions { keep_final_state, series: Some(self.series()) };
        (0..self.num_targets)
            .into_par_iter()
            .map(|j| {
                let realization = self.realization(j)?;
                let (_, outcome_seed) = target_seeds(self.seed, j);
                run_target(&realization, outcome_seed, &options)
            })
            .collect()
    }

    pub fn run<R: Real>(&self) -> Result<Vec<ReferenceEstimate>> {
        let targets = self.run_targets::<R>(false)?;
        Ok(summarize(&targets.iter().map(|t| t.series.as_slice()).collect::<Vec<_>>(), &self.subsystem_lengths))
    }
}

/// Per-target time average of each observable, then mean and standard
/// error over targets (over time samples when there is a single target).
pub fn summarize(per_target: &[&[CycleObservables]], lengths: &[usize]) -> Vec<ReferenceEstimate> {
    lengths
        .iter()
        .map(|&l_s| {
            let collect = |f: &dyn Fn(&CycleObservables) -> Option<f64>| -> Option<Estimate> {
                if per_target.len() == 1 {
                    let v: Vec<f64> = per_target[0].iter().filter_map(f).collect();
                    return Estimate::from_samples(&v);
                }
                let v: Vec<f64> = per_target
                    .iter()
                    .filter_map(|series| {
                        let samples: Vec<f64> = series.iter().filter_map(f).collect();
                        (!samples.is_empty()).then(|| mean(&samples))
                    })
                    .collect();
                Estimate::from_samples(&v)
            };
            ReferenceEstimate {
                l_s,
                variance: collect(&|c| c.get(l_s).map(|s| s.variance)).unwrap_or(Estimate {
                    mean: f64::NAN,
                    stderr: f64::NAN,
                    count: 0,
                }),
                von_neumann: collect(&|c| c.get(l_s).and_then(|s| s.von_neumann)),
                renyi2: collect(&|c| c.get(l_s).and_then(|s| s.renyi2)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_distinct_per_target() {
        assert_ne!(target_seeds(1, 0), target_seeds(1, 1));
        assert_ne!(target_seeds(1, 0).0, target_seeds(1, 0).1);
    }

    #[test]
    fn product_limit_at_full_measurement() {
        let spec = ReferenceSpec {
            num_qubits: 6,
            rate: 1.0,
            num_cycles: 3,
            burn_in: 1,
            num_targets: 4,
            seed: 2,
            subsystem_lengths: vec![2, 3],
            entropies: true,
            mode: AveragingMode::Time,
        };
        for r in spec.run::<f64>().unwrap() {
            assert!(r.variance.mean.abs() < 1e-12);
            assert!(r.von_neumann.unwrap().mean.abs() < 1e-12);
        }
    }
}
