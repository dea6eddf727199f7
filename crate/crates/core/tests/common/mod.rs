//! Random states shared by the property and acceptance suites.

#![allow(dead_code)]

use mipt_core::quantum::{GateParams, StateVector};
use mipt_core::rng::SeedStreams;
use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Haar-like random state on `num_qubits` qubits.
pub fn random_state(num_qubits: usize, seed: u64) -> StateVector<f64> {
    let mut rng = SeedStreams::new(seed).stream("state");
    let amps = (0..1usize << num_qubits)
        .map(|_| Complex::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
        .collect();
    StateVector::from_amplitudes(num_qubits, amps).unwrap()
}

/// Néel state scrambled by random gates: a generic charge-0 state.
pub fn random_sector_state(num_qubits: usize, seed: u64) -> StateVector<f64> {
    let mut rng = SeedStreams::new(seed).stream("gates");
    let mut s = StateVector::neel(num_qubits).unwrap();
    for _ in 0..4 * num_qubits {
        let n = rng.random_range(0..num_qubits - 1);
        s.apply_gate(&GateParams::sample(&mut rng).matrix(), n).unwrap();
    }
    s
}

/// The state with qubit order reversed, so the complement of a block
/// becomes the left block.
pub fn mirrored(s: &StateVector<f64>) -> StateVector<f64> {
    let l = s.num_qubits();
    let mut amps = vec![Complex::new(0.0, 0.0); s.dim()];
    for (i, a) in s.amplitudes().iter().enumerate() {
        let j = (0..l).fold(0usize, |acc, n| acc | (((i >> n) & 1) << (l - 1 - n)));
        amps[j] = *a;
    }
    StateVector::from_amplitudes(l, amps).unwrap()
}
