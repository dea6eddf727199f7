//! Dense density-matrix reference for very small chains.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quantum::{block_charge, entropy_from_spectrum, StateVector};
use crate::scalar::Real;

pub const MAX_BRUTE_FORCE_QUBITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BruteForce {
    pub von_neumann: f64,
    pub renyi2: f64,
    pub mean: f64,
    pub variance: f64,
}

/// `|psi><psi|` as a dense matrix.
pub fn density_matrix<R: Real>(state: &StateVector<R>) -> DMatrix<Complex64> {
    let psi = state.to_f64();
    let amps = psi.amplitudes();
    DMatrix::from_fn(amps.len(), amps.len(), |i, j| amps[i] * amps[j].conj())
}

/// Traces out qubits `l_s..L` (the high bits) term by term.
pub fn partial_trace(rho: &DMatrix<Complex64>, num_qubits: usize, l_s: usize) -> DMatrix<Complex64> {
    let (da, db) = (1usize << l_s, 1usize << (num_qubits - l_s));
    DMatrix::from_fn(da, da, |a, a2| (0..db).map(|b| rho[(a | (b << l_s), a2 | (b << l_s))]).sum())
}

/// Entropies and `Z_{l_s}` moments with no use of the Schmidt decomposition.
pub fn brute_force_reference<R: Real>(state: &StateVector<R>, l_s: usize) -> Result<BruteForce> {
    let l = state.num_qubits();
    if l > MAX_BRUTE_FORCE_QUBITS {
        return invalid(format!("brute force limited to {MAX_BRUTE_FORCE_QUBITS} qubits, got {l}"));
    }
    if l_s == 0 || l_s >= l {
        return invalid(format!("subsystem length {l_s} outside 1..{l}"));
    }
    let rho = density_matrix(state);
    let reduced = partial_trace(&rho, l, l_s);
    let eigen: Vec<f64> = reduced.symmetric_eigenvalues().iter().map(|v| v.max(0.0)).collect();

    let dim = 1usize << l;
    let z = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j { Complex64::new(block_charge(i, l_s) as f64, 0.0) } else { Complex64::new(0.0, 0.0) }
    });
    let rz = &rho * &z;
    let mean = rz.trace().re;
    let second = (&rz * &z).trace().re;
    Ok(BruteForce {
        von_neumann: entropy_from_spectrum(&eigen, 1.0)?,
        renyi2: entropy_from_spectrum(&eigen, 2.0)?,
        mean,
        variance: second - mean * mean,
    })
}
