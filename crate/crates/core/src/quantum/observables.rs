//! Exact observables of a pure state: Schmidt spectra, entanglement
//! entropies, and charge moments/distributions.
//!
//! The subsystem is always the contiguous left block of qubits
//! `0..l_s`, i.e. the low `l_s` bits of a basis index.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::{block_charge, StateVector};
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Eigenvalues below this are dropped from `x ln x`.
pub const SPECTRUM_CUTOFF: f64 = 1e-12;

/// Weights below this are omitted from charge distributions.
pub const SECTOR_CUTOFF: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargeMoments {
    pub mean: f64,
    pub variance: f64,
}

fn check_cut(num_qubits: usize, l_s: usize) -> Result<()> {
    if l_s == 0 || l_s >= num_qubits {
        return invalid(format!("subsystem length must lie in 1..{num_qubits}, got {l_s}"));
    }
    Ok(())
}

/// Eigenvalues of the reduced density matrix of qubits `0..l_s`, sorted
/// descending.
///
/// States confined to one total-charge sector take a block-diagonal path:
/// the reduced density matrix commutes with the subsystem charge, so each
/// subsystem-charge block is diagonalized separately. Other states go
/// through the full Gram matrix of the smaller side.
pub fn schmidt_spectrum<R: Real>(state: &StateVector<R>, l_s: usize) -> Result<Vec<f64>> {
    check_cut(state.num_qubits(), l_s)?;
    let state = state.to_f64();
    let mut spectrum = match single_sector(&state) {
        Some(total) => sector_spectrum(&state, l_s, total),
        None => dense_spectrum(&state, l_s),
    };
    spectrum.sort_by(|a, b| b.total_cmp(a));
    Ok(spectrum)
}

/// Spectrum through the full `min(dA, dB)` Gram matrix, ignoring charge
/// structure.
pub fn dense_spectrum(state: &StateVector<f64>, l_s: usize) -> Vec<f64> {
    let amps = state.amplitudes();
    let dim_a = 1usize << l_s;
    let dim_b = 1usize << (state.num_qubits() - l_s);
    let m = DMatrix::from_fn(dim_a, dim_b, |a, b| amps[a | (b << l_s)]);
    gram_eigenvalues(&m)
}

fn gram_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let gram = if m.nrows() <= m.ncols() { m * m.adjoint() } else { m.adjoint() * m };
    if gram.nrows() == 1 {
        return vec![gram[(0, 0)].re];
    }
    gram.symmetric_eigenvalues().iter().copied().collect()
}

fn single_sector(state: &StateVector<f64>) -> Option<i32> {
    let mut found = None;
    let n = state.num_qubits();
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.norm_sqr() > 0.0 {
            let q = block_charge(i, n);
            match found {
                None => found = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
    }
    found
}

fn sector_spectrum(state: &StateVector<f64>, l_s: usize, total: i32) -> Vec<f64> {
    let n = state.num_qubits();
    let l_b = n - l_s;
    let amps = state.amplitudes();
    let mut out = Vec::new();
    for down_a in 0..=l_s {
        let q_a = l_s as i32 - 2 * down_a as i32;
        let q_b = total - q_a;
        // q_b = l_b - 2 down_b
        let twice_down_b = l_b as i32 - q_b;
        if twice_down_b < 0 || twice_down_b % 2 != 0 || twice_down_b / 2 > l_b as i32 {
            continue;
        }
        let down_b = (twice_down_b / 2) as u32;
        let rows: Vec<usize> =
            (0..1usize << l_s).filter(|a| a.count_ones() == down_a as u32).collect();
        let cols: Vec<usize> = (0..1usize << l_b).filter(|b| b.count_ones() == down_b).collect();
        let m = DMatrix::from_fn(rows.len(), cols.len(), |r, c| amps[rows[r] | (cols[c] << l_s)]);
        out.extend(gram_eigenvalues(&m));
    }
    out
}

/// Von Neumann (`renyi_index == 1`) or Renyi-`n` entropy, in nats, of a
/// normalized spectrum.
pub fn entropy_from_spectrum(spectrum: &[f64], renyi_index: f64) -> Result<f64> {
    if !(renyi_index >= 1.0) || !renyi_index.is_finite() {
        return invalid(format!("Renyi index must be a finite value >= 1, got {renyi_index}"));
    }
    let kept = spectrum.iter().copied().filter(|&l| l > SPECTRUM_CUTOFF);
    if renyi_index == 1.0 {
        Ok(kept.map(|l| -l * l.ln()).sum::<f64>().max(0.0))
    } else {
        let power_sum: f64 = kept.map(|l| l.powf(renyi_index)).sum();
        Ok((power_sum.ln() / (1.0 - renyi_index)).max(0.0))
    }
}

pub fn entanglement_entropy<R: Real>(
    state: &StateVector<R>,
    l_s: usize,
    renyi_index: f64,
) -> Result<f64> {
    entropy_from_spectrum(&schmidt_spectrum(state, l_s)?, renyi_index)
}

/// Mean and variance of `Z_{l_s}` from the diagonal weights.
pub fn exact_charge_moments<R: Real>(state: &StateVector<R>, l_s: usize) -> Result<ChargeMoments> {
    check_cut(state.num_qubits(), l_s)?;
    let (mut m1, mut m2) = (0.0, 0.0);
    for (i, a) in state.amplitudes().iter().enumerate() {
        let w = a.norm_sqr().to_f64().unwrap();
        let z = block_charge(i, l_s) as f64;
        m1 += w * z;
        m2 += w * z * z;
    }
    Ok(ChargeMoments { mean: m1, variance: (m2 - m1 * m1).max(0.0) })
}

/// Probability of each total charge `Z_L` (even offsets from `L`), with
/// negligible sectors omitted.
pub fn total_charge_distribution<R: Real>(state: &StateVector<R>) -> BTreeMap<i32, f64> {
    charge_histogram(state, state.num_qubits())
}

/// Exact distribution of the subsystem charge `z_{l_s}` over the full
/// support `{-l_s, -l_s + 2, ..., l_s}`.
pub fn subsystem_charge_distribution<R: Real>(
    state: &StateVector<R>,
    l_s: usize,
) -> Result<BTreeMap<i32, f64>> {
    check_cut(state.num_qubits(), l_s)?;
    let mut dist: BTreeMap<i32, f64> =
        (0..=l_s).map(|k| (l_s as i32 - 2 * k as i32, 0.0)).collect();
    for (i, a) in state.amplitudes().iter().enumerate() {
        *dist.get_mut(&block_charge(i, l_s)).expect("charge in range") +=
            a.norm_sqr().to_f64().unwrap();
    }
    Ok(dist)
}

fn charge_histogram<R: Real>(state: &StateVector<R>, len: usize) -> BTreeMap<i32, f64> {
    let mut dist = BTreeMap::new();
    for (i, a) in state.amplitudes().iter().enumerate() {
        *dist.entry(block_charge(i, len)).or_insert(0.0) += a.norm_sqr().to_f64().unwrap();
    }
    dist.retain(|_, w| *w >= SECTOR_CUTOFF);
    dist
}
