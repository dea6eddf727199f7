//! Closed-form steady state of the unmeasured circuit: every charge block
//! of the half-chain density matrix is taken as exactly degenerate.

use num_integer::binomial;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub type Exact = Ratio<u128>;

pub fn exact_to_f64(r: Exact) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Largest chain length for which the exact arithmetic is guaranteed.
pub const MAX_EXACT_LENGTH: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumBlock {
    /// Number of down spins in the half chain.
    pub charge: usize,
    pub dimension: u128,
    pub eigenvalue: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyticSpectrum {
    pub num_qubits: usize,
    pub blocks: Vec<SpectrumBlock>,
}

fn check_even(num_qubits: usize, min: usize) -> Result<()> {
    if num_qubits % 2 != 0 || num_qubits < min || num_qubits > MAX_EXACT_LENGTH {
        return invalid(format!("need even L in [{min}, {MAX_EXACT_LENGTH}], got {num_qubits}"));
    }
    Ok(())
}

/// Blocks `Q = 0..L/2` with dimension `C(L/2, Q)` and eigenvalue
/// `C(L/2, L/2 - Q) / C(L, L/2)`.
pub fn oracle_spectrum(num_qubits: usize) -> Result<AnalyticSpectrum> {
    check_even(num_qubits, 2)?;
    let half = (num_qubits / 2) as u128;
    let norm = binomial(num_qubits as u128, half);
    let blocks = (0..=half)
        .map(|q| SpectrumBlock {
            charge: q as usize,
            dimension: binomial(half, q),
            eigenvalue: Exact::new(binomial(half, half - q), norm),
        })
        .collect();
    Ok(AnalyticSpectrum { num_qubits, blocks })
}

impl AnalyticSpectrum {
    pub fn trace(&self) -> Exact {
        self.blocks
            .iter()
            .fold(Exact::zero(), |acc, b| acc + b.eigenvalue * Exact::from_integer(b.dimension))
    }

    /// Probability of each half-chain charge block, `dim * eigenvalue`.
    pub fn block_weights(&self) -> Vec<(usize, Exact)> {
        self.blocks.iter().map(|b| (b.charge, b.eigenvalue * Exact::from_integer(b.dimension))).collect()
    }

    /// Variance of `Z_{L/2} = L/2 - 2Q` under the block weights.
    pub fn charge_variance(&self) -> Exact {
        let weights = self.block_weights();
        let m1 = weights.iter().fold(Exact::zero(), |a, (q, w)| a + *w * Exact::from_integer(*q as u128));
        let m2 = weights
            .iter()
            .fold(Exact::zero(), |a, (q, w)| a + *w * Exact::from_integer((*q * *q) as u128));
        // Z = half - 2Q, so var(Z) = 4 var(Q)
        Exact::from_integer(4) * (m2 - m1 * m1)
    }

    /// von Neumann (`n = 1`) or Rényi-`n` entropy of the spectrum.
    pub fn entropy(&self, renyi_index: f64) -> Result<f64> {
        if !(renyi_index >= 1.0) {
            return invalid(format!("Renyi index must be >= 1, got {renyi_index}"));
        }
        let terms = self.blocks.iter().map(|b| (b.dimension as f64, exact_to_f64(b.eigenvalue)));
        Ok(if renyi_index == 1.0 {
            -terms.map(|(d, l)| d * l * l.ln()).sum::<f64>()
        } else {
            terms.map(|(d, l)| d * l.powf(renyi_index)).sum::<f64>().ln() / (1.0 - renyi_index)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyOracle {
    pub exact: f64,
    /// `(1/2) ln C(L, L/2)`.
    pub leading: f64,
}

pub fn oracle_entropy(num_qubits: usize, renyi_index: f64) -> Result<EntropyOracle> {
    let spectrum = oracle_spectrum(num_qubits)?;
    let central = binomial(num_qubits as u128, (num_qubits / 2) as u128) as f64;
    Ok(EntropyOracle { exact: spectrum.entropy(renyi_index)?, leading: 0.5 * central.ln() })
}

/// `L^2 / (4 (L - 1))`, exactly.
pub fn oracle_variance_exact(num_qubits: usize) -> Result<Exact> {
    check_even(num_qubits, 4)?;
    let l = num_qubits as u128;
    Ok(Exact::new(l * l, 4 * (l - 1)))
}

/// Half-chain charge variance of the unmeasured steady state, `L^2 / (4(L-1))`.
pub fn oracle_variance(num_qubits: usize) -> Result<f64> {
    Ok(exact_to_f64(oracle_variance_exact(num_qubits)?))
}
