//! Target averaging, the parasitic volume-law coefficient and the corrected
//! and effective fluctuations built from it.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sector::variance_of;
use crate::circuit::ShotRecord;
use crate::error::{invalid, Error, Result};
use crate::rng::SeedStreams;
use crate::stats::Estimate;

/// Default coefficient of the low branch of the entropy/fluctuation relation.
pub const DEFAULT_LOW_SLOPE: f64 = 0.92;

/// Mean of per-target variances with `std / sqrt(N)` error.
pub fn average_over_targets(per_target: &[f64]) -> Result<Estimate> {
    Estimate::from_samples(per_target).ok_or(Error::InsufficientData { needed: 1, got: 0 })
}

/// Variance of all shots thrown into one pool. This is the wrong estimator
/// (it adds the spread of target means); kept to demonstrate the difference.
pub fn pooled_variance(ensembles: &[&[ShotRecord]], l_s: usize, unbiased: bool) -> Result<f64> {
    let z: Vec<f64> = ensembles
        .iter()
        .flat_map(|e| e.iter().map(|s| s.subsystem_charge(l_s) as f64))
        .collect();
    variance_of(&z, unbiased)
}

/// Pair of subsystem lengths `(2k, 2k - j)` used to difference out `c_V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvPair {
    pub even: usize,
    pub j: usize,
}

impl CvPair {
    pub fn new(even: usize, j: usize) -> Result<Self> {
        if even % 2 != 0 || j % 2 != 1 {
            return invalid(format!("c_V pair needs even length and odd j, got ({even}, {j})"));
        }
        if even < j + 2 {
            return invalid(format!("c_V pair ({even}, {}) below length 2", even as i64 - j as i64));
        }
        Ok(Self { even, j })
    }

    /// Largest even `L_s <= L/2` paired with its odd neighbour.
    pub fn default_for(num_qubits: usize) -> Result<Self> {
        let half = num_qubits / 2;
        Self::new(half - half % 2, 1)
    }

    pub fn odd(&self) -> usize {
        self.even - self.j
    }
}

/// `c_V = (d(2k) - d(2k - j)) / (j + 1)`.
pub fn extract_cv(at_even: f64, at_odd: f64, pair: CvPair) -> f64 {
    (at_even - at_odd) / (pair.j + 1) as f64
}

/// Same as [`extract_cv`] with the two errors added in quadrature.
pub fn extract_cv_estimate(at_even: &Estimate, at_odd: &Estimate, pair: CvPair) -> Estimate {
    let scale = (pair.j + 1) as f64;
    Estimate {
        mean: (at_even.mean - at_odd.mean) / scale,
        stderr: at_even.stderr.hypot(at_odd.stderr) / scale,
        count: at_even.count.min(at_odd.count),
    }
}

/// Bootstrap error of `c_V` from paired per-target values, resampling targets.
pub fn bootstrap_cv(
    per_target: &[(f64, f64)],
    pair: CvPair,
    resamples: usize,
    seed: u64,
) -> Result<Estimate> {
    if per_target.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, got: per_target.len() });
    }
    let n = per_target.len();
    let point = {
        let (e, o) = per_target.iter().fold((0.0, 0.0), |a, t| (a.0 + t.0, a.1 + t.1));
        extract_cv(e / n as f64, o / n as f64, pair)
    };
    let mut rng = SeedStreams::new(seed).stream("bootstrap/cv");
    let draws: Vec<f64> = (0..resamples)
        .map(|_| {
            let (mut e, mut o) = (0.0, 0.0);
            for _ in 0..n {
                let t = per_target[rng.random_range(0..n)];
                e += t.0;
                o += t.1;
            }
            extract_cv(e / n as f64, o / n as f64, pair)
        })
        .collect();
    let spread = variance_of(&draws, true)?.sqrt();
    Ok(Estimate { mean: point, stderr: spread, count: n })
}

/// `d - c_V (L_s - 2)`.
pub fn corrected_fluctuation(value: f64, cv: f64, l_s: usize) -> f64 {
    value - cv * (l_s as f64 - 2.0)
}

/// `G(x) = (tanh x + 1) / 2`.
pub fn step_function(x: f64) -> f64 {
    0.5 * (x.tanh() + 1.0)
}

/// Location of the transition used by the smooth step `g(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub p_c: f64,
    pub nu: f64,
}

impl CriticalPoint {
    pub const fn new(p_c: f64, nu: f64) -> Self {
        Self { p_c, nu }
    }

    pub fn scaling_variable(&self, p: f64, num_qubits: usize) -> f64 {
        (p - self.p_c) * (num_qubits as f64).powf(1.0 / self.nu)
    }

    /// `g(p) = G((p - p_c) L^{1/nu})`.
    pub fn weight(&self, p: f64, num_qubits: usize) -> Result<f64> {
        if !(self.nu > 0.0) {
            return invalid(format!("nu must be positive, got {}", self.nu));
        }
        Ok(step_function(self.scaling_variable(p, num_qubits)))
    }
}

/// `d - g(p) c_V (L_s - 2)`.
pub fn effective_fluctuation(
    value: f64,
    cv: f64,
    l_s: usize,
    p: f64,
    critical: CriticalPoint,
    num_qubits: usize,
) -> Result<f64> {
    let g = critical.weight(p, num_qubits)?;
    Ok(value - g * cv * (l_s as f64 - 2.0))
}

/// Piecewise-linear entropy estimate with knee at `d = 2`.
pub fn reconstruct_entropy(fluctuation: f64, a: f64) -> Result<f64> {
    if !(fluctuation >= 0.0) {
        return invalid(format!("fluctuation must be non-negative, got {fluctuation}"));
    }
    let ln4 = 2.0 * std::f64::consts::LN_2;
    Ok(if fluctuation <= 2.0 {
        a * fluctuation
    } else {
        ln4 * fluctuation + (2.0 * a - 2.0 * ln4)
    })
}
