//! Shot budgets for a target precision of the sector-0 variance.

use serde::{Deserialize, Serialize};

use super::analytic::oracle_variance;
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overhead {
    /// Sector-0 samples needed for a variance error below `eps`.
    pub sector0_min: u64,
    /// Total steered runs once the success fraction `c / sqrt(L)` is paid.
    pub total_min: u64,
}

/// `N0 = ceil(2 d^2 / eps)` and `N_s = ceil(N0 sqrt(L) / c)`, with `d`
/// defaulting to the unmeasured steady-state variance.
pub fn overhead_estimate(
    num_qubits: usize,
    eps: f64,
    saturated_variance: Option<f64>,
    success_constant: f64,
) -> Result<Overhead> {
    if !(eps > 0.0) {
        return invalid(format!("eps must be positive, got {eps}"));
    }
    if !(success_constant > 0.0) {
        return invalid(format!("success constant must be positive, got {success_constant}"));
    }
    let d = match saturated_variance {
        Some(d) => d,
        None => oracle_variance(num_qubits)?,
    };
    let n0 = (2.0 * d * d / eps).ceil();
    let ns = (n0 * (num_qubits as f64).sqrt() / success_constant).ceil();
    Ok(Overhead { sector0_min: n0 as u64, total_min: ns as u64 })
}

/// `2 d^2 / N`: variance of a sample variance from `N` Gaussian draws.
pub fn variance_of_variance(samples: usize, saturated_variance: f64) -> Result<f64> {
    if samples < 2 {
        return invalid(format!("need at least two samples, got {samples}"));
    }
    Ok(2.0 * saturated_variance * saturated_variance / samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::variance_of;
    use crate::rng::SeedStreams;
    use approx::assert_relative_eq;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn headline_budget() {
        // exact d = 64/15 gives 2 d^2 / eps = 3640.9
        let exact = overhead_estimate(16, 0.01, None, 1.0).unwrap();
        assert_eq!(exact.sector0_min, 3641);
        assert_eq!(exact.total_min, 3641 * 4);
        // with d rounded to 4.267 the bound is 3641.6
        assert_eq!(overhead_estimate(16, 0.01, Some(4.267), 1.0).unwrap().sector0_min, 3642);
    }

    #[test]
    fn budget_scaling() {
        let a = overhead_estimate(16, 0.01, Some(4.0), 1.0).unwrap();
        let b = overhead_estimate(16, 0.005, Some(4.0), 1.0).unwrap();
        assert_eq!(b.sector0_min, 2 * a.sector0_min);
        assert_eq!(b.total_min, 2 * a.total_min);
        let ratio = |l: usize| {
            let d = |n: usize| n as f64 / 4.0;
            let big = overhead_estimate(2 * l, 1e-6, Some(d(2 * l)), 1.0).unwrap().total_min as f64;
            let small = overhead_estimate(l, 1e-6, Some(d(l)), 1.0).unwrap().total_min as f64;
            big / small
        };
        assert_relative_eq!(ratio(64), 2f64.powf(2.5), max_relative = 1e-4);
        assert!(overhead_estimate(16, 0.0, None, 1.0).is_err());
        assert!(overhead_estimate(16, -1.0, None, 1.0).is_err());
    }

    #[test]
    fn variance_of_variance_formula() {
        assert_relative_eq!(variance_of_variance(1000, 4.0).unwrap(), 0.032, epsilon = 1e-15);
        assert_relative_eq!(
            variance_of_variance(2000, 4.0).unwrap(),
            0.5 * variance_of_variance(1000, 4.0).unwrap()
        );
        assert!(variance_of_variance(1, 4.0).is_err());
    }

    #[test]
    fn gaussian_batches_match_prediction() {
        let (sigma2, n, batches) = (3.0f64, 400usize, 2000usize);
        let normal = Normal::new(0.0, sigma2.sqrt()).unwrap();
        let mut rng = SeedStreams::new(17).stream("gaussian");
        let vars: Vec<f64> = (0..batches)
            .map(|_| {
                let xs: Vec<f64> = (0..n).map(|_| normal.sample(&mut rng)).collect();
                variance_of(&xs, true).unwrap()
            })
            .collect();
        let spread = variance_of(&vars, true).unwrap();
        let predicted = variance_of_variance(n, sigma2).unwrap();
        assert!((spread / predicted - 1.0).abs() < 0.2, "{spread} vs {predicted}");
    }
}
