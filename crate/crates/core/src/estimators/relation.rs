//! Two-branch linear fit of entropy against charge fluctuations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::linear_fit;

/// Fluctuation value separating the two linear regimes.
pub const KNEE: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationFit {
    /// Slope of `S = a d` below the knee (fit through the origin).
    pub a_low: f64,
    pub slope_high: f64,
    pub intercept_high: f64,
    pub low_points: usize,
    pub high_points: usize,
}

/// Fits `S = a d` for `d <= 2` and `S = b d + c` for `d > 2`.
///
/// The low branch is constrained through the origin: a product state has
/// neither fluctuations nor entropy.
pub fn fit_entropy_fluctuation_relation(points: &[(f64, f64)]) -> Result<RelationFit> {
    if points.len() < 10 {
        return Err(Error::InsufficientData { needed: 10, got: points.len() });
    }
    let (low, high): (Vec<(f64, f64)>, Vec<(f64, f64)>) =
        points.iter().copied().partition(|(d, _)| *d <= KNEE);
    let sxx: f64 = low.iter().map(|(d, _)| d * d).sum();
    if low.len() < 2 || sxx <= 0.0 {
        return Err(Error::FitDegenerate(format!(
            "{} points below the knee carry no spread",
            low.len()
        )));
    }
    let a_low = low.iter().map(|(d, s)| d * s).sum::<f64>() / sxx;
    let (slope_high, intercept_high) = linear_fit(&high).ok_or_else(|| {
        Error::FitDegenerate(format!("{} points above the knee carry no spread", high.len()))
    })?;
    Ok(RelationFit { a_low, slope_high, intercept_high, low_points: low.len(), high_points: high.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::reconstruct_entropy;
    use approx::assert_relative_eq;

    #[test]
    fn recovers_exact_piecewise_law() {
        let a = 0.92;
        let points: Vec<(f64, f64)> = (0..=40)
            .map(|i| {
                let d = 0.1 * i as f64;
                (d, reconstruct_entropy(d, a).unwrap())
            })
            .collect();
        let fit = fit_entropy_fluctuation_relation(&points).unwrap();
        assert_relative_eq!(fit.a_low, a, epsilon = 1e-10);
        assert_relative_eq!(fit.slope_high, 2.0 * std::f64::consts::LN_2, epsilon = 1e-10);
        assert_relative_eq!(fit.intercept_high, 2.0 * a - 4.0 * std::f64::consts::LN_2, epsilon = 1e-10);
    }

    #[test]
    fn degenerate_inputs() {
        let few: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, i as f64)).collect();
        assert!(matches!(fit_entropy_fluctuation_relation(&few), Err(Error::InsufficientData { .. })));
        let low_only: Vec<(f64, f64)> = (0..12).map(|i| (0.1 * i as f64, 0.1 * i as f64)).collect();
        assert!(matches!(fit_entropy_fluctuation_relation(&low_only), Err(Error::FitDegenerate(_))));
    }
}
