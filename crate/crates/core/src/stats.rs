//! Small descriptive-statistics helpers shared by the estimators.

use serde::{Deserialize, Serialize};

/// A mean with its standard error and the number of samples behind it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { mean: value, stderr: 0.0, count: 1 }
    }

    /// Mean and `std / sqrt(n)` (unbiased std). A single sample has zero
    /// standard error.
    pub fn from_samples(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let stderr = if values.len() > 1 {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Some(Self { mean, stderr, count: values.len() })
    }

    /// `|self - other|` in units of the combined standard error.
    pub fn z_score(&self, other: &Estimate) -> f64 {
        let combined = self.stderr.hypot(other.stderr);
        let diff = (self.mean - other.mean).abs();
        if combined == 0.0 {
            if diff == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            diff / combined
        }
    }
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population (`1/n`) variance.
pub fn population_variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / values.len() as f64
}

/// Ordinary least squares `y = slope x + intercept`.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_basics() {
        let e = Estimate::from_samples(&[1.0, 3.0]).unwrap();
        assert_eq!(e.mean, 2.0);
        assert!((e.stderr - 1.0).abs() < 1e-15);
        assert_eq!(Estimate::from_samples(&[4.0; 5]).unwrap().stderr, 0.0);
        assert!(Estimate::from_samples(&[]).is_none());
    }

    #[test]
    fn fit_recovers_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 2.0 * i as f64 - 1.0)).collect();
        let (s, c) = linear_fit(&pts).unwrap();
        assert!((s - 2.0).abs() < 1e-14 && (c + 1.0).abs() < 1e-14);
        assert!(linear_fit(&[(1.0, 1.0), (1.0, 2.0)]).is_none());
    }
}
