//! Monte Carlo checks of the chi-square facts behind the variance error bound.

use std::fmt;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::SeedStreams;

/// Checks pass when the estimate lies within this many standard errors.
pub const LEMMA_TOLERANCE: f64 = 5.0;
pub const MIN_LEMMA_SAMPLES: usize = 10_000;
/// Number of independent terms used for the additivity check.
pub const SUM_TERMS: usize = 4;
/// `n` in `Y = sum_{i<=n} x_i^2 - x_{n+1}^2`.
pub const DIFFERENCE_TERMS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub estimate: f64,
    pub expected: f64,
    pub stderr: f64,
}

impl LemmaCheck {
    pub fn z(&self) -> f64 {
        (self.estimate - self.expected).abs() / self.stderr
    }

    pub fn passed(&self) -> bool {
        self.z() <= LEMMA_TOLERANCE
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples = {}", self.samples)?;
        writeln!(f, "seed = {}", self.seed)?;
        for c in &self.checks {
            writeln!(
                f,
                "{} = {:.6} expected = {} stderr = {:.6} z = {:.3} {}",
                c.name,
                c.estimate,
                c.expected,
                c.stderr,
                c.z(),
                if c.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        write!(f, "overall = {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Sample mean with its standard error.
fn mean_check(name: &str, ys: &[f64], expected: f64) -> LemmaCheck {
    let n = ys.len() as f64;
    let m = ys.iter().sum::<f64>() / n;
    let var = ys.iter().map(|y| (y - m).powi(2)).sum::<f64>() / (n - 1.0);
    LemmaCheck { name: name.into(), estimate: m, expected, stderr: (var / n).sqrt() }
}

/// Unbiased sample variance with the large-sample standard error
/// `sqrt((m4 - s^4) / n)` from the empirical fourth central moment.
fn variance_check(name: &str, ys: &[f64], expected: f64) -> LemmaCheck {
    let n = ys.len() as f64;
    let m = ys.iter().sum::<f64>() / n;
    let m2 = ys.iter().map(|y| (y - m).powi(2)).sum::<f64>() / n;
    let m4 = ys.iter().map(|y| (y - m).powi(4)).sum::<f64>() / n;
    LemmaCheck {
        name: name.into(),
        estimate: m2 * n / (n - 1.0),
        expected,
        stderr: ((m4 - m2 * m2) / n).sqrt(),
    }
}

/// Draws standard normals and checks:
/// * `y = x^2` has mean 1 and variance 2;
/// * a sum of `k` independent `y` has mean `k` and variance `2k`;
/// * `Y = sum_{i<=n} x_i^2 - x_{n+1}^2` has variance `2(n - 1)` when
///   `x_{n+1} = sqrt(n) * mean(x_1..x_n)`, i.e. when the subtracted term is
///   the squared-mean part of the same draws.
pub fn lemma_checks(samples: usize, seed: u64) -> Result<LemmaReport> {
    if samples < MIN_LEMMA_SAMPLES {
        return invalid(format!("need at least {MIN_LEMMA_SAMPLES} samples, got {samples}"));
    }
    let streams = SeedStreams::new(seed);
    let draw = |label: &str, count: usize| -> Vec<f64> {
        let mut rng = streams.stream(label);
        (0..count).map(|_| StandardNormal.sample(&mut rng)).collect()
    };

    let single: Vec<f64> = draw("lemma/single", samples).into_iter().map(|x: f64| x * x).collect();
    let sums: Vec<f64> = draw("lemma/sum", samples * SUM_TERMS)
        .chunks_exact(SUM_TERMS)
        .map(|c| c.iter().map(|x| x * x).sum())
        .collect();
    let n = DIFFERENCE_TERMS;
    let differences: Vec<f64> = draw("lemma/difference", samples * n)
        .chunks_exact(n)
        .map(|c| {
            let squares: f64 = c.iter().map(|x| x * x).sum();
            let last = (n as f64).sqrt() * c.iter().sum::<f64>() / n as f64;
            squares - last * last
        })
        .collect();

    Ok(LemmaReport {
        samples,
        seed,
        checks: vec![
            mean_check("mean_chi2_1", &single, 1.0),
            variance_check("var_chi2_1", &single, 2.0),
            mean_check(&format!("mean_sum_{SUM_TERMS}"), &sums, SUM_TERMS as f64),
            variance_check(&format!("var_sum_{SUM_TERMS}"), &sums, 2.0 * SUM_TERMS as f64),
            variance_check(&format!("var_difference_{n}"), &differences, 2.0 * (n as f64 - 1.0)),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passes_and_prints() {
        let report = lemma_checks(100_000, 3).unwrap();
        assert!(report.passed(), "{report}");
        let text = report.to_string();
        assert!(text.contains("var_chi2_1 = "));
        assert!(text.ends_with("overall = PASS"));
        assert_eq!(report.get("var_chi2_1").unwrap().expected, 2.0);
        assert_eq!(report.get("var_difference_8").unwrap().expected, 14.0);
        assert!(lemma_checks(100, 3).is_err());
    }

    #[test]
    fn independent_subtraction_gives_the_other_variance() {
        // with an independent x_{n+1} the cumulants add: 2n + 2
        let mut rng = SeedStreams::new(4).stream("foil");
        let n = DIFFERENCE_TERMS;
        let ys: Vec<f64> = (0..50_000)
            .map(|_| {
                let xs: Vec<f64> = (0..=n).map(|_| StandardNormal.sample(&mut rng)).collect();
                xs[..n].iter().map(|x| x * x).sum::<f64>() - xs[n] * xs[n]
            })
            .collect();
        let c = variance_check("foil", &ys, 2.0 * (n as f64 + 1.0));
        assert!(c.passed(), "{c:?}");
        let wrong = LemmaCheck { expected: 2.0 * (n as f64 - 1.0), ..c };
        assert!(!wrong.passed());
    }
}
