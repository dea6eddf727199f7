//! Closed-form references, statistical lemma checks and brute-force
//! micro-oracles.

pub mod analytic;
pub mod brute_force;
pub mod lemmas;
pub mod overhead;

pub use analytic::{
    exact_to_f64, oracle_entropy, oracle_spectrum, oracle_variance, oracle_variance_exact, AnalyticSpectrum,
    EntropyOracle, Exact, SpectrumBlock,
};
pub use brute_force::{brute_force_reference, density_matrix, partial_trace, BruteForce};
pub use lemmas::{lemma_checks, LemmaCheck, LemmaReport};
pub use overhead::{overhead_estimate, variance_of_variance, Overhead};
