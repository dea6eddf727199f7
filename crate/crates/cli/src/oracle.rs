//! `oracle`: closed-form references printed as `key = value` lines.

use std::io::Write;

use clap::Subcommand;
use mipt_core::oracles::{
    exact_to_f64, lemma_checks, oracle_entropy, oracle_spectrum, oracle_variance_exact, overhead_estimate,
};

use crate::error::{CliError, CliResult};

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Half-chain charge variance of the unmeasured steady state.
    Variance {
        #[arg(long = "L")]
        num_qubits: usize,
    },
    /// Sector-0 and total shot budgets for a variance precision `eps`.
    Overhead {
        #[arg(long = "L")]
        num_qubits: usize,
        #[arg(long)]
        eps: f64,
        /// Saturated variance; defaults to the exact steady-state value.
        #[arg(long)]
        variance: Option<f64>,
        /// Success-fraction constant `c` in `c / sqrt(L)`.
        #[arg(long, default_value_t = 1.0)]
        success_constant: f64,
    },
    /// Statistical lemma checks on Gaussian draws.
    Lemmas {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Block spectrum of the steady-state half-chain density matrix.
    Spectrum {
        #[arg(long = "L")]
        num_qubits: usize,
    },
    /// Steady-state half-chain entropy.
    Entropy {
        #[arg(long = "L")]
        num_qubits: usize,
        /// Renyi index; 1 is von Neumann.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
}

pub fn run(cmd: &OracleCommand, out: &mut impl Write) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Io { path: "<stdout>".into(), source: e };
    match *cmd {
        OracleCommand::Variance { num_qubits } => {
            let v = oracle_variance_exact(num_qubits)?;
            writeln!(out, "L = {num_qubits}").map_err(io)?;
            writeln!(out, "variance = {v}").map_err(io)?;
            writeln!(out, "variance_f64 = {}", exact_to_f64(v)).map_err(io)?;
        }
        OracleCommand::Overhead { num_qubits, eps, variance, success_constant } => {
            let o = overhead_estimate(num_qubits, eps, variance, success_constant)?;
            writeln!(out, "L = {num_qubits}").map_err(io)?;
            writeln!(out, "eps = {eps}").map_err(io)?;
            writeln!(out, "N_sector0_min = {}", o.sector0_min).map_err(io)?;
            writeln!(out, "N_total_min = {}", o.total_min).map_err(io)?;
        }
        OracleCommand::Lemmas { samples, seed } => {
            let report = lemma_checks(samples, seed)?;
            write!(out, "{report}").map_err(io)?;
            if !report.passed() {
                return Err(CliError::Core(mipt_core::Error::AnalysisFailed("lemma checks failed".into())));
            }
        }
        OracleCommand::Spectrum { num_qubits } => {
            let s = oracle_spectrum(num_qubits)?;
            writeln!(out, "L = {num_qubits}").map_err(io)?;
            writeln!(out, "charge,dimension,eigenvalue,eigenvalue_f64").map_err(io)?;
            for b in &s.blocks {
                writeln!(out, "{},{},{},{}", b.charge, b.dimension, b.eigenvalue, exact_to_f64(b.eigenvalue))
                    .map_err(io)?;
            }
        }
        OracleCommand::Entropy { num_qubits, alpha } => {
            let e = oracle_entropy(num_qubits, alpha)?;
            writeln!(out, "L = {num_qubits}").map_err(io)?;
            writeln!(out, "alpha = {alpha}").map_err(io)?;
            writeln!(out, "entropy = {}", e.exact).map_err(io)?;
            writeln!(out, "leading = {}", e.leading).map_err(io)?;
        }
    }
    Ok(())
}
