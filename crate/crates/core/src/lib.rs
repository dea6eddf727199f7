//! Simulation and analysis of monitored U(1)-symmetric brickwork circuits.
//!
//! Target trajectories are run with Born-rule measurements; steered runs
//! replay the same circuit and force every mid-circuit outcome to agree with
//! the target through conditional Pauli-X corrections. Filtering the steered
//! readouts by total charge and removing the incoherent volume-law excess
//! gives the target's subsystem charge fluctuations, from which the
//! entanglement entropy curve and the critical point follow.
//!
//! Statevector kernels are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the usual precision.

pub mod circuit;
pub mod error;
pub mod estimators;
pub mod oracles;
pub mod quantum;
pub mod rng;
pub mod scalar;
pub mod scaling;
pub mod stats;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use scalar::Real;
pub use stats::Estimate;

pub type StateVectorF64 = quantum::StateVector<f64>;
pub type StateVectorF32 = quantum::StateVector<f32>;
pub type TargetRecordF64 = circuit::TargetRecord<f64>;
pub type TargetRecordF32 = circuit::TargetRecord<f32>;
pub type CompiledCircuitF64<'a> = circuit::CompiledCircuit<'a, f64>;
