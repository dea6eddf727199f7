//! Statevector, U(1) gates, measurements, and exact observables.

pub mod gate;
pub mod observables;
pub mod state;

pub use gate::{GateMatrix, GateParams};
pub use observables::{
    entanglement_entropy, entropy_from_spectrum, exact_charge_moments, schmidt_spectrum,
    subsystem_charge_distribution, total_charge_distribution, ChargeMoments,
};
pub use state::{block_charge, sigma, Outcome, StateVector, DEFAULT_MAX_QUBITS};
