//! Frozen randomness of one monitored brickwork circuit.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quantum::{GateParams, DEFAULT_MAX_QUBITS};
use crate::rng::SeedStreams;

/// Which link set a half-cycle acts on (open chain, zero-based qubits).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkParity {
    /// Links `(0,1), (2,3), ...`
    Odd,
    /// Links `(1,2), (3,4), ...`
    Even,
}

impl LinkParity {
    /// Lower qubit of every link in this set.
    pub fn links(self, num_qubits: usize) -> impl Iterator<Item = usize> {
        let start = match self {
            LinkParity::Odd => 0,
            LinkParity::Even => 1,
        };
        (start..num_qubits.saturating_sub(1)).step_by(2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfCycle {
    pub parity: LinkParity,
    /// One gate per link, in link order.
    pub gates: Vec<GateParams>,
    /// Strictly ascending qubits measured at the end of the half-cycle.
    pub measured: Vec<usize>,
}

/// Parameters that fully determine a realization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationKey {
    pub num_qubits: usize,
    pub rate: f64,
    pub num_cycles: usize,
    pub burn_in: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitRealization {
    key: RealizationKey,
    half_cycles: Vec<HalfCycle>,
}

impl CircuitRealization {
    /// Draws gates from the "gates" stream and measurement locations from the
    /// "locations" stream of `seed`. Each full cycle is an odd half-cycle
    /// followed by an even one; every qubit is marked for measurement
    /// independently with probability `rate` at the end of each half-cycle.
    pub fn sample(
        num_qubits: usize,
        rate: f64,
        num_cycles: usize,
        burn_in: usize,
        seed: u64,
    ) -> Result<Self> {
        if !(2..=DEFAULT_MAX_QUBITS).contains(&num_qubits) {
            return invalid(format!("L must lie in 2..={DEFAULT_MAX_QUBITS}, got {num_qubits}"));
        }
        if !(0.0..=1.0).contains(&rate) {
            return invalid(format!("measurement rate must lie in [0, 1], got {rate}"));
        }
        if num_cycles == 0 {
            return invalid("number of cycles must be at least 1");
        }
        let streams = SeedStreams::new(seed);
        let mut gate_rng = streams.stream("gates");
        let mut loc_rng = streams.stream("locations");
        let half_cycles = (0..2 * num_cycles)
            .map(|h| {
                let parity = if h % 2 == 0 { LinkParity::Odd } else { LinkParity::Even };
                let gates =
                    parity.links(num_qubits).map(|_| GateParams::sample(&mut gate_rng)).collect();
                let measured = (0..num_qubits)
                    .filter(|_| loc_rng.random::<f64>() < rate)
                    .collect();
                HalfCycle { parity, gates, measured }
            })
            .collect();
        Ok(Self {
            key: RealizationKey { num_qubits, rate, num_cycles, burn_in, seed },
            half_cycles,
        })
    }

    pub fn from_key(key: RealizationKey) -> Result<Self> {
        Self::sample(key.num_qubits, key.rate, key.num_cycles, key.burn_in, key.seed)
    }

    pub fn key(&self) -> RealizationKey {
        self.key
    }

    pub fn num_qubits(&self) -> usize {
        self.key.num_qubits
    }

    pub fn rate(&self) -> f64 {
        self.key.rate
    }

    pub fn num_cycles(&self) -> usize {
        self.key.num_cycles
    }

    pub fn burn_in(&self) -> usize {
        self.key.burn_in
    }

    pub fn seed(&self) -> u64 {
        self.key.seed
    }

    pub fn half_cycles(&self) -> &[HalfCycle] {
        &self.half_cycles
    }

    /// Total number of mid-circuit measurement events.
    pub fn num_measurements(&self) -> usize {
        self.half_cycles.iter().map(|h| h.measured.len()).sum()
    }
}
