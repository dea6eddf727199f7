//! Labeled, seed-derived random streams.
//!
//! Every consumer of randomness asks for a stream by label ("gates",
//! "locations", "outcomes/target", "outcomes/run_17", ...). The stream key is
//! a hash of the master seed and the label, and the generator is ChaCha8, so
//! the values a stream yields never depend on which thread asked for it or in
//! what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type StreamRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedStreams {
    seed: u64,
}

impl SeedStreams {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn key(&self, label: &str) -> [u8; 32] {
        let mut hasher = Sha256::new();
        hasher.update(self.seed.to_le_bytes());
        hasher.update(label.as_bytes());
        hasher.finalize().into()
    }

    pub fn stream(&self, label: &str) -> StreamRng {
        ChaCha8Rng::from_seed(self.key(label))
    }

    /// A child seed for a labeled sub-experiment.
    pub fn derive_seed(&self, label: &str) -> u64 {
        let key = self.key(label);
        u64::from_le_bytes(key[..8].try_into().expect("8 bytes"))
    }

    pub fn run_label(run_index: usize) -> String {
        format!("outcomes/run_{run_index}")
    }
}
