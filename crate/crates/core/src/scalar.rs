//! Floating-point scalar used for statevector amplitudes.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

/// Real scalar backing complex amplitudes: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Default + Send + Sync + 'static {
    /// Tolerance used by norm-drift checks at this precision.
    fn drift_tolerance() -> f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl Real for f64 {
    fn drift_tolerance() -> f64 {
        1e-10
    }
}

impl Real for f32 {
    fn drift_tolerance() -> f64 {
        1e-4
    }
}
