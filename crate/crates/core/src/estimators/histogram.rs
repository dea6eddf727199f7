//! Subsystem charge distributions from shots or exact states.

use std::collections::BTreeMap;

use crate::circuit::ShotRecord;
use crate::error::{invalid, Result};
use crate::quantum::{subsystem_charge_distribution, StateVector};
use crate::scalar::Real;

/// Normalized distribution over `z in {-L_s, -L_s + 2, ..., L_s}`; every
/// support point is present, possibly with zero weight.
pub type ChargeHistogram = BTreeMap<i32, f64>;

fn empty_support(l_s: usize) -> ChargeHistogram {
    (0..=l_s).map(|k| (l_s as i32 - 2 * k as i32, 0.0)).collect()
}

pub fn shot_histogram(shots: &[ShotRecord], l_s: usize) -> Result<ChargeHistogram> {
    if shots.is_empty() {
        return invalid("histogram of an empty shot list");
    }
    let mut hist = empty_support(l_s);
    let w = 1.0 / shots.len() as f64;
    for s in shots {
        *hist.get_mut(&s.subsystem_charge(l_s)).expect("charge within support") += w;
    }
    Ok(hist)
}

/// Diagonal weights of `state`.
pub fn exact_histogram<R: Real>(state: &StateVector<R>, l_s: usize) -> Result<ChargeHistogram> {
    subsystem_charge_distribution(state, l_s)
}

/// `(1/2) sum |p(z) - q(z)|` over the union of supports.
pub fn total_variation(a: &ChargeHistogram, b: &ChargeHistogram) -> f64 {
    let keys: std::collections::BTreeSet<i32> = a.keys().chain(b.keys()).copied().collect();
    0.5 * keys
        .iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}
