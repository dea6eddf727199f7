//! Dense statevector over an open chain of qubits.
//!
//! Bit `n` of a basis index is the Z eigenvalue of qubit `n`: bit 0 is
//! spin up (`sigma = +1`), bit 1 is spin down (`sigma = -1`).

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::gate::GateMatrix;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Projective Z-measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Outcome {
    /// `+1`, bit value 0.
    Up,
    /// `-1`, bit value 1.
    Down,
}

impl Outcome {
    pub fn sign(self) -> i8 {
        match self {
            Outcome::Up => 1,
            Outcome::Down => -1,
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Outcome::Up => 0,
            Outcome::Down => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Up => Outcome::Down,
            Outcome::Down => Outcome::Up,
        }
    }
}

impl From<Outcome> for i8 {
    fn from(o: Outcome) -> i8 {
        o.sign()
    }
}

impl TryFrom<i8> for Outcome {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Outcome::Up),
            -1 => Ok(Outcome::Down),
            other => Err(format!("measurement outcome must be +1 or -1, got {other}")),
        }
    }
}

/// Spin value `sigma_n` of qubit `n` in basis state `index`.
#[inline]
pub fn sigma(index: usize, n: usize) -> i32 {
    1 - 2 * ((index >> n) & 1) as i32
}

/// Charge `sum_{n < len} sigma_n` of the leftmost `len` qubits of `index`.
#[inline]
pub fn block_charge(index: usize, len: usize) -> i32 {
    let mask = if len >= usize::BITS as usize { usize::MAX } else { (1usize << len) - 1 };
    len as i32 - 2 * (index & mask).count_ones() as i32
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<R> {
    num_qubits: usize,
    amps: Vec<Complex<R>>,
}

impl<R: Real> StateVector<R> {
    fn check_size(num_qubits: usize) -> Result<()> {
        if !(2..=DEFAULT_MAX_QUBITS).contains(&num_qubits) {
            return invalid(format!(
                "number of qubits must lie in 2..={DEFAULT_MAX_QUBITS}, got {num_qubits}"
            ));
        }
        Ok(())
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        Self::check_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return invalid(format!("basis index {index} out of range for {num_qubits} qubits"));
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[index] = Complex::new(R::one(), R::zero());
        Ok(Self { num_qubits, amps })
    }

    /// Wraps raw amplitudes and rescales them to unit norm.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex<R>>) -> Result<Self> {
        Self::check_size(num_qubits)?;
        if amps.len() != 1usize << num_qubits {
            return invalid(format!(
                "expected {} amplitudes for {num_qubits} qubits, got {}",
                1usize << num_qubits,
                amps.len()
            ));
        }
        let mut state = Self { num_qubits, amps };
        let norm = state.norm_sqr();
        if !(norm > 1e-300) || !norm.is_finite() {
            return invalid("amplitudes have zero or non-finite norm");
        }
        state.scale(1.0 / norm.sqrt());
        Ok(state)
    }

    /// Neel state `|up down up down ...>`, total charge zero.
    pub fn neel(num_qubits: usize) -> Result<Self> {
        if num_qubits % 2 != 0 {
            return invalid(format!("Neel state needs an even chain, got L = {num_qubits}"));
        }
        // qubits 1, 3, 5, ... are down
        let index = (0..num_qubits).filter(|n| n % 2 == 1).fold(0usize, |acc, n| acc | (1 << n));
        Self::basis(num_qubits, index)
    }

    /// Equal superposition of `|k>_A (x) |mirror(k)>_B` over all left-half
    /// patterns `k` with zero half-chain charge, where `mirror` reflects the
    /// pattern across the central cut (qubit `j` maps to `L - 1 - j`).
    pub fn mirrored_zero_charge(num_qubits: usize) -> Result<Self> {
        if num_qubits % 4 != 0 {
            return invalid(format!(
                "mirrored zero-charge state needs L divisible by 4, got L = {num_qubits}"
            ));
        }
        Self::check_size(num_qubits)?;
        let half = num_qubits / 2;
        let terms: Vec<usize> = (0..1usize << half)
            .filter(|k| k.count_ones() as usize == half / 2)
            .map(|k| {
                let mirrored = (0..half).fold(0usize, |acc, j| acc | (((k >> j) & 1) << (half - 1 - j)));
                k | (mirrored << half)
            })
            .collect();
        let weight = R::lit(1.0 / (terms.len() as f64).sqrt());
        let mut amps = vec![Complex::zero(); 1usize << num_qubits];
        for index in terms {
            amps[index] = Complex::new(weight, R::zero());
        }
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<R>] {
        &self.amps
    }

    /// Squared moduli in `f64`, indexed by basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr().to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr().to_f64().unwrap_or(f64::NAN)).sum()
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (a, b) in self.amps.iter().zip(&other.amps) {
            let z = a.conj() * b;
            re += z.re.to_f64().unwrap();
            im += z.im.to_f64().unwrap();
        }
        re * re + im * im
    }

    fn scale(&mut self, factor: f64) {
        let f = R::lit(factor);
        for a in &mut self.amps {
            *a = a.scale(f);
        }
    }

    fn check_qubit(&self, n: usize) -> Result<()> {
        if n >= self.num_qubits {
            return invalid(format!("qubit {n} out of range for L = {}", self.num_qubits));
        }
        Ok(())
    }

    /// Applies a charge-conserving gate on qubits `(n, n + 1)`.
    pub fn apply_gate(&mut self, gate: &GateMatrix<R>, n: usize) -> Result<()> {
        if n + 1 >= self.num_qubits {
            return invalid(format!(
                "gate link ({n}, {}) out of range for L = {}",
                n + 1,
                self.num_qubits
            ));
        }
        let quarter = 1usize << n;
        let [[u00, u01], [u10, u11]] = gate.block;
        let (d00, d11) = (gate.d00, gate.d11);
        // Each chunk splits into four quarters by (bit n+1, bit n):
        // 00, 10 (qubit n down), 01 (qubit n+1 down), 11.
        for chunk in self.amps.chunks_exact_mut(4 * quarter) {
            let (low, high) = chunk.split_at_mut(2 * quarter);
            let (q00, q10) = low.split_at_mut(quarter);
            let (q01, q11) = high.split_at_mut(quarter);
            for a in q00.iter_mut() {
                *a = *a * d00;
            }
            for a in q11.iter_mut() {
                *a = *a * d11;
            }
            for (x01, x10) in q01.iter_mut().zip(q10.iter_mut()) {
                let (a, b) = (*x01, *x10);
                *x01 = u00 * a + u01 * b;
                *x10 = u10 * a + u11 * b;
            }
        }
        Ok(())
    }

    /// Splits the amplitudes into matching `(bit n = 0, bit n = 1)` runs.
    fn halves(&self, n: usize) -> impl Iterator<Item = (&[Complex<R>], &[Complex<R>])> {
        let half = 1usize << n;
        self.amps.chunks_exact(2 * half).map(move |c| c.split_at(half))
    }

    /// Born weights `(p_up, p_down)` of qubit `n`.
    pub fn outcome_weights(&self, n: usize) -> Result<(f64, f64)> {
        self.check_qubit(n)?;
        let (mut up, mut down) = (R::zero(), R::zero());
        for (u, d) in self.halves(n) {
            up = up + u.iter().fold(R::zero(), |acc, a| acc + a.norm_sqr());
            down = down + d.iter().fold(R::zero(), |acc, a| acc + a.norm_sqr());
        }
        Ok((up.to_f64().unwrap(), down.to_f64().unwrap()))
    }

    /// Probability `|| P_{n, outcome} psi ||^2`.
    pub fn outcome_probability(&self, n: usize, outcome: Outcome) -> Result<f64> {
        let (up, down) = self.outcome_weights(n)?;
        Ok(match outcome {
            Outcome::Up => up,
            Outcome::Down => down,
        })
    }

    fn collapse(&mut self, n: usize, outcome: Outcome, prob: f64) {
        let half = 1usize << n;
        let f = R::lit(1.0 / prob.sqrt());
        for chunk in self.amps.chunks_exact_mut(2 * half) {
            let (up, down) = chunk.split_at_mut(half);
            let (keep, drop) = match outcome {
                Outcome::Up => (up, down),
                Outcome::Down => (down, up),
            };
            keep.iter_mut().for_each(|a| *a = a.scale(f));
            drop.iter_mut().for_each(|a| *a = Complex::zero());
        }
    }

    /// Projects qubit `n` onto `outcome` and renormalizes. Returns the Born
    /// probability of the outcome.
    pub fn project(&mut self, n: usize, outcome: Outcome) -> Result<f64> {
        let prob = self.outcome_probability(n, outcome)?;
        if prob < 1e-14 {
            return Err(Error::NumericalCorruption(format!(
                "projection of qubit {n} onto {outcome:?} has weight {prob:e}"
            )));
        }
        self.collapse(n, outcome, prob);
        Ok(prob)
    }

    /// Born-rule Z measurement of qubit `n` driven by a uniform draw
    /// `u in [0, 1)`: the outcome is `Up` iff `u < p_up`.
    pub fn measure(&mut self, n: usize, u: f64) -> Result<Outcome> {
        let (p_up, p_down) = self.outcome_weights(n)?;
        if p_up < 1e-14 && p_down < 1e-14 {
            return Err(Error::NumericalCorruption(format!(
                "both outcomes of qubit {n} have vanishing weight"
            )));
        }
        let total = p_up + p_down;
        let outcome = if u < p_up / total { Outcome::Up } else { Outcome::Down };
        let prob = match outcome {
            Outcome::Up => p_up,
            Outcome::Down => p_down,
        };
        self.collapse(n, outcome, prob);
        Ok(outcome)
    }

    pub fn apply_pauli_x(&mut self, n: usize) -> Result<()> {
        self.check_qubit(n)?;
        let half = 1usize << n;
        for chunk in self.amps.chunks_exact_mut(2 * half) {
            let (up, down) = chunk.split_at_mut(half);
            up.swap_with_slice(down);
        }
        Ok(())
    }

    /// Amplitudes converted to `f64`.
    pub fn to_f64(&self) -> StateVector<f64> {
        StateVector {
            num_qubits: self.num_qubits,
            amps: self
                .amps
                .iter()
                .map(|a| Complex::new(a.re.to_f64().unwrap(), a.im.to_f64().unwrap()))
                .collect(),
        }
    }
}
