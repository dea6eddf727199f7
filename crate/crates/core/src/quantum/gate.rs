//! Charge-conserving two-qubit gates.
//!
//! In the local basis `{|00>, |11>, |01>, |10>}` (first label = lower qubit)
//! a gate is `diag(e^{i phi00}, e^{i phi11}) (+) U2`, with
//!
//! ```text
//! U2 = e^{i phi3} [[ e^{i phi1} cos(theta),   e^{i phi2} sin(theta)],
//!                  [-e^{-i phi2} sin(theta),  e^{-i phi1} cos(theta)]]
//! ```
//!
//! acting on `(|01>, |10>)`. All six phases are drawn uniformly from
//! `[0, 2 pi)`, so the 2x2 block is not Haar distributed.

use std::f64::consts::TAU;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateParams {
    pub phi00: f64,
    pub phi11: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub theta: f64,
}

impl GateParams {
    pub const IDENTITY: Self = Self {
        phi00: 0.0,
        phi11: 0.0,
        phi1: 0.0,
        phi2: 0.0,
        phi3: 0.0,
        theta: 0.0,
    };

    /// Draws the six phases in field order, each uniform on `[0, 2 pi)`.
    pub fn sample<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let mut phase = || rng.random::<f64>() * TAU;
        Self {
            phi00: phase(),
            phi11: phase(),
            phi1: phase(),
            phi2: phase(),
            phi3: phase(),
            theta: phase(),
        }
    }

    pub fn matrix<R: Real>(&self) -> GateMatrix<R> {
        let e = |phi: f64| Complex::from_polar(1.0, phi);
        let global = e(self.phi3);
        let (s, c) = self.theta.sin_cos();
        let block = [
            [global * e(self.phi1) * c, global * e(self.phi2) * s],
            [-global * e(-self.phi2) * s, global * e(-self.phi1) * c],
        ];
        GateMatrix {
            d00: cast(e(self.phi00)),
            d11: cast(e(self.phi11)),
            block: [
                [cast(block[0][0]), cast(block[0][1])],
                [cast(block[1][0]), cast(block[1][1])],
            ],
        }
    }
}

fn cast<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::lit(z.re), R::lit(z.im))
}

/// Assembled gate: two phases on `|00>`, `|11>` and a 2x2 block on
/// `(|01>, |10>)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateMatrix<R> {
    pub d00: Complex<R>,
    pub d11: Complex<R>,
    pub block: [[Complex<R>; 2]; 2],
}

impl<R: Real> GateMatrix<R> {
    /// Dense 4x4 form indexed by `bit(n) + 2 bit(n+1)`.
    pub fn to_dense(&self) -> [[Complex<f64>; 4]; 4] {
        let up = |z: Complex<R>| Complex::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap());
        let zero = Complex::new(0.0, 0.0);
        let mut m = [[zero; 4]; 4];
        m[0][0] = up(self.d00);
        m[3][3] = up(self.d11);
        // |01> (qubit n = 0, qubit n+1 = 1) is local index 2, |10> is 1.
        let idx = [2usize, 1];
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                m[i][j] = up(self.block[r][c]);
            }
        }
        m
    }
}
