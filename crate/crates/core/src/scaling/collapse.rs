//! Single-parameter scaling collapse: the square-sum cost, its grid search
//! and the collapse coordinates.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Default half-width of the collapse window in units of `min_L L^{1/nu}`.
pub const DEFAULT_WINDOW: f64 = 0.05;
/// Default number of common resampling points across the window.
pub const DEFAULT_SAMPLES: usize = 101;

/// Curves `y_L(p)` on a common increasing `p` grid, one per system size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseInput {
    pub sizes: Vec<usize>,
    pub rates: Vec<f64>,
    pub curves: Vec<Vec<f64>>,
    /// Optional standard errors; used only when `weighted` is set.
    pub errors: Option<Vec<Vec<f64>>>,
    pub window: f64,
    pub samples: usize,
    pub weighted: bool,
}

impl CollapseInput {
    pub fn new(sizes: Vec<usize>, rates: Vec<f64>, curves: Vec<Vec<f64>>) -> Result<Self> {
        let mut distinct = sizes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 2 || distinct.len() != sizes.len() {
            return invalid(format!("need at least two distinct sizes, got {sizes:?}"));
        }
        if rates.len() < 2 || rates.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("rate grid must be strictly increasing with at least two points");
        }
        if curves.len() != sizes.len() || curves.iter().any(|c| c.len() != rates.len()) {
            return invalid("one curve per size, each sampled on the full rate grid");
        }
        if curves.iter().flatten().any(|y| !y.is_finite()) {
            return invalid("curves contain non-finite values");
        }
        Ok(Self { sizes, rates, curves, errors: None, window: DEFAULT_WINDOW, samples: DEFAULT_SAMPLES, weighted: false })
    }

    pub fn with_window(mut self, window: f64) -> Self {
        self.window = window;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    /// Enables inverse-variance weighting with the given standard errors.
    pub fn with_errors(mut self, errors: Vec<Vec<f64>>) -> Result<Self> {
        if errors.len() != self.curves.len()
            || errors.iter().any(|e| e.len() != self.rates.len() || e.iter().any(|s| !(*s > 0.0)))
        {
            return invalid("errors must be positive and shaped like the curves");
        }
        self.errors = Some(errors);
        self.weighted = true;
        Ok(self)
    }

    /// Keeps the curves whose size satisfies `keep`.
    pub fn retain_sizes(&self, keep: impl Fn(usize) -> bool) -> Result<Self> {
        let idx: Vec<usize> = (0..self.sizes.len()).filter(|&i| keep(self.sizes[i])).collect();
        let mut out = Self::new(
            idx.iter().map(|&i| self.sizes[i]).collect(),
            self.rates.clone(),
            idx.iter().map(|&i| self.curves[i].clone()).collect(),
        )?;
        out.window = self.window;
        out.samples = self.samples;
        if let Some(e) = &self.errors {
            out = out.with_errors(idx.iter().map(|&i| e[i].clone()).collect())?;
            out.weighted = self.weighted;
        }
        Ok(out)
    }
}

/// True when the half-chain subsystem `L/2` has odd length.
pub fn odd_half_chain(num_qubits: usize) -> bool {
    (num_qubits / 2) % 2 == 1
}

/// Linear interpolation on an increasing grid; `None` outside it.
pub fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> Option<f64> {
    let (first, last) = (*xs.first()?, *xs.last()?);
    if !(x >= first && x <= last) {
        return None;
    }
    let hi = xs.partition_point(|&v| v < x).max(1).min(xs.len() - 1);
    let lo = hi - 1;
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    Some(ys[lo] + t * (ys[hi] - ys[lo]))
}

/// One point of a collapsed curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapsePoint {
    #[serde(rename = "L")]
    pub size: usize,
    pub x: f64,
    pub y: f64,
}

fn check_params(input: &CollapseInput, p_c: f64, nu: f64) -> Result<()> {
    if !(nu > 0.0) {
        return invalid(format!("nu must be positive, got {nu}"));
    }
    let (lo, hi) = (input.rates[0], *input.rates.last().unwrap());
    if !(p_c >= lo && p_c <= hi) {
        return invalid(format!("p_c = {p_c} outside the rate grid [{lo}, {hi}]"));
    }
    Ok(())
}

/// Collapse coordinates over the full rate range: `x = (p - p_c) L^{1/nu}`,
/// `y = y_L(p) - y_L(p_c)`.
pub fn collapse_scatter(input: &CollapseInput, p_c: f64, nu: f64) -> Result<Vec<CollapsePoint>> {
    check_params(input, p_c, nu)?;
    let mut out = Vec::with_capacity(input.sizes.len() * input.rates.len());
    for (&size, curve) in input.sizes.iter().zip(&input.curves) {
        let scale = (size as f64).powf(1.0 / nu);
        let y0 = interpolate(&input.rates, curve, p_c).expect("p_c checked in range");
        out.extend(
            input.rates.iter().zip(curve).map(|(&p, &y)| CollapsePoint { size, x: (p - p_c) * scale, y: y - y0 }),
        );
    }
    Ok(out)
}

/// Cost with its number of summed terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub cost: f64,
    pub terms: usize,
}

impl CostBreakdown {
    /// Cost per resampling point, insensitive to `N_x`.
    pub fn density(&self, samples: usize) -> f64 {
        self.cost / samples as f64
    }
}

/// `C = sum_{x in I} sum_L (y(L, x) - mu(x))^2` on `N_x` points spanning
/// `I = [-w m, w m]`, `m = min_L L^{1/nu}`.
pub fn collapse_cost_terms(input: &CollapseInput, p_c: f64, nu: f64) -> Result<CostBreakdown> {
    check_params(input, p_c, nu)?;
    if input.samples < 2 {
        return invalid("need at least two resampling points");
    }
    let scales: Vec<f64> = input.sizes.iter().map(|&l| (l as f64).powf(1.0 / nu)).collect();
    let half = input.window * scales.iter().copied().fold(f64::INFINITY, f64::min);
    let grid: Vec<f64> = (0..input.samples)
        .map(|i| -half + 2.0 * half * i as f64 / (input.samples - 1) as f64)
        .collect();

    let mut resampled = Vec::with_capacity(input.sizes.len());
    let mut weights = Vec::with_capacity(input.sizes.len());
    for (k, curve) in input.curves.iter().enumerate() {
        let y0 = interpolate(&input.rates, curve, p_c).expect("p_c checked in range");
        let xs: Vec<f64> = input.rates.iter().map(|p| (p - p_c) * scales[k]).collect();
        let mut ys = Vec::with_capacity(grid.len());
        let mut ws = Vec::with_capacity(grid.len());
        for &x in &grid {
            let y = interpolate(&xs, curve, x).ok_or(Error::EmptyWindow(input.sizes[k]))?;
            ys.push(y - y0);
            ws.push(match (&input.errors, input.weighted) {
                (Some(e), true) => interpolate(&xs, &e[k], x).unwrap().powi(-2),
                _ => 1.0,
            });
        }
        resampled.push(ys);
        weights.push(ws);
    }

    let mut cost = 0.0;
    for i in 0..grid.len() {
        let wsum: f64 = weights.iter().map(|w| w[i]).sum();
        let mu = resampled.iter().zip(&weights).map(|(y, w)| w[i] * y[i]).sum::<f64>() / wsum;
        cost += resampled.iter().zip(&weights).map(|(y, w)| w[i] * (y[i] - mu).powi(2)).sum::<f64>();
    }
    Ok(CostBreakdown { cost, terms: grid.len() * input.sizes.len() })
}

pub fn collapse_cost(input: &CollapseInput, p_c: f64, nu: f64) -> Result<f64> {
    collapse_cost_terms(input, p_c, nu).map(|c| c.cost)
}

/// Closed interval sampled with a fixed step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl GridAxis {
    pub const fn new(start: f64, end: f64, step: f64) -> Self {
        Self { start, end, step }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.step > 0.0) || !(self.end >= self.start) {
            return invalid(format!("empty grid axis {self:?}"));
        }
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| self.start + i as f64 * self.step).collect())
    }
}

pub const DEFAULT_PC_AXIS: GridAxis = GridAxis::new(0.10, 0.20, 0.0025);
pub const DEFAULT_NU_AXIS: GridAxis = GridAxis::new(0.9, 1.8, 0.025);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub p_c: f64,
    pub nu: f64,
    /// `None` where the cost could not be evaluated.
    pub cost: Option<f64>,
}

impl GridCell {
    pub fn inverse_cost(&self) -> Option<f64> {
        self.cost.map(|c| if c > 0.0 { 1.0 / c } else { f64::INFINITY })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseResult {
    pub cells: Vec<GridCell>,
    pub p_c: f64,
    pub nu: f64,
    pub cost: f64,
    pub scatter: Vec<CollapsePoint>,
}

impl CollapseResult {
    /// Rows `p_c,nu,C,C_inv`; failed cells leave the last two empty.
    pub fn write_heatmap<W: Write>(&self, mut out: W, provenance: &str) -> Result<()> {
        writeln!(out, "# {provenance}")?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["p_c", "nu", "C", "C_inv"])?;
        for c in &self.cells {
            let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            w.write_record([c.p_c.to_string(), c.nu.to_string(), fmt(c.cost), fmt(c.inverse_cost())])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Rows `L,x,y` at the optimum.
    pub fn write_scatter<W: Write>(&self, mut out: W, provenance: &str) -> Result<()> {
        writeln!(out, "# {provenance}")?;
        let mut w = csv::Writer::from_writer(out);
        for pt in &self.scatter {
            w.serialize(pt)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Evaluates the cost on the Cartesian grid; the optimum is the minimum with
/// ties going to the smaller `p_c`, then the smaller `nu`.
pub fn grid_search(input: &CollapseInput, p_c_axis: GridAxis, nu_axis: GridAxis) -> Result<CollapseResult> {
    let pcs = p_c_axis.values()?;
    let nus = nu_axis.values()?;
    let pairs: Vec<(f64, f64)> = pcs.iter().flat_map(|&p| nus.iter().map(move |&n| (p, n))).collect();
    let cells: Vec<GridCell> = pairs
        .par_iter()
        .map(|&(p_c, nu)| GridCell { p_c, nu, cost: collapse_cost(input, p_c, nu).ok() })
        .collect();
    // cells are ordered by (p_c, nu), so the first strict minimum wins ties
    let best = cells
        .iter()
        .filter_map(|c| c.cost.map(|cost| (c, cost)))
        .fold(None::<(&GridCell, f64)>, |acc, (c, cost)| match acc {
            Some((_, b)) if b <= cost => acc,
            _ => Some((c, cost)),
        })
        .ok_or_else(|| Error::AnalysisFailed("no grid point could be evaluated".into()))?;
    let (p_c, nu, cost) = (best.0.p_c, best.0.nu, best.1);
    Ok(CollapseResult { scatter: collapse_scatter(input, p_c, nu)?, cells, p_c, nu, cost })
}
