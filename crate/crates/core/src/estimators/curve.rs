//! Per-target ensemble summaries and the fluctuation curve of one system
//! size, with CSV round-tripping.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::fluctuation::{
    average_over_targets, corrected_fluctuation, effective_fluctuation, extract_cv_estimate,
    CriticalPoint, CvPair,
};
use super::sector::sample_variance;
use crate::circuit::ShotRecord;
use crate::error::{invalid, Result};
use crate::stats::Estimate;

/// Variances of one target's steered ensemble.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub lengths: Vec<usize>,
    pub shots: usize,
    pub sector0_shots: usize,
    /// Unfiltered variance per length.
    pub raw: Vec<Option<f64>>,
    /// Sector-0 variance per length; `None` with fewer than two sector-0 shots.
    pub sector0: Vec<Option<f64>>,
}

impl EnsembleSummary {
    pub fn from_shots(shots: &[ShotRecord], lengths: &[usize], unbiased: bool) -> Self {
        let kept = super::filter_sector(shots, 0);
        Self {
            lengths: lengths.to_vec(),
            shots: shots.len(),
            sector0_shots: kept.len(),
            raw: lengths.iter().map(|&l| sample_variance(shots, l, unbiased).ok()).collect(),
            sector0: lengths.iter().map(|&l| sample_variance(&kept, l, unbiased).ok()).collect(),
        }
    }

    pub fn success_fraction(&self) -> f64 {
        if self.shots == 0 { 0.0 } else { self.sector0_shots as f64 / self.shots as f64 }
    }
}

/// Target-averaged raw and sector-0 estimates per length. Targets without
/// enough sector-0 shots are skipped for that length.
pub fn average_ensembles(ensembles: &[EnsembleSummary]) -> Result<Vec<(usize, Option<Estimate>, Estimate)>> {
    let Some(first) = ensembles.first() else {
        return invalid("no ensembles to average");
    };
    first
        .lengths
        .iter()
        .enumerate()
        .map(|(i, &l_s)| {
            let raw: Vec<f64> = ensembles.iter().filter_map(|e| e.raw[i]).collect();
            let s0: Vec<f64> = ensembles.iter().filter_map(|e| e.sector0[i]).collect();
            Ok((l_s, average_over_targets(&raw).ok(), average_over_targets(&s0)?))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub l_s: usize,
    pub raw: Option<Estimate>,
    pub sector0: Option<Estimate>,
    pub postselected: Option<Estimate>,
}

impl CurvePoint {
    pub fn new(p: f64, l_s: usize) -> Self {
        Self { p, l_s, raw: None, sector0: None, postselected: None }
    }
}

/// Fluctuation estimates of one system size indexed by `(p, L_s)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FluctuationCurve {
    pub num_qubits: usize,
    pub points: Vec<CurvePoint>,
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    #[serde(rename = "L")]
    pub num_qubits: usize,
    pub p: f64,
    #[serde(rename = "L_s")]
    pub l_s: usize,
    pub raw: Option<f64>,
    pub sector0: Option<f64>,
    pub cv: Option<f64>,
    pub corrected: Option<f64>,
    pub effective: Option<f64>,
    pub postselected_ref: Option<f64>,
    pub stderr_raw: Option<f64>,
    pub stderr_sector0: Option<f64>,
    pub stderr_cv: Option<f64>,
    pub stderr_postselected_ref: Option<f64>,
}

fn estimate(mean: Option<f64>, stderr: Option<f64>) -> Option<Estimate> {
    mean.map(|m| Estimate { mean: m, stderr: stderr.unwrap_or(0.0), count: 0 })
}

impl FluctuationCurve {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, points: Vec::new() }
    }

    pub fn point(&self, p: f64, l_s: usize) -> Option<&CurvePoint> {
        self.points.iter().find(|pt| pt.p == p && pt.l_s == l_s)
    }

    /// Returns the point at `(p, l_s)`, creating it if absent.
    pub fn entry(&mut self, p: f64, l_s: usize) -> &mut CurvePoint {
        let idx = match self.points.iter().position(|pt| pt.p == p && pt.l_s == l_s) {
            Some(i) => i,
            None => {
                self.points.push(CurvePoint::new(p, l_s));
                self.points.len() - 1
            }
        };
        &mut self.points[idx]
    }

    pub fn sort(&mut self) {
        self.points.sort_by(|a, b| a.p.total_cmp(&b.p).then(a.l_s.cmp(&b.l_s)));
    }

    /// Distinct rates in increasing order.
    pub fn rates(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.points.iter().map(|pt| pt.p).collect();
        r.sort_by(f64::total_cmp);
        r.dedup();
        r
    }

    pub fn lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.points.iter().map(|pt| pt.l_s).collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn sector0(&self, p: f64, l_s: usize) -> Option<Estimate> {
        self.point(p, l_s).and_then(|pt| pt.sector0)
    }

    pub fn postselected(&self, p: f64, l_s: usize) -> Option<Estimate> {
        self.point(p, l_s).and_then(|pt| pt.postselected)
    }

    pub fn cv(&self, p: f64, pair: CvPair) -> Option<Estimate> {
        let even = self.sector0(p, pair.even)?;
        let odd = self.sector0(p, pair.odd())?;
        Some(extract_cv_estimate(&even, &odd, pair))
    }

    pub fn corrected(&self, p: f64, l_s: usize, pair: CvPair) -> Option<Estimate> {
        let d = self.sector0(p, l_s)?;
        let cv = self.cv(p, pair)?;
        let lever = l_s as f64 - 2.0;
        Some(Estimate {
            mean: corrected_fluctuation(d.mean, cv.mean, l_s),
            stderr: d.stderr.hypot(cv.stderr * lever),
            count: d.count,
        })
    }

    pub fn effective(&self, p: f64, l_s: usize, pair: CvPair, critical: CriticalPoint) -> Result<Option<Estimate>> {
        let (Some(d), Some(cv)) = (self.sector0(p, l_s), self.cv(p, pair)) else {
            return Ok(None);
        };
        let g = critical.weight(p, self.num_qubits)?;
        Ok(Some(Estimate {
            mean: effective_fluctuation(d.mean, cv.mean, l_s, p, critical, self.num_qubits)?,
            stderr: d.stderr.hypot(g * cv.stderr * (l_s as f64 - 2.0)),
            count: d.count,
        }))
    }

    pub fn rows(&self, pair: Option<CvPair>, critical: Option<CriticalPoint>) -> Result<Vec<CurveRow>> {
        let mut sorted = self.clone();
        sorted.sort();
        sorted
            .points
            .iter()
            .map(|pt| {
                let cv = pair.and_then(|pr| self.cv(pt.p, pr));
                let corrected = pair.and_then(|pr| self.corrected(pt.p, pt.l_s, pr));
                let effective = match (pair, critical) {
                    (Some(pr), Some(c)) => self.effective(pt.p, pt.l_s, pr, c)?,
                    _ => None,
                };
                Ok(CurveRow {
                    num_qubits: self.num_qubits,
                    p: pt.p,
                    l_s: pt.l_s,
                    raw: pt.raw.map(|e| e.mean),
                    sector0: pt.sector0.map(|e| e.mean),
                    cv: cv.map(|e| e.mean),
                    corrected: corrected.map(|e| e.mean),
                    effective: effective.map(|e| e.mean),
                    postselected_ref: pt.postselected.map(|e| e.mean),
                    stderr_raw: pt.raw.map(|e| e.stderr),
                    stderr_sector0: pt.sector0.map(|e| e.stderr),
                    stderr_cv: cv.map(|e| e.stderr),
                    stderr_postselected_ref: pt.postselected.map(|e| e.stderr),
                })
            })
            .collect()
    }

    /// Writes `# provenance`, a header row, then one row per `(p, L_s)`.
    pub fn write_csv<W: Write>(
        &self,
        mut out: W,
        provenance: &str,
        pair: Option<CvPair>,
        critical: Option<CriticalPoint>,
    ) -> Result<()> {
        writeln!(out, "# {provenance}")?;
        let mut w = csv::Writer::from_writer(out);
        for row in self.rows(pair, critical)? {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads curves written by [`write_csv`](Self::write_csv), one per `L`.
    /// Derived columns are ignored; they are recomputed on demand.
    pub fn read_csv<R: Read>(input: R) -> Result<Vec<FluctuationCurve>> {
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
        let mut curves: Vec<FluctuationCurve> = Vec::new();
        for row in reader.deserialize::<CurveRow>() {
            let row = row?;
            let idx = match curves.iter().position(|c| c.num_qubits == row.num_qubits) {
                Some(i) => i,
                None => {
                    curves.push(FluctuationCurve::new(row.num_qubits));
                    curves.len() - 1
                }
            };
            let pt = curves[idx].entry(row.p, row.l_s);
            pt.raw = estimate(row.raw, row.stderr_raw);
            pt.sector0 = estimate(row.sector0, row.stderr_sector0);
            pt.postselected = estimate(row.postselected_ref, row.stderr_postselected_ref);
        }
        curves.sort_by_key(|c| c.num_qubits);
        Ok(curves)
    }
}
