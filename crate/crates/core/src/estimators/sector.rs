//! Sector filtering and sample variances of steered readouts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::ShotRecord;
use crate::error::{Error, Result};

/// Shots whose terminal total charge equals `sector`, in original order.
pub fn filter_sector(shots: &[ShotRecord], sector: i32) -> Vec<ShotRecord> {
    shots.iter().filter(|s| s.total_charge == sector).copied().collect()
}

/// Fraction of shots landing in `sector`.
pub fn sector_fraction(shots: &[ShotRecord], sector: i32) -> f64 {
    if shots.is_empty() {
        return 0.0;
    }
    shots.iter().filter(|s| s.total_charge == sector).count() as f64 / shots.len() as f64
}

/// `(1/n) sum (z_i - mean)^2`, times `n/(n-1)` when `unbiased`.
pub fn variance_of(values: &[f64], unbiased: bool) -> Result<f64> {
    let needed = if unbiased { 2 } else { 1 };
    if values.len() < needed {
        return Err(Error::InsufficientData { needed, got: values.len() });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    Ok(if unbiased { ss / (n - 1.0) } else { ss / n })
}

/// Sample variance of the subsystem charge `z_{l_s}` over `shots`.
pub fn sample_variance(shots: &[ShotRecord], l_s: usize, unbiased: bool) -> Result<f64> {
    let z: Vec<f64> = shots.iter().map(|s| s.subsystem_charge(l_s) as f64).collect();
    variance_of(&z, unbiased)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsystemMoments {
    pub l_s: usize,
    pub mean: f64,
    /// `None` when the sector holds too few shots.
    pub variance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorStats {
    pub sector: i32,
    pub count: usize,
    pub subsystems: Vec<SubsystemMoments>,
}

/// Per-sector counts, means and variances for each subsystem length.
pub fn sector_stats(shots: &[ShotRecord], lengths: &[usize], unbiased: bool) -> Vec<SectorStats> {
    let mut by_sector: BTreeMap<i32, Vec<ShotRecord>> = BTreeMap::new();
    for s in shots {
        by_sector.entry(s.total_charge).or_default().push(*s);
    }
    by_sector
        .into_iter()
        .map(|(sector, members)| SectorStats {
            sector,
            count: members.len(),
            subsystems: lengths
                .iter()
                .map(|&l_s| {
                    let z: Vec<f64> =
                        members.iter().map(|s| s.subsystem_charge(l_s) as f64).collect();
                    SubsystemMoments {
                        l_s,
                        mean: z.iter().sum::<f64>() / z.len() as f64,
                        variance: variance_of(&z, unbiased).ok(),
                    }
                })
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shot(run: usize, bits: &str) -> ShotRecord {
        let readout = bits.chars().enumerate().fold(0u32, |acc, (n, c)| {
            if c == '1' { acc | (1 << n) } else { acc }
        });
        ShotRecord::new(run, bits.len(), readout, 0)
    }

    #[test]
    fn filtering_keeps_matching_shots_in_order() {
        let shots = vec![shot(0, "0101"), shot(1, "0000"), shot(2, "1010")];
        assert_eq!(shots[1].total_charge, 4);
        let kept = filter_sector(&shots, 0);
        assert_eq!(kept.iter().map(|s| s.run).collect::<Vec<_>>(), vec![0, 2]);
        assert!(filter_sector(&shots, 1).is_empty());
        let mut union: Vec<ShotRecord> =
            (-4..=4).flat_map(|q| filter_sector(&shots, q)).collect();
        union.sort_by_key(|s| s.run);
        assert_eq!(union, shots);
    }

    #[test]
    fn variance_arithmetic() {
        let z = [0.0, 2.0, -2.0, 0.0];
        assert!((variance_of(&z, false).unwrap() - 2.0).abs() < 1e-15);
        assert!((variance_of(&z, true).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        assert_eq!(variance_of(&[3.0; 6], true).unwrap(), 0.0);
        assert!(matches!(variance_of(&[1.0], true), Err(Error::InsufficientData { needed: 2, got: 1 })));
        assert!(variance_of(&[1.0], false).is_ok());
    }

    #[test]
    fn stats_partition_shots() {
        let shots = vec![shot(0, "0101"), shot(1, "0000"), shot(2, "1010"), shot(3, "0110")];
        let stats = sector_stats(&shots, &[1, 2], true);
        assert_eq!(stats.iter().map(|s| s.count).sum::<usize>(), shots.len());
        let zero = stats.iter().find(|s| s.sector == 0).unwrap();
        assert_eq!(zero.count, 3);
        assert!(zero.subsystems.iter().all(|m| m.variance.unwrap() >= 0.0));
        let four = stats.iter().find(|s| s.sector == 4).unwrap();
        assert_eq!(four.subsystems[0].variance, None);
    }
}
