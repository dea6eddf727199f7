//! Shot-level estimators: sector filtering, per-target variances, the
//! parasitic volume-law coefficient, corrections and entropy reconstruction.

pub mod curve;
pub mod fluctuation;
pub mod histogram;
pub mod relation;
pub mod sector;

pub use curve::{average_ensembles, CurvePoint, CurveRow, EnsembleSummary, FluctuationCurve};
pub use fluctuation::{
    average_over_targets, bootstrap_cv, corrected_fluctuation, effective_fluctuation, extract_cv,
    extract_cv_estimate, pooled_variance, reconstruct_entropy, step_function, CriticalPoint,
    CvPair, DEFAULT_LOW_SLOPE,
};
pub use histogram::{exact_histogram, shot_histogram, total_variation, ChargeHistogram};
pub use relation::{fit_entropy_fluctuation_relation, RelationFit, KNEE};
pub use sector::{
    filter_sector, sample_variance, sector_fraction, sector_stats, variance_of, SectorStats,
    SubsystemMoments,
};
