//! `analyze`: c_V, corrected and effective fluctuations, reconstructed
//! entropies and the scaling collapse.

use std::io::Write;

use mipt_core::circuit::AveragingMode;
use mipt_core::estimators::{reconstruct_entropy, CriticalPoint, CvPair, FluctuationCurve};
use mipt_core::scaling::{grid_search, odd_half_chain, CollapseInput, GridAxis};
use mipt_core::Estimate;
use serde::Serialize;

use crate::config::{Averaging, ExperimentConfig, Quantity};
use crate::error::{CliError, CliResult, IoContext};
use crate::layout::{create, open, Layout};
use crate::simulate::{load_references, ReferenceRow};

const STEER_HINT: &str = "run `mipt simulate` and `mipt steer` with the same config first";

/// One row of `entropy.csv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyRow {
    #[serde(rename = "L")]
    pub num_qubits: usize,
    pub p: f64,
    #[serde(rename = "L_s")]
    pub l_s: usize,
    pub effective: Option<f64>,
    pub stderr_effective: Option<f64>,
    pub s_reconstructed: Option<f64>,
    pub postselected_ref: Option<f64>,
    pub s_from_postselected: Option<f64>,
    pub s_exact: Option<f64>,
    pub stderr_s_exact: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Optimum {
    pub p_c: f64,
    pub nu: f64,
    pub cost: f64,
    pub quantity: Quantity,
    pub sizes: Vec<usize>,
    pub window: f64,
    pub weighted: bool,
}

/// The configured c_V pair, or `None` when the chain is too short for it.
pub fn cv_pair(config: &ExperimentConfig, num_qubits: usize) -> Option<CvPair> {
    let a = &config.analysis;
    let pair = if a.cv_even == 0 { CvPair::default_for(num_qubits) } else { CvPair::new(a.cv_even, a.cv_j) };
    match pair {
        Ok(pr) if pr.even <= num_qubits / 2 => Some(pr),
        _ => {
            eprintln!("analyze L={num_qubits}: no usable c_V pair; corrected columns left empty");
            None
        }
    }
}

fn primary_mode(averaging: Averaging) -> AveragingMode {
    match averaging {
        Averaging::Time => AveragingMode::Time,
        Averaging::Trajectory | Averaging::Both => AveragingMode::Trajectory,
    }
}

/// `y_L(p)` at the half chain for the configured quantity.
fn collapse_value(
    curve: &FluctuationCurve,
    quantity: Quantity,
    p: f64,
    pair: Option<CvPair>,
    critical: CriticalPoint,
) -> CliResult<Option<Estimate>> {
    let l_s = curve.num_qubits / 2;
    Ok(match quantity {
        Quantity::Sector0 => curve.sector0(p, l_s),
        Quantity::Postselected => curve.postselected(p, l_s),
        Quantity::Effective => match pair {
            Some(pr) => curve.effective(p, l_s, pr, critical)?,
            None => None,
        },
    })
}

pub fn run(config: &ExperimentConfig) -> CliResult<()> {
    let layout = Layout::new(config);
    let a = &config.analysis;
    let critical = CriticalPoint::new(a.p_c, a.nu);
    let references = load_references(&layout).unwrap_or_default();
    let mode = primary_mode(config.targets.averaging);
    let exact_entropy = |l: usize, p: f64, l_s: usize| -> Option<&ReferenceRow> {
        references.iter().find(|r| r.num_qubits == l && r.p == p && r.l_s == l_s && r.mode == mode)
    };

    let mut curves = Vec::new();
    let mut entropy_rows = Vec::new();
    for &l in &config.system.sizes {
        let curve_path = layout.curve(l);
        let curve = FluctuationCurve::read_csv(open(&curve_path, STEER_HINT)?)?
            .into_iter()
            .find(|c| c.num_qubits == l)
            .unwrap_or_else(|| FluctuationCurve::new(l));
        let pair = cv_pair(config, l);
        let path = layout.analysis(l);
        let mut out = create(&path)?;
        curve.write_csv(&mut out, layout.provenance(), pair, Some(critical))?;
        out.flush().at(&path)?;

        let mut sorted = curve.clone();
        sorted.sort();
        for pt in &sorted.points {
            let effective = match pair {
                Some(pr) => curve.effective(pt.p, pt.l_s, pr, critical)?,
                None => None,
            };
            let exact = exact_entropy(l, pt.p, pt.l_s);
            entropy_rows.push(EntropyRow {
                num_qubits: l,
                p: pt.p,
                l_s: pt.l_s,
                effective: effective.map(|e| e.mean),
                stderr_effective: effective.map(|e| e.stderr),
                s_reconstructed: effective.and_then(|e| reconstruct_entropy(e.mean, a.a).ok()),
                postselected_ref: pt.postselected.map(|e| e.mean),
                s_from_postselected: pt.postselected.and_then(|e| reconstruct_entropy(e.mean, a.a).ok()),
                s_exact: exact.and_then(|r| r.von_neumann),
                stderr_s_exact: exact.and_then(|r| r.stderr_von_neumann),
            });
        }
        curves.push((curve, pair));
    }
    let path = layout.file("entropy.csv");
    let mut out = create(&path)?;
    writeln!(out, "# {}", layout.provenance()).at(&path)?;
    let mut w = csv::Writer::from_writer(out);
    for r in &entropy_rows {
        w.serialize(r)?;
    }
    w.flush().at(&path)?;
    drop(w);

    collapse(config, &layout, &curves, critical)
}

fn collapse(
    config: &ExperimentConfig,
    layout: &Layout,
    curves: &[(FluctuationCurve, Option<CvPair>)],
    critical: CriticalPoint,
) -> CliResult<()> {
    let a = &config.analysis;
    let rates = &config.system.rates;
    let selected: Vec<&(FluctuationCurve, Option<CvPair>)> = curves
        .iter()
        .filter(|(c, _)| !a.odd_half_chain || odd_half_chain(c.num_qubits))
        .collect();
    if selected.len() < 2 {
        return Err(CliError::InsufficientData(format!(
            "scaling collapse needs at least two system sizes, {} selected",
            selected.len()
        )));
    }
    let mut values = Vec::new();
    let mut errors = Vec::new();
    for (curve, pair) in &selected {
        let mut ys = Vec::with_capacity(rates.len());
        let mut es = Vec::with_capacity(rates.len());
        for &p in rates {
            let Some(e) = collapse_value(curve, a.quantity, p, *pair, critical)? else {
                return Err(CliError::InsufficientData(format!(
                    "L={} p={p}: no {:?} value at L_s={} for the collapse",
                    curve.num_qubits,
                    a.quantity,
                    curve.num_qubits / 2
                )));
            };
            ys.push(e.mean);
            es.push(e.stderr);
        }
        values.push(ys);
        errors.push(es);
    }
    let sizes: Vec<usize> = selected.iter().map(|(c, _)| c.num_qubits).collect();
    let mut input = CollapseInput::new(sizes.clone(), rates.clone(), values)?
        .with_window(a.window)
        .with_samples(a.samples);
    if a.weighted {
        input = input.with_errors(errors)?;
    }
    let axis = |g: [f64; 3]| GridAxis::new(g[0], g[1], g[2]);
    let result = grid_search(&input, axis(a.p_c_grid), axis(a.nu_grid))?;

    let path = layout.file("collapse_heatmap.csv");
    let mut out = create(&path)?;
    result.write_heatmap(&mut out, layout.provenance())?;
    out.flush().at(&path)?;
    let path = layout.file("collapse_scatter.csv");
    let mut out = create(&path)?;
    result.write_scatter(&mut out, layout.provenance())?;
    out.flush().at(&path)?;
    let optimum = Optimum {
        p_c: result.p_c,
        nu: result.nu,
        cost: result.cost,
        quantity: a.quantity,
        sizes,
        window: a.window,
        weighted: a.weighted,
    };
    let path = layout.file("optimum.json");
    let mut out = create(&path)?;
    serde_json::to_writer_pretty(&mut out, &optimum)?;
    writeln!(out).at(&path)?;
    out.flush().at(&path)?;
    eprintln!("analyze: collapse optimum p_c={} nu={} C={:.4e}", result.p_c, result.nu, result.cost);
    Ok(())
}
