//! Anomaly-detection evaluation: ROC curves, AUC, background rejection at
//! fixed signal efficiency, quantum/classical performance ratios, and k-fold
//! test statistics.
//!
//! Scores follow the convention "higher = more anomalous". Signal efficiency
//! ε_s is the true positive rate, background efficiency ε_b the false
//! positive rate; ε_b⁻¹ is the background rejection.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeding;

/// ROC curve as threshold-descending vertices; tpr/fpr are non-decreasing
/// along the curve and the endpoints (0,0) and (1,1) are always present.
#[derive(Clone, Debug, PartialEq)]
pub struct RocCurve {
    pub thresholds: Vec<f64>,
    pub tpr: Vec<f64>,
    pub fpr: Vec<f64>,
}

impl RocCurve {
    /// Validates vertex arrays produced elsewhere (e.g. loaded from CSV).
    pub fn new(thresholds: Vec<f64>, tpr: Vec<f64>, fpr: Vec<f64>) -> Result<Self> {
        if thresholds.len() != tpr.len() || tpr.len() != fpr.len() || tpr.is_empty() {
            return Err(Error::Config("ROC arrays must be non-empty and equal-length".into()));
        }
        let non_decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] >= w[0]);
        if !non_decreasing(&tpr) || !non_decreasing(&fpr) {
            return Err(Error::Config("ROC rates must be non-decreasing".into()));
        }
        if tpr[0] != 0.0 || fpr[0] != 0.0 {
            return Err(Error::Config("ROC curve must start at (0, 0)".into()));
        }
        let last = tpr.len() - 1;
        if tpr[last] != 1.0 || fpr[last] != 1.0 {
            return Err(Error::Config("ROC curve must end at (1, 1)".into()));
        }
        Ok(Self { thresholds, tpr, fpr })
    }

    pub fn len(&self) -> usize {
        self.tpr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tpr.is_empty()
    }
}

/// Threshold sweep over the union of the observed scores. Each distinct score
/// s contributes the operating point of the classifier "flag everything with
/// score ≥ s".
pub fn roc_curve(scores_background: &[f64], scores_signal: &[f64]) -> Result<RocCurve> {
    if scores_background.is_empty() || scores_signal.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut all: Vec<f64> = scores_background
        .iter()
        .chain(scores_signal)
        .copied()
        .collect();
    if all.iter().any(|v| v.is_nan()) {
        return Err(Error::Numerical("NaN score".into()));
    }
    all.sort_by(|a, b| b.partial_cmp(a).unwrap());
    all.dedup();

    let mut sig_sorted = scores_signal.to_vec();
    sig_sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut bg_sorted = scores_background.to_vec();
    bg_sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let n_sig = scores_signal.len() as f64;
    let n_bg = scores_background.len() as f64;

    let mut thresholds = Vec::with_capacity(all.len() + 1);
    let mut tpr = Vec::with_capacity(all.len() + 1);
    let mut fpr = Vec::with_capacity(all.len() + 1);
    thresholds.push(f64::INFINITY);
    tpr.push(0.0);
    fpr.push(0.0);

    let mut sig_idx = 0usize;
    let mut bg_idx = 0usize;
    for &threshold in &all {
        while sig_idx < sig_sorted.len() && sig_sorted[sig_idx] >= threshold {
            sig_idx += 1;
        }
        while bg_idx < bg_sorted.len() && bg_sorted[bg_idx] >= threshold {
            bg_idx += 1;
        }
        thresholds.push(threshold);
        tpr.push(sig_idx as f64 / n_sig);
        fpr.push(bg_idx as f64 / n_bg);
    }
    // The lowest threshold accepts everything, so the curve ends at (1, 1).
    RocCurve::new(thresholds, tpr, fpr)
}

/// Trapezoidal area under the curve. With the midrank tie convention this
/// equals the Mann–Whitney statistic U / (n_signal · n_background).
pub fn auc(curve: &RocCurve) -> f64 {
    let mut area = 0.0;
    for w in 0..curve.len() - 1 {
        let dx = curve.fpr[w + 1] - curve.fpr[w];
        area += dx * 0.5 * (curve.tpr[w + 1] + curve.tpr[w]);
    }
    area.clamp(0.0, 1.0)
}

/// ε_b⁻¹ at a working point; `Unbounded` when the interpolated background
/// efficiency is exactly zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BackgroundRejection {
    Finite(f64),
    Unbounded,
}

impl BackgroundRejection {
    pub fn as_finite(&self) -> Option<f64> {
        match self {
            BackgroundRejection::Finite(v) => Some(*v),
            BackgroundRejection::Unbounded => None,
        }
    }
}

/// 1/ε_b at signal efficiency `eps_s`, with ε_b linearly interpolated between
/// the adjacent ROC vertices.
pub fn inverse_background_efficiency(
    curve: &RocCurve,
    eps_s: f64,
) -> Result<BackgroundRejection> {
    if !(eps_s > 0.0 && eps_s < 1.0) {
        return Err(Error::Config(format!(
            "signal efficiency {eps_s} outside (0, 1)"
        )));
    }
    let hi = curve
        .tpr
        .iter()
        .position(|&t| t >= eps_s)
        .expect("curve ends at tpr = 1");
    let eps_b = if curve.tpr[hi] == eps_s || hi == 0 {
        curve.fpr[hi]
    } else {
        let (t0, t1) = (curve.tpr[hi - 1], curve.tpr[hi]);
        let (f0, f1) = (curve.fpr[hi - 1], curve.fpr[hi]);
        f0 + (eps_s - t0) * (f1 - f0) / (t1 - t0)
    };
    if eps_b <= 0.0 {
        Ok(BackgroundRejection::Unbounded)
    } else {
        Ok(BackgroundRejection::Finite(1.0 / eps_b))
    }
}

/// Δ_QC(ε_s): quantum-to-classical ratio of background rejections. When both
/// rejections are unbounded the models are indistinguishable at the working
/// point and the ratio is 1; an unbounded classical rejection against a
/// finite quantum one makes the ratio undefined; the reverse returns +∞.
pub fn delta_qc(quantum: &RocCurve, classical: &RocCurve, eps_s: f64) -> Result<f64> {
    let q = inverse_background_efficiency(quantum, eps_s)?;
    let c = inverse_background_efficiency(classical, eps_s)?;
    match (q, c) {
        (BackgroundRejection::Unbounded, BackgroundRejection::Unbounded) => Ok(1.0),
        (BackgroundRejection::Finite(_), BackgroundRejection::Unbounded) => {
            Err(Error::UndefinedRatio)
        }
        (BackgroundRejection::Unbounded, BackgroundRejection::Finite(_)) => Ok(f64::INFINITY),
        (BackgroundRejection::Finite(q), BackgroundRejection::Finite(c)) => Ok(q / c),
    }
}

/// Per-working-point fold statistics. `mean`/`std` are `None` when any fold
/// hit an unbounded rejection (serialized as JSON null).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorkingPointStats {
    pub eps_s: f64,
    pub mean: Option<f64>,
    /// Population standard deviation across folds.
    pub std: Option<f64>,
    pub capped_folds: usize,
    /// Per-fold ε_b⁻¹; null entries are unbounded folds.
    pub per_fold: Vec<Option<f64>>,
}

/// K-fold evaluation summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub folds: usize,
    pub auc_mean: f64,
    pub auc_std: f64,
    pub auc_per_fold: Vec<f64>,
    pub rejection_06: WorkingPointStats,
    pub rejection_08: WorkingPointStats,
}

fn mean_and_population_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn working_point_stats(eps_s: f64, per_fold: &[BackgroundRejection]) -> WorkingPointStats {
    let capped_folds = per_fold
        .iter()
        .filter(|r| matches!(r, BackgroundRejection::Unbounded))
        .count();
    let (mean, std) = if capped_folds == 0 {
        let finite: Vec<f64> = per_fold.iter().filter_map(|r| r.as_finite()).collect();
        let (m, s) = mean_and_population_std(&finite);
        (Some(m), Some(s))
    } else {
        (None, None)
    };
    WorkingPointStats {
        eps_s,
        mean,
        std,
        capped_folds,
        per_fold: per_fold.iter().map(|r| r.as_finite()).collect(),
    }
}

/// The disjoint per-fold (background, signal) score sets used by both
/// [`kfold_eval`] and [`kfold_roc_curves`]: each class is shuffled under the
/// seed and split into contiguous chunks whose sizes differ by at most one.
fn fold_scores(
    scores_background: &[f64],
    scores_signal: &[f64],
    folds: usize,
    rng_seed: u64,
) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    if folds == 0 {
        return Err(Error::Config("fold count must be >= 1".into()));
    }
    if scores_background.len() < folds || scores_signal.len() < folds {
        return Err(Error::InsufficientData(format!(
            "need at least {folds} samples per class for {folds}-fold testing"
        )));
    }

    let shuffle = |scores: &[f64], stream: u64| -> Vec<f64> {
        use rand::seq::SliceRandom;
        let mut rng = seeding::rng_for(rng_seed, stream);
        let mut v = scores.to_vec();
        v.shuffle(&mut rng);
        v
    };
    let bg = shuffle(scores_background, 0);
    let sig = shuffle(scores_signal, 1);

    let chunk = |v: &[f64], fold: usize| -> Vec<f64> {
        let n = v.len();
        let base = n / folds;
        let extra = n % folds;
        let start = fold * base + fold.min(extra);
        let len = base + usize::from(fold < extra);
        v[start..start + len].to_vec()
    };
    Ok((0..folds)
        .map(|fold| (chunk(&bg, fold), chunk(&sig, fold)))
        .collect())
}

/// One ROC curve per fold, over the same folds as [`kfold_eval`].
pub fn kfold_roc_curves(
    scores_background: &[f64],
    scores_signal: &[f64],
    folds: usize,
    rng_seed: u64,
) -> Result<Vec<RocCurve>> {
    fold_scores(scores_background, scores_signal, folds, rng_seed)?
        .iter()
        .map(|(bg, sig)| roc_curve(bg, sig))
        .collect()
}

/// Shuffles each class under the seed, splits both into `folds` disjoint
/// folds, and reports per-fold AUC and ε_b⁻¹ at ε_s ∈ {0.6, 0.8} with mean
/// and population standard deviation.
pub fn kfold_eval(
    scores_background: &[f64],
    scores_signal: &[f64],
    folds: usize,
    rng_seed: u64,
) -> Result<EvalReport> {
    let mut aucs = Vec::with_capacity(folds);
    let mut rej06 = Vec::with_capacity(folds);
    let mut rej08 = Vec::with_capacity(folds);
    for (fold_bg, fold_sig) in fold_scores(scores_background, scores_signal, folds, rng_seed)? {
        let curve = roc_curve(&fold_bg, &fold_sig)?;
        aucs.push(auc(&curve));
        rej06.push(inverse_background_efficiency(&curve, 0.6)?);
        rej08.push(inverse_background_efficiency(&curve, 0.8)?);
    }

    let (auc_mean, auc_std) = mean_and_population_std(&aucs);
    Ok(EvalReport {
        folds,
        auc_mean,
        auc_std,
        auc_per_fold: aucs,
        rejection_06: working_point_stats(0.6, &rej06),
        rejection_08: working_point_stats(0.8, &rej08),
    })
}

/// CSV export: `threshold,tpr,fpr`, one vertex per line.
pub fn write_roc_csv<W: Write>(curve: &RocCurve, w: &mut W) -> Result<()> {
    writeln!(w, "threshold,tpr,fpr")?;
    for i in 0..curve.len() {
        writeln!(w, "{},{},{}", curve.thresholds[i], curve.tpr[i], curve.fpr[i])?;
    }
    Ok(())
}
