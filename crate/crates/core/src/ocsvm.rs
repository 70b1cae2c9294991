//! Unsupervised one-class kernel machine.
//!
//! Training solves the dual
//!
//! ```text
//! min ½ αᵀKα   subject to   0 ≤ α_i ≤ 1/(νN),  Σα_i = 1
//! ```
//!
//! by pairwise coordinate descent on the maximal violating pair (SMO-style).
//! The contract is the KKT tolerance, not the algorithm: at the solution the
//! maximal violation max{(Kα)_j : α_j > 0} − min{(Kα)_i : α_i < 1/(νN)} is
//! below 1e-6. The anomaly score of a point x is ρ − Σ_i α_i k(x, x_i);
//! higher means more anomalous.

use std::io::{BufRead, BufReader, Read, Write};

use crate::data::FeatureMatrix;
use crate::encoding::EncodingConfig;
use crate::error::{Error, Result};
use crate::qkernel::{ClassicalKernelKind, KernelMatrix, KernelMode};

const KKT_TOLERANCE: f64 = 1e-6;
const SOLVER_TARGET: f64 = 1e-9;
const MAX_PAIR_UPDATES: usize = 2_000_000;

/// Trained dual weights of the one-class kernel machine.
#[derive(Clone, Debug, PartialEq)]
pub struct OcsvmModel {
    /// Dual weights; 0 ≤ α_i ≤ 1/(νN) and Σα_i = 1.
    pub alphas: Vec<f64>,
    /// Hyperplane offset ρ.
    pub rho_offset: f64,
    pub nu: f64,
    /// Row indices of the training Gram matrix the weights refer to.
    pub training_ids: Vec<usize>,
}

impl OcsvmModel {
    pub fn n_train(&self) -> usize {
        self.alphas.len()
    }
}

/// ½ αᵀKα, the dual objective.
pub fn dual_objective(k: &KernelMatrix, alphas: &[f64]) -> f64 {
    let n = alphas.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += alphas[i] * alphas[j] * k.values[(i, j)];
        }
    }
    0.5 * total
}

fn gradient(k: &KernelMatrix, alphas: &[f64]) -> Vec<f64> {
    let n = alphas.len();
    (0..n)
        .map(|i| (0..n).map(|j| k.values[(i, j)] * alphas[j]).sum())
        .collect()
}

/// Trains on a square training Gram matrix. Shot-sampled matrices must be
/// PSD-repaired first; νN must be at least 1 for the box constraint to admit
/// a feasible point.
pub fn train(k: &KernelMatrix, nu: f64) -> Result<OcsvmModel> {
    if !k.is_square() {
        return Err(Error::NotSquare {
            rows: k.n_rows(),
            cols: k.n_cols(),
        });
    }
    let n = k.n_rows();
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(Error::Config(format!("nu {nu} outside (0, 1]")));
    }
    if nu * (n as f64) < 1.0 {
        return Err(Error::Config(format!(
            "nu*N = {} < 1 makes the box constraint infeasible; raise nu or N",
            nu * n as f64
        )));
    }
    if matches!(k.mode, KernelMode::Shots(_)) && !k.psd_repaired {
        return Err(Error::MustRepair);
    }
    let max_asymmetry = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| (k.values[(i, j)] - k.values[(j, i)]).abs())
        .fold(0.0, f64::max);
    if max_asymmetry > 1e-8 {
        return Err(Error::NotSymmetric { max_asymmetry });
    }

    let upper = 1.0 / (nu * n as f64);
    let mut alphas = vec![1.0 / n as f64; n];
    let mut grad = gradient(k, &alphas);

    let mut updates = 0usize;
    let violation = loop {
        // Maximal violating pair: i can grow (α_i < upper), j can shrink.
        let mut i_up = usize::MAX;
        let mut j_down = usize::MAX;
        for t in 0..n {
            if alphas[t] < upper && (i_up == usize::MAX || grad[t] < grad[i_up]) {
                i_up = t;
            }
            if alphas[t] > 0.0 && (j_down == usize::MAX || grad[t] > grad[j_down]) {
                j_down = t;
            }
        }
        if i_up == usize::MAX || j_down == usize::MAX {
            break 0.0;
        }
        let violation = grad[j_down] - grad[i_up];
        if violation < SOLVER_TARGET || updates >= MAX_PAIR_UPDATES {
            break violation;
        }

        let (i, j) = (i_up, j_down);
        let eta = k.values[(i, i)] + k.values[(j, j)] - 2.0 * k.values[(i, j)];
        let unconstrained = if eta > 1e-15 { violation / eta } else { f64::INFINITY };
        let cap_i = upper - alphas[i];
        let cap_j = alphas[j];
        let step = unconstrained.min(cap_i).min(cap_j);
        if step <= 0.0 {
            break violation;
        }
        for t in 0..n {
            grad[t] += step * (k.values[(t, i)] - k.values[(t, j)]);
        }
        // Land exactly on the bound when the step is capped, so bound sets
        // stay exact under float arithmetic.
        if step == cap_i {
            alphas[i] = upper;
        } else {
            alphas[i] += step;
        }
        if step == cap_j {
            alphas[j] = 0.0;
        } else {
            alphas[j] -= step;
        }
        updates += 1;
        if updates % 50_000 == 0 {
            grad = gradient(k, &alphas);
        }
    };
    if violation > KKT_TOLERANCE {
        return Err(Error::Numerical(format!(
            "one-class solver stalled at KKT violation {violation:e} after {updates} updates"
        )));
    }

    let grad = gradient(k, &alphas);
    let bound_eps = upper * 1e-9;
    let margin: Vec<usize> = (0..n)
        .filter(|&i| alphas[i] > bound_eps && alphas[i] < upper - bound_eps)
        .collect();
    let rho_offset = if !margin.is_empty() {
        margin.iter().map(|&i| grad[i]).sum::<f64>() / margin.len() as f64
    } else {
        let hi = (0..n)
            .filter(|&i| alphas[i] >= upper - bound_eps)
            .map(|i| grad[i])
            .fold(f64::NEG_INFINITY, f64::max);
        let lo = (0..n)
            .filter(|&i| alphas[i] <= bound_eps)
            .map(|i| grad[i])
            .fold(f64::INFINITY, f64::min);
        match (hi.is_finite(), lo.is_finite()) {
            (true, true) => 0.5 * (hi + lo),
            (true, false) => hi,
            (false, true) => lo,
            (false, false) => {
                return Err(Error::Numerical("no support vectors after training".into()))
            }
        }
    };

    Ok(OcsvmModel {
        alphas,
        rho_offset,
        nu,
        training_ids: (0..n).collect(),
    })
}

/// Anomaly score ρ − Σ_i α_i k_row[i] for a cross-kernel row against the
/// training set; higher = more anomalous.
pub fn score(model: &OcsvmModel, k_row: &[f64]) -> Result<f64> {
    if k_row.len() != model.alphas.len() {
        return Err(Error::DimensionMismatch {
            expected: model.alphas.len(),
            got: k_row.len(),
        });
    }
    let decision: f64 = model
        .alphas
        .iter()
        .zip(k_row)
        .map(|(a, k)| a * k)
        .sum();
    Ok(model.rho_offset - decision)
}

/// Fraction of training points scored as outliers (score > 1e-9); bounded by
/// ν up to the 1/N discretization.
pub fn training_outlier_fraction(model: &OcsvmModel, k: &KernelMatrix) -> Result<f64> {
    if !k.is_square() {
        return Err(Error::NotSquare {
            rows: k.n_rows(),
            cols: k.n_cols(),
        });
    }
    let n = model.alphas.len();
    if k.n_rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k.n_rows(),
        });
    }
    let grad = gradient(k, &model.alphas);
    let outliers = grad
        .iter()
        .filter(|&&g| model.rho_offset - g > 1e-9)
        .count();
    Ok(outliers as f64 / n as f64)
}

// ---------------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------------

/// The kernel a trained one-class machine scores with.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelSpec {
    Quantum(EncodingConfig),
    Classical(ClassicalKernelKind),
}

/// A trained one-class machine together with everything scoring needs: the
/// kernel definition and the training feature rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SavedOcsvm {
    pub model: OcsvmModel,
    pub kernel: KernelSpec,
    pub train_features: FeatureMatrix,
}

fn write_float(value: f64) -> String {
    format!("{value:.16e}")
}

impl SavedOcsvm {
    /// Plain-text record: header fields, then α values one per line at 17
    /// significant digits, then the training feature rows.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "QADOCSVM 1")?;
        match &self.kernel {
            KernelSpec::Quantum(config) => {
                writeln!(
                    w,
                    "kernel quantum n_qubits={} depth={} entanglement={} angle_scale={}",
                    config.n_qubits,
                    config.depth,
                    config.entanglement,
                    write_float(config.angle_scale)
                )?;
            }
            KernelSpec::Classical(kind) => match kind {
                ClassicalKernelKind::Rbf { gamma } => {
                    writeln!(w, "kernel rbf gamma={}", write_float(*gamma))?
                }
                ClassicalKernelKind::Linear => writeln!(w, "kernel linear")?,
                ClassicalKernelKind::Polynomial { degree, coef0, gamma } => writeln!(
                    w,
                    "kernel polynomial degree={} coef0={} gamma={}",
                    degree,
                    write_float(*coef0),
                    write_float(*gamma)
                )?,
                ClassicalKernelKind::Sigmoid { gamma, coef0 } => writeln!(
                    w,
                    "kernel sigmoid gamma={} coef0={}",
                    write_float(*gamma),
                    write_float(*coef0)
                )?,
            },
        }
        writeln!(w, "nu {}", write_float(self.model.nu))?;
        writeln!(w, "rho {}", write_float(self.model.rho_offset))?;
        writeln!(w, "n_train {}", self.model.n_train())?;
        writeln!(w, "alpha")?;
        for a in &self.model.alphas {
            writeln!(w, "{}", write_float(*a))?;
        }
        writeln!(
            w,
            "train_features {} {}",
            self.train_features.n_rows(),
            self.train_features.dim()
        )?;
        for row in self.train_features.rows() {
            let line: Vec<String> = row.iter().map(|v| write_float(*v)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        writeln!(w, "end")?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let reader = BufReader::new(r);
        let mut lines = reader.lines();
        let mut next_line = |what: &str| -> Result<String> {
            lines
                .next()
                .transpose()?
                .ok_or_else(|| Error::Format(format!("model file ended before {what}")))
        };

        let header = next_line("header")?;
        if header.trim() != "QADOCSVM 1" {
            return Err(Error::Format(format!(
                "unexpected model header {header:?}"
            )));
        }

        let kernel_line = next_line("kernel")?;
        let kernel = parse_kernel_line(&kernel_line)?;
        let nu = parse_field(&next_line("nu")?, "nu")?;
        let rho_offset = parse_field(&next_line("rho")?, "rho")?;
        let n_train: usize = parse_field(&next_line("n_train")?, "n_train")?;

        let marker = next_line("alpha block")?;
        if marker.trim() != "alpha" {
            return Err(Error::Format(format!("expected alpha block, got {marker:?}")));
        }
        let mut alphas = Vec::with_capacity(n_train);
        for _ in 0..n_train {
            let line = next_line("alpha value")?;
            alphas.push(
                line.trim()
                    .parse()
                    .map_err(|_| Error::Format(format!("bad alpha value {line:?}")))?,
            );
        }

        let features_line = next_line("train_features")?;
        let parts: Vec<&str> = features_line.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "train_features" {
            return Err(Error::Format(format!(
                "expected train_features header, got {features_line:?}"
            )));
        }
        let rows: usize = parts[1]
            .parse()
            .map_err(|_| Error::Format("bad train_features row count".into()))?;
        let dim: usize = parts[2]
            .parse()
            .map_err(|_| Error::Format("bad train_features dimension".into()))?;
        let mut data = Vec::with_capacity(rows * dim);
        for _ in 0..rows {
            let line = next_line("training row")?;
            for cell in line.split(',') {
                data.push(
                    cell.trim()
                        .parse()
                        .map_err(|_| Error::Format(format!("bad feature value {cell:?}")))?,
                );
            }
        }
        let end = next_line("end marker")?;
        if end.trim() != "end" {
            return Err(Error::Format(format!("expected end marker, got {end:?}")));
        }

        Ok(SavedOcsvm {
            model: OcsvmModel {
                alphas,
                rho_offset,
                nu,
                training_ids: (0..n_train).collect(),
            },
            kernel,
            train_features: FeatureMatrix::new(data, rows, dim)?,
        })
    }
}

fn parse_field<T: std::str::FromStr>(line: &str, name: &str) -> Result<T> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next()) {
        (Some(key), Some(value)) if key == name => value
            .parse()
            .map_err(|_| Error::Format(format!("bad {name} value {value:?}"))),
        _ => Err(Error::Format(format!("expected \"{name} <value>\", got {line:?}"))),
    }
}

fn parse_kv(token: &str, key: &str) -> Result<String> {
    token
        .strip_prefix(key)
        .and_then(|s| s.strip_prefix('='))
        .map(str::to_string)
        .ok_or_else(|| Error::Format(format!("expected {key}=<value>, got {token:?}")))
}

fn parse_kernel_line(line: &str) -> Result<KernelSpec> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.first() != Some(&"kernel") {
        return Err(Error::Format(format!("expected kernel line, got {line:?}")));
    }
    match parts.get(1) {
        Some(&"quantum") if parts.len() == 6 => {
            let n_qubits: usize = parse_kv(parts[2], "n_qubits")?
                .parse()
                .map_err(|_| Error::Format("bad n_qubits".into()))?;
            let depth: usize = parse_kv(parts[3], "depth")?
                .parse()
                .map_err(|_| Error::Format("bad depth".into()))?;
            let entanglement: bool = parse_kv(parts[4], "entanglement")?
                .parse()
                .map_err(|_| Error::Format("bad entanglement flag".into()))?;
            let angle_scale: f64 = parse_kv(parts[5], "angle_scale")?
                .parse()
                .map_err(|_| Error::Format("bad angle_scale".into()))?;
            Ok(KernelSpec::Quantum(
                EncodingConfig::new(n_qubits, depth, entanglement)?.with_angle_scale(angle_scale),
            ))
        }
        Some(&"rbf") if parts.len() == 3 => Ok(KernelSpec::Classical(ClassicalKernelKind::Rbf {
            gamma: parse_kv(parts[2], "gamma")?
                .parse()
                .map_err(|_| Error::Format("bad gamma".into()))?,
        })),
        Some(&"linear") => Ok(KernelSpec::Classical(ClassicalKernelKind::Linear)),
        Some(&"polynomial") if parts.len() == 5 => {
            Ok(KernelSpec::Classical(ClassicalKernelKind::Polynomial {
                degree: parse_kv(parts[2], "degree")?
                    .parse()
                    .map_err(|_| Error::Format("bad degree".into()))?,
                coef0: parse_kv(parts[3], "coef0")?
                    .parse()
                    .map_err(|_| Error::Format("bad coef0".into()))?,
                gamma: parse_kv(parts[4], "gamma")?
                    .parse()
                    .map_err(|_| Error::Format("bad gamma".into()))?,
            }))
        }
        Some(&"sigmoid") if parts.len() == 4 => {
            Ok(KernelSpec::Classical(ClassicalKernelKind::Sigmoid {
                gamma: parse_kv(parts[2], "gamma")?
                    .parse()
                    .map_err(|_| Error::Format("bad gamma".into()))?,
                coef0: parse_kv(parts[3], "coef0")?
                    .parse()
                    .map_err(|_| Error::Format("bad coef0".into()))?,
            }))
        }
        _ => Err(Error::Format(format!("unrecognized kernel line {line:?}"))),
    }
}
