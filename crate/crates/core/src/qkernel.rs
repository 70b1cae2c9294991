//! Quantum fidelity kernels and classical benchmark kernels: Gram matrices
//! (ideal and shot-sampled), purity diagnostics, and nearest-PSD repair.
//!
//! Gram entries are independent pure computations; matrix builds are
//! data-parallel over entries and bitwise independent of the worker count.
//! Shot sampling derives a per-entry RNG stream from the global seed and the
//! entry coordinates, so sampled matrices are reproducible in parallel too.

use nalgebra::{DMatrix, SymmetricEigen};
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::FeatureMatrix;
use crate::encoding::{encode, EncodingConfig};
use crate::error::{Error, Result};
use crate::seeding;
use crate::statevector::StateVector;

/// How the entries of a kernel matrix were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelMode {
    Ideal,
    Shots(u64),
}

/// Build instruction for Gram-matrix construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelBuild {
    Ideal,
    Shots { shots: u64, seed: u64 },
}

impl KernelBuild {
    fn mode(&self) -> KernelMode {
        match self {
            KernelBuild::Ideal => KernelMode::Ideal,
            KernelBuild::Shots { shots, .. } => KernelMode::Shots(*shots),
        }
    }
}

/// Gram matrix with provenance. Square ideal quantum matrices are symmetric
/// with unit diagonal and PSD up to numerical tolerance; entries of quantum
/// kernels lie in [0, 1] (classical benchmark kernels need not satisfy
/// either bound).
#[derive(Clone, Debug, PartialEq)]
pub struct KernelMatrix {
    pub values: DMatrix<f64>,
    pub mode: KernelMode,
    pub psd_repaired: bool,
}

impl KernelMatrix {
    pub fn n_rows(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_cols(&self) -> usize {
        self.values.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.values.nrows() == self.values.ncols()
    }

    /// Row as a contiguous slice of kernel values.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.values.row(i).iter().copied().collect()
    }

    /// Frobenius-nearest PSD repair of this matrix (see [`nearest_psd_matrix`]).
    pub fn nearest_psd(&self) -> Result<KernelMatrix> {
        Ok(KernelMatrix {
            values: nearest_psd_matrix(&self.values)?,
            mode: self.mode,
            psd_repaired: true,
        })
    }

    /// Writes the values in the binary matrix format (train-once/score-many
    /// workflows). Provenance flags are not part of the file; supply them
    /// again on load.
    pub fn save<P: AsRef<std::path::Path>>(&self, path: P) -> Result<()> {
        crate::data::save_matrix_path(&self.values, path)
    }

    pub fn load<P: AsRef<std::path::Path>>(
        path: P,
        mode: KernelMode,
        psd_repaired: bool,
    ) -> Result<KernelMatrix> {
        Ok(KernelMatrix {
            values: crate::data::load_matrix_path(path)?,
            mode,
            psd_repaired,
        })
    }
}

/// k(x, y) = |⟨0|U†(x)U(y)|0⟩|², the fidelity of the two encoded states.
pub fn quantum_kernel(x: &[f64], y: &[f64], config: &EncodingConfig) -> Result<f64> {
    let sx = encode(x, config)?;
    let sy = encode(y, config)?;
    sx.fidelity(&sy)
}

/// Finite-shot estimate of the kernel: a binomial draw B(shots, k_ideal)
/// divided by the shot count. Unbiased, with the variance a hardware
/// estimate of the same quantity would have.
pub fn sample_kernel_with_shots(
    x: &[f64],
    y: &[f64],
    config: &EncodingConfig,
    shots: u64,
    rng_seed: u64,
) -> Result<f64> {
    let ideal = quantum_kernel(x, y, config)?;
    let mut rng = seeding::rng_for(rng_seed, 0);
    sample_shots(ideal, shots, &mut rng)
}

fn sample_shots<R: rand::Rng>(p_ideal: f64, shots: u64, rng: &mut R) -> Result<f64> {
    if shots == 0 {
        return Err(Error::Config("shot count must be >= 1".into()));
    }
    let p = p_ideal.clamp(0.0, 1.0);
    let binomial = Binomial::new(shots, p)
        .map_err(|e| Error::Numerical(format!("binomial sampling failed: {e}")))?;
    Ok(binomial.sample(rng) as f64 / shots as f64)
}

fn encode_rows(x: &FeatureMatrix, config: &EncodingConfig) -> Result<Vec<StateVector>> {
    (0..x.n_rows())
        .into_par_iter()
        .map(|i| encode(x.row(i), config))
        .collect()
}

/// Full Gram matrix over a dataset. Ideal mode computes the upper triangle,
/// mirrors it, and pins the diagonal to 1.
pub fn kernel_matrix(
    x: &FeatureMatrix,
    config: &EncodingConfig,
    build: KernelBuild,
) -> Result<KernelMatrix> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n = x.n_rows();
    let states = encode_rows(x, config)?;

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let entries: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<f64> {
            let ideal = states[i].fidelity(&states[j])?;
            match build {
                KernelBuild::Ideal => Ok(ideal),
                KernelBuild::Shots { shots, seed } => {
                    let mut rng = seeding::rng_for2(seed, i as u64, j as u64);
                    sample_shots(ideal, shots, &mut rng)
                }
            }
        })
        .collect::<Result<_>>()?;

    let mut values = DMatrix::from_element(n, n, 1.0);
    for (&(i, j), &v) in pairs.iter().zip(&entries) {
        values[(i, j)] = v;
        values[(j, i)] = v;
    }
    // Diagonal: exactly 1 in ideal mode; a binomial draw at p = 1 is the full
    // shot count, so the shot-mode diagonal is 1 as well.
    Ok(KernelMatrix {
        values,
        mode: build.mode(),
        psd_repaired: false,
    })
}

/// Rectangular kernel between a test set (rows) and a training set (columns).
pub fn cross_kernel_matrix(
    x_test: &FeatureMatrix,
    x_train: &FeatureMatrix,
    config: &EncodingConfig,
    build: KernelBuild,
) -> Result<KernelMatrix> {
    if x_test.is_empty() || x_train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let test_states = encode_rows(x_test, config)?;
    let train_states = encode_rows(x_train, config)?;
    let n_test = x_test.n_rows();
    let n_train = x_train.n_rows();

    let entries: Vec<f64> = (0..n_test * n_train)
        .into_par_iter()
        .map(|flat| -> Result<f64> {
            let (i, j) = (flat / n_train, flat % n_train);
            let ideal = test_states[i].fidelity(&train_states[j])?;
            match build {
                KernelBuild::Ideal => Ok(ideal),
                KernelBuild::Shots { shots, seed } => {
                    let mut rng = seeding::rng_for2(seed, i as u64, j as u64);
                    sample_shots(ideal, shots, &mut rng)
                }
            }
        })
        .collect::<Result<_>>()?;

    Ok(KernelMatrix {
        values: DMatrix::from_row_slice(n_test, n_train, &entries),
        mode: build.mode(),
        psd_repaired: false,
    })
}

/// Frobenius-nearest PSD matrix: symmetrize (K + Kᵀ)/2, eigendecompose, clip
/// negative eigenvalues to zero, reconstruct.
pub fn nearest_psd_matrix(matrix: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::NotSquare {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    let symmetrized = (matrix + matrix.transpose()) * 0.5;
    let eigen = SymmetricEigen::new(symmetrized);
    let clipped = eigen.eigenvalues.map(|l| l.max(0.0));
    let scaled = {
        let mut v = eigen.eigenvectors.clone();
        for (c, l) in clipped.iter().enumerate() {
            v.column_mut(c).scale_mut(*l);
        }
        v
    };
    Ok(&scaled * eigen.eigenvectors.transpose())
}

/// Smallest eigenvalue of the symmetrized matrix; diagnostic for PSD checks.
pub fn min_eigenvalue(matrix: &DMatrix<f64>) -> Result<f64> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::NotSquare {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    let symmetrized = (matrix + matrix.transpose()) * 0.5;
    let eigen = SymmetricEigen::new(symmetrized);
    Ok(eigen.eigenvalues.min())
}

/// Classical benchmark kernels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalKernelKind {
    Rbf { gamma: f64 },
    Linear,
    /// (γ x·y + coef0)^degree
    Polynomial { degree: u32, coef0: f64, gamma: f64 },
    Sigmoid { gamma: f64, coef0: f64 },
}

impl ClassicalKernelKind {
    fn validate(&self) -> Result<()> {
        match *self {
            ClassicalKernelKind::Rbf { gamma }
            | ClassicalKernelKind::Sigmoid { gamma, .. } => {
                if gamma <= 0.0 {
                    return Err(Error::Config(format!("gamma {gamma} must be > 0")));
                }
            }
            ClassicalKernelKind::Polynomial { degree, gamma, .. } => {
                if gamma <= 0.0 {
                    return Err(Error::Config(format!("gamma {gamma} must be > 0")));
                }
                if degree == 0 {
                    return Err(Error::Config("polynomial degree must be >= 1".into()));
                }
            }
            ClassicalKernelKind::Linear => {}
        }
        Ok(())
    }
}

pub fn classical_kernel(x: &[f64], y: &[f64], kind: &ClassicalKernelKind) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    kind.validate()?;
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    Ok(match *kind {
        ClassicalKernelKind::Rbf { gamma } => {
            let dist_sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
            (-gamma * dist_sq).exp()
        }
        ClassicalKernelKind::Linear => dot,
        ClassicalKernelKind::Polynomial { degree, coef0, gamma } => {
            (gamma * dot + coef0).powi(degree as i32)
        }
        ClassicalKernelKind::Sigmoid { gamma, coef0 } => (gamma * dot + coef0).tanh(),
    })
}

/// Gram matrix of a classical kernel, for the benchmark models.
pub fn classical_kernel_matrix(
    x: &FeatureMatrix,
    kind: &ClassicalKernelKind,
) -> Result<KernelMatrix> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n = x.n_rows();
    let values: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|flat| classical_kernel(x.row(flat / n), x.row(flat % n), kind))
        .collect::<Result<_>>()?;
    Ok(KernelMatrix {
        values: DMatrix::from_row_slice(n, n, &values),
        mode: KernelMode::Ideal,
        psd_repaired: false,
    })
}

pub fn classical_cross_kernel_matrix(
    x_test: &FeatureMatrix,
    x_train: &FeatureMatrix,
    kind: &ClassicalKernelKind,
) -> Result<KernelMatrix> {
    if x_test.is_empty() || x_train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let (n_test, n_train) = (x_test.n_rows(), x_train.n_rows());
    let values: Vec<f64> = (0..n_test * n_train)
        .into_par_iter()
        .map(|flat| classical_kernel(x_test.row(flat / n_train), x_train.row(flat % n_train), kind))
        .collect::<Result<_>>()?;
    Ok(KernelMatrix {
        values: DMatrix::from_row_slice(n_test, n_train, &values),
        mode: KernelMode::Ideal,
        psd_repaired: false,
    })
}

/// Default RBF bandwidth: 1 / (d · mean per-feature variance), the usual
/// scale heuristic. The variance is floored to avoid a degenerate bandwidth
/// on constant datasets.
pub fn rbf_gamma_heuristic(x: &FeatureMatrix) -> f64 {
    let (n, d) = (x.n_rows(), x.dim());
    if n == 0 || d == 0 {
        return 1.0;
    }
    let mut mean = vec![0.0; d];
    for row in x.rows() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var_sum = 0.0;
    for row in x.rows() {
        for (m, v) in mean.iter().zip(row) {
            var_sum += (v - m) * (v - m);
        }
    }
    let mean_var = (var_sum / (n * d) as f64).max(1e-12);
    1.0 / (d as f64 * mean_var)
}

/// Mean of the diagonal: ⟨k(x_i, x_i)⟩, the mean state purity. 1 for ideal
/// simulation; 1/2^n for fully decohered n-qubit states.
pub fn mean_purity(k: &KernelMatrix) -> Result<f64> {
    if !k.is_square() {
        return Err(Error::NotSquare {
            rows: k.n_rows(),
            cols: k.n_cols(),
        });
    }
    Ok(k.values.diagonal().mean())
}
