//! Circuit characterization: expressibility against the Haar baseline,
//! Meyer-Wallach entanglement capability, and kernel-variance scaling.
//!
//! Expressibility is the KL divergence (in nats) between the empirical
//! fidelity distribution of circuit-generated state pairs and the Haar
//! fidelity density P(F) = (N−1)(1−F)^(N−2); scores approach zero as the
//! circuit fills the Hilbert space more uniformly. Parameters are sampled
//! either uniformly (features in [-1, 1), i.e. angles covering the full
//! circle under the default π scale) or as whole rows of a latent dataset,
//! preserving feature correlations.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;

use crate::data::LatentDataset;
use crate::encoding::{encode, EncodingConfig};
use crate::error::{Error, Result};
use crate::seeding;
use crate::statevector::StateVector;

/// Haar fidelity density (N−1)(1−F)^(N−2) with N = 2^n_qubits.
pub fn haar_pdf(fidelity: f64, n_qubits: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::Config(format!(
            "fidelity {fidelity} outside [0, 1]"
        )));
    }
    let dim = (1u64 << n_qubits) as f64;
    Ok((dim - 1.0) * (1.0 - fidelity).powi(dim as i32 - 2))
}

/// Exact Haar probability mass of the fidelity interval [lo, hi]: the CDF
/// 1 − (1−F)^(N−1) differenced at the edges.
fn haar_bin_mass(lo: f64, hi: f64, n_qubits: usize) -> f64 {
    let exponent = (1u64 << n_qubits) as i32 - 1;
    (1.0 - lo).powi(exponent) - (1.0 - hi).powi(exponent)
}

/// Where a circuit's parameters are sampled from.
#[derive(Clone, Copy, Debug)]
pub enum ParameterSampler<'a> {
    /// Features uniform in [-1, 1); with the default angle scale π this is
    /// the uniform angle distribution over the circle.
    Uniform,
    /// Whole rows of a latent dataset (never independent per-feature draws).
    Dataset(&'a LatentDataset),
}

impl ParameterSampler<'_> {
    pub fn label(&self) -> String {
        match self {
            ParameterSampler::Uniform => "uniform".into(),
            ParameterSampler::Dataset(d) => format!("dataset:{}", d.meta.source),
        }
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if let ParameterSampler::Dataset(d) = self {
            if d.n_rows() == 0 {
                return Err(Error::EmptyDataset);
            }
            if d.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: d.dim(),
                });
            }
        }
        Ok(())
    }

    fn draw_vector<R: Rng>(&self, dim: usize, rng: &mut R) -> Vec<f64> {
        match self {
            ParameterSampler::Uniform => (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            ParameterSampler::Dataset(d) => d.features.row(rng.gen_range(0..d.n_rows())).to_vec(),
        }
    }

    fn draw_pair<R: Rng>(&self, dim: usize, rng: &mut R) -> Result<(Vec<f64>, Vec<f64>)> {
        match self {
            ParameterSampler::Uniform => {
                Ok((self.draw_vector(dim, rng), self.draw_vector(dim, rng)))
            }
            ParameterSampler::Dataset(d) => {
                let n = d.n_rows();
                if n < 2 {
                    return Err(Error::InsufficientData(
                        "dataset sampler needs at least 2 rows for fidelity pairs".into(),
                    ));
                }
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                Ok((d.features.row(i).to_vec(), d.features.row(j).to_vec()))
            }
        }
    }
}

/// Histogram of pairwise state fidelities over equal-width bins on [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityHistogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub n_samples: u64,
}

impl FidelityHistogram {
    pub fn from_fidelities(fidelities: &[f64], bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::Config("bin count must be >= 1".into()));
        }
        let mut counts = vec![0u64; bins];
        for &f in fidelities {
            if !(0.0..=1.0).contains(&f) {
                return Err(Error::Numerical(format!("fidelity {f} outside [0, 1]")));
            }
            let idx = ((f * bins as f64) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        let bin_edges = (0..=bins).map(|i| i as f64 / bins as f64).collect();
        Ok(Self {
            bin_edges,
            counts,
            n_samples: fidelities.len() as u64,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }
}

/// Samples `n_pairs` independent parameter pairs, encodes both sides, and
/// histograms the fidelities. Pair streams are seeded per index, so the
/// result is reproducible bitwise and independent of the worker count.
pub fn sample_fidelity_histogram(
    config: &EncodingConfig,
    sampler: &ParameterSampler,
    n_pairs: u64,
    bins: usize,
    rng_seed: u64,
) -> Result<FidelityHistogram> {
    if n_pairs == 0 {
        return Err(Error::Config("pair count must be >= 1".into()));
    }
    let dim = config.feature_dim();
    sampler.check_dim(dim)?;
    let fidelities: Vec<f64> = (0..n_pairs)
        .into_par_iter()
        .map(|pair| -> Result<f64> {
            let mut rng = seeding::rng_for2(rng_seed, 0xF1DE, pair);
            let (a, b) = sampler.draw_pair(dim, &mut rng)?;
            encode(&a, config)?.fidelity(&encode(&b, config)?)
        })
        .collect::<Result<_>>()?;
    FidelityHistogram::from_fidelities(&fidelities, bins)
}

/// D_KL(empirical ‖ Haar) with the Haar reference integrated exactly per bin.
/// Empty empirical bins contribute zero (0·log 0 = 0); the Haar mass is
/// strictly positive on every bin of [0, 1], so no division by zero arises.
pub fn expressibility(hist: &FidelityHistogram, n_qubits: usize) -> Result<f64> {
    if hist.n_samples == 0 || hist.counts.iter().sum::<u64>() != hist.n_samples {
        return Err(Error::Config(
            "histogram counts do not match its sample count".into(),
        ));
    }
    let mut divergence = 0.0;
    for (i, &count) in hist.counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let p = count as f64 / hist.n_samples as f64;
        let q = haar_bin_mass(hist.bin_edges[i], hist.bin_edges[i + 1], n_qubits);
        divergence += p * (p / q).ln();
    }
    Ok(divergence.max(0.0))
}

/// Values below this are reported as exactly zero: the purity arithmetic
/// carries ~1e-16 float noise, and genuinely entangled states in this crate
/// sit far above the floor.
const MEYER_WALLACH_FLOOR: f64 = 1e-12;

/// Meyer-Wallach measure Q = 2(1 − mean single-qubit purity); 0 for product
/// states (and by convention for a single qubit), 1 for GHZ-type states.
pub fn meyer_wallach(state: &StateVector) -> Result<f64> {
    let n = state.n_qubits();
    if n < 2 {
        return Ok(0.0);
    }
    let mean_purity = (0..n)
        .map(|q| state.reduced_qubit_purity(q))
        .sum::<Result<f64>>()?
        / n as f64;
    let q = 2.0 * (1.0 - mean_purity);
    if q.abs() < MEYER_WALLACH_FLOOR {
        return Ok(0.0);
    }
    Ok(q.clamp(0.0, 1.0))
}

/// Mean Meyer-Wallach measure over encoded sampled parameter vectors.
pub fn entanglement_capability(
    config: &EncodingConfig,
    sampler: &ParameterSampler,
    n_samples: u64,
    rng_seed: u64,
) -> Result<f64> {
    Ok(entanglement_capability_with_error(config, sampler, n_samples, rng_seed)?.0)
}

/// Mean Meyer-Wallach measure plus the standard error of the mean.
pub fn entanglement_capability_with_error(
    config: &EncodingConfig,
    sampler: &ParameterSampler,
    n_samples: u64,
    rng_seed: u64,
) -> Result<(f64, f64)> {
    if n_samples == 0 {
        return Err(Error::Config("sample count must be >= 1".into()));
    }
    let dim = config.feature_dim();
    sampler.check_dim(dim)?;
    let values: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|sample| -> Result<f64> {
            let mut rng = seeding::rng_for2(rng_seed, 0xE47A, sample);
            let x = sampler.draw_vector(dim, &mut rng);
            meyer_wallach(&encode(&x, config)?)
        })
        .collect::<Result<_>>()?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok((mean, (var / n).sqrt()))
}

/// Unbiased sample variance of the quantum kernel over `n_pairs` random
/// distinct row pairs of the dataset.
pub fn kernel_variance(
    x: &crate::data::FeatureMatrix,
    config: &EncodingConfig,
    n_pairs: u64,
    rng_seed: u64,
) -> Result<f64> {
    if x.n_rows() < 2 {
        return Err(Error::InsufficientData(
            "kernel variance needs at least 2 rows".into(),
        ));
    }
    if n_pairs == 0 {
        return Err(Error::Config("pair count must be >= 1".into()));
    }
    let values: Vec<f64> = (0..n_pairs)
        .into_par_iter()
        .map(|pair| -> Result<f64> {
            let mut rng = seeding::rng_for2(rng_seed, 0x5AE1, pair);
            let n = x.n_rows();
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            crate::qkernel::quantum_kernel(x.row(i), x.row(j), config)
        })
        .collect::<Result<_>>()?;
    Ok(unbiased_variance(&values))
}

/// As [`kernel_variance`], with both kernel arguments drawn from a sampler
/// (fresh uniform vectors, or distinct dataset rows).
pub fn kernel_variance_sampled(
    sampler: &ParameterSampler,
    config: &EncodingConfig,
    n_pairs: u64,
    rng_seed: u64,
) -> Result<f64> {
    if n_pairs == 0 {
        return Err(Error::Config("pair count must be >= 1".into()));
    }
    let dim = config.feature_dim();
    sampler.check_dim(dim)?;
    let values: Vec<f64> = (0..n_pairs)
        .into_par_iter()
        .map(|pair| -> Result<f64> {
            let mut rng = seeding::rng_for2(rng_seed, 0x5AE2, pair);
            let (a, b) = sampler.draw_pair(dim, &mut rng)?;
            crate::qkernel::quantum_kernel(&a, &b, config)
        })
        .collect::<Result<_>>()?;
    Ok(unbiased_variance(&values))
}

fn unbiased_variance(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64
}

/// One row of the characterization report. `depth_label` is the repetition
/// count, or "NE" for the no-entanglement circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterizationRecord {
    pub depth_label: String,
    pub n_qubits: usize,
    pub sampler: String,
    pub expressibility: f64,
    pub entanglement_capability: f64,
    pub kernel_variance: f64,
    pub n_samples: u64,
    pub seed: u64,
}

pub fn write_characterization_csv<W: Write>(
    records: &[CharacterizationRecord],
    w: &mut W,
) -> Result<()> {
    writeln!(
        w,
        "L,n_qubits,sampler,expressibility,entanglement_capability,kernel_variance,n_samples,seed"
    )?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.depth_label,
            r.n_qubits,
            r.sampler,
            r.expressibility,
            r.entanglement_capability,
            r.kernel_variance,
            r.n_samples,
            r.seed
        )?;
    }
    Ok(())
}
