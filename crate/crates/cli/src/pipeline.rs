//! Shared dataset loading, model training, and scoring used by the
//! subcommands.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use qad_core::data::{
    load_dataset_path, DatasetMeta, FeatureMatrix, LatentDataset,
};
use qad_core::error::{Error, Result};
use qad_core::ocsvm::{self, KernelSpec, SavedOcsvm};
use qad_core::qcluster::{self, ClusterFitConfig, ClusterModel, GroverMinConfig, MinimizationMode};
use qad_core::qkernel::{
    classical_cross_kernel_matrix, classical_kernel_matrix, cross_kernel_matrix, kernel_matrix,
    rbf_gamma_heuristic, ClassicalKernelKind, KernelBuild, KernelMatrix,
};

use crate::runcfg::{DataSource, EncodingSettings, ModelKind};

/// Loads or generates the labeled dataset behind a data source.
pub fn load_source(source: &DataSource) -> Result<LatentDataset> {
    match source {
        DataSource::Synth(spec) => qad_core::data::synth_generate(spec),
        DataSource::Labeled { path } => {
            let dataset = load_dataset_path(path)?;
            if dataset.labels.is_none() {
                return Err(Error::Config(format!(
                    "dataset {} carries no labels",
                    path.display()
                )));
            }
            Ok(dataset)
        }
        DataSource::Files { background, anomaly } => {
            let bg = load_dataset_path(background)?;
            let mut rows: Vec<Vec<f64>> = bg.features.rows().map(<[f64]>::to_vec).collect();
            let mut labels = vec![0u8; bg.n_rows()];
            let mut source_tag = bg.meta.source.clone();
            if let Some(anomaly) = anomaly {
                let an = load_dataset_path(anomaly)?;
                if an.dim() != bg.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: bg.dim(),
                        got: an.dim(),
                    });
                }
                rows.extend(an.features.rows().map(<[f64]>::to_vec));
                labels.extend(std::iter::repeat_n(1u8, an.n_rows()));
                source_tag = format!("{source_tag}+{}", an.meta.source);
            }
            let dim = bg.dim();
            LatentDataset::new(
                FeatureMatrix::from_rows(&rows)?,
                Some(labels),
                DatasetMeta {
                    dim,
                    source: source_tag,
                    seed: None,
                },
            )
        }
    }
}

fn kernel_build(shots: u64, seed: u64) -> KernelBuild {
    if shots == 0 {
        KernelBuild::Ideal
    } else {
        KernelBuild::Shots { shots, seed }
    }
}

/// Anything `evaluate` can score with.
pub enum TrainedModel {
    Ocsvm(SavedOcsvm),
    Cluster(ClusterModel),
}

impl TrainedModel {
    pub fn kind_tag(&self) -> &'static str {
        match self {
            TrainedModel::Ocsvm(saved) => match saved.kernel {
                KernelSpec::Quantum(_) => "ocsvm-quantum",
                KernelSpec::Classical(_) => "ocsvm-classical",
            },
            TrainedModel::Cluster(model) => match model.algorithm {
                qcluster::ClusterAlgorithm::QkMeans => "qkmeans",
                qcluster::ClusterAlgorithm::QkMedians => "qkmedians",
                qcluster::ClusterAlgorithm::KMeans => "kmeans",
                qcluster::ClusterAlgorithm::KMedians => "kmedians",
            },
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        match self {
            TrainedModel::Ocsvm(saved) => saved.write_to(&mut w)?,
            TrainedModel::Cluster(model) => model.write_to(&mut w)?,
        }
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut text = String::new();
        BufReader::new(File::open(path)?).read_to_string(&mut text)?;
        let header = text.lines().next().unwrap_or_default();
        match header.trim() {
            "QADOCSVM 1" => Ok(TrainedModel::Ocsvm(SavedOcsvm::read_from(
                &mut text.as_bytes(),
            )?)),
            "QADCLUSTER 1" => Ok(TrainedModel::Cluster(ClusterModel::read_from(
                &mut text.as_bytes(),
            )?)),
            other => Err(Error::Format(format!(
                "unrecognized model header {other:?} in {}",
                path.display()
            ))),
        }
    }

    /// Anomaly scores for every row; higher = more anomalous.
    pub fn score_rows(&self, rows: &FeatureMatrix, shots: u64, seed: u64) -> Result<Vec<f64>> {
        match self {
            TrainedModel::Ocsvm(saved) => {
                let cross: KernelMatrix = match &saved.kernel {
                    KernelSpec::Quantum(config) => cross_kernel_matrix(
                        rows,
                        &saved.train_features,
                        config,
                        kernel_build(shots, seed),
                    )?,
                    KernelSpec::Classical(kind) => {
                        classical_cross_kernel_matrix(rows, &saved.train_features, kind)?
                    }
                };
                (0..rows.n_rows())
                    .map(|i| ocsvm::score(&saved.model, &cross.row(i)))
                    .collect()
            }
            TrainedModel::Cluster(model) => (0..rows.n_rows())
                .into_par_iter()
                .map(|i| qcluster::cluster_anomaly_score(model, rows.row(i)))
                .collect(),
        }
    }
}

/// Training summary fields embedded in the train report.
#[derive(Debug, Serialize)]
pub struct TrainedDetails {
    pub model_kind: String,
    pub n_train: usize,
    pub nu: Option<f64>,
    pub rho: Option<f64>,
    pub n_support_vectors: Option<usize>,
    pub gamma: Option<f64>,
    pub k: Option<usize>,
    pub epsilon: Option<f64>,
    pub iterations_run: Option<usize>,
    pub gram_psd_repaired: Option<bool>,
}

pub struct TrainOutcome {
    pub model: TrainedModel,
    pub details: TrainedDetails,
    pub gram: Option<KernelMatrix>,
}

/// Model-specific training knobs, already resolved.
pub struct TrainSettings {
    pub kind: ModelKind,
    pub encoding: EncodingSettings,
    pub nu: f64,
    pub gamma: Option<f64>,
    pub k: usize,
    pub epsilon: f64,
    pub min_mode: MinimizationMode,
    pub shots: u64,
    pub seed: u64,
}

pub fn train_model(train_rows: &FeatureMatrix, settings: &TrainSettings) -> Result<TrainOutcome> {
    match settings.kind {
        ModelKind::Ocsvm => {
            let config = settings.encoding.for_dim(train_rows.dim())?;
            let gram = kernel_matrix(
                train_rows,
                &config,
                kernel_build(settings.shots, settings.seed),
            )?;
            let (gram, repaired) = if settings.shots > 0 {
                (gram.nearest_psd()?, true)
            } else {
                (gram, false)
            };
            let model = ocsvm::train(&gram, settings.nu)?;
            let n_sv = model.alphas.iter().filter(|&&a| a > 1e-12).count();
            let details = TrainedDetails {
                model_kind: "ocsvm".into(),
                n_train: train_rows.n_rows(),
                nu: Some(settings.nu),
                rho: Some(model.rho_offset),
                n_support_vectors: Some(n_sv),
                gamma: None,
                k: None,
                epsilon: None,
                iterations_run: None,
                gram_psd_repaired: Some(repaired),
            };
            Ok(TrainOutcome {
                model: TrainedModel::Ocsvm(SavedOcsvm {
                    model,
                    kernel: KernelSpec::Quantum(config),
                    train_features: train_rows.clone(),
                }),
                details,
                gram: Some(gram),
            })
        }
        ModelKind::OcsvmRbf | ModelKind::OcsvmLinear | ModelKind::OcsvmPoly
        | ModelKind::OcsvmSigmoid => {
            let kind = classical_kind(settings, train_rows);
            let gram = classical_kernel_matrix(train_rows, &kind)?;
            let model = ocsvm::train(&gram, settings.nu)?;
            let n_sv = model.alphas.iter().filter(|&&a| a > 1e-12).count();
            let gamma = match kind {
                ClassicalKernelKind::Rbf { gamma }
                | ClassicalKernelKind::Polynomial { gamma, .. }
                | ClassicalKernelKind::Sigmoid { gamma, .. } => Some(gamma),
                ClassicalKernelKind::Linear => None,
            };
            let details = TrainedDetails {
                model_kind: format!("ocsvm-classical ({})", classical_tag(&kind)),
                n_train: train_rows.n_rows(),
                nu: Some(settings.nu),
                rho: Some(model.rho_offset),
                n_support_vectors: Some(n_sv),
                gamma,
                k: None,
                epsilon: None,
                iterations_run: None,
                gram_psd_repaired: Some(false),
            };
            Ok(TrainOutcome {
                model: TrainedModel::Ocsvm(SavedOcsvm {
                    model,
                    kernel: KernelSpec::Classical(kind),
                    train_features: train_rows.clone(),
                }),
                details,
                gram: Some(gram),
            })
        }
        ModelKind::QkMeans | ModelKind::QkMedians | ModelKind::KMeans | ModelKind::KMedians => {
            let fit = ClusterFitConfig {
                epsilon: settings.epsilon,
                max_iterations: 300,
                seed: settings.seed,
            };
            let model = match settings.kind {
                ModelKind::QkMeans => {
                    let min_config = match settings.min_mode {
                        MinimizationMode::Deterministic => GroverMinConfig::deterministic(),
                        MinimizationMode::QuantumSim => {
                            GroverMinConfig::quantum_sim(settings.k, settings.seed)
                        }
                    };
                    qcluster::qkmeans_fit(train_rows, settings.k, &fit, &min_config)?
                }
                ModelKind::QkMedians => qcluster::qkmedians_fit(train_rows, settings.k, &fit)?,
                ModelKind::KMeans => qcluster::kmeans_fit(train_rows, settings.k, &fit)?,
                ModelKind::KMedians => qcluster::kmedians_fit(train_rows, settings.k, &fit)?,
                _ => unreachable!(),
            };
            let details = TrainedDetails {
                model_kind: format!("{:?}", settings.kind).to_lowercase(),
                n_train: train_rows.n_rows(),
                nu: None,
                rho: None,
                n_support_vectors: None,
                gamma: None,
                k: Some(settings.k),
                epsilon: Some(settings.epsilon),
                iterations_run: Some(model.iterations_run),
                gram_psd_repaired: None,
            };
            Ok(TrainOutcome {
                model: TrainedModel::Cluster(model),
                details,
                gram: None,
            })
        }
    }
}

fn classical_kind(settings: &TrainSettings, train_rows: &FeatureMatrix) -> ClassicalKernelKind {
    let gamma = settings
        .gamma
        .unwrap_or_else(|| rbf_gamma_heuristic(train_rows));
    match settings.kind {
        ModelKind::OcsvmLinear => ClassicalKernelKind::Linear,
        ModelKind::OcsvmPoly => ClassicalKernelKind::Polynomial {
            degree: 3,
            coef0: 1.0,
            gamma,
        },
        ModelKind::OcsvmSigmoid => ClassicalKernelKind::Sigmoid { gamma, coef0: 0.0 },
        _ => ClassicalKernelKind::Rbf { gamma },
    }
}

fn classical_tag(kind: &ClassicalKernelKind) -> &'static str {
    match kind {
        ClassicalKernelKind::Rbf { .. } => "rbf",
        ClassicalKernelKind::Linear => "linear",
        ClassicalKernelKind::Polynomial { .. } => "polynomial",
        ClassicalKernelKind::Sigmoid { .. } => "sigmoid",
    }
}

/// Splits scored test rows by label into (background, signal) score vectors.
pub fn scores_by_label(dataset: &LatentDataset, scores: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let labels = dataset
        .labels
        .as_ref()
        .ok_or_else(|| Error::Config("test dataset carries no labels".into()))?;
    let mut background = Vec::new();
    let mut signal = Vec::new();
    for (&label, &score) in labels.iter().zip(scores) {
        if label == 0 {
            background.push(score);
        } else {
            signal.push(score);
        }
    }
    Ok((background, signal))
}

/// Writes a JSON value to a file with a trailing newline.
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Format(format!("JSON serialization failed: {e}")))?;
    writeln!(w, "{text}")?;
    w.flush()?;
    Ok(())
}
