//! Config resolution: flag > config-file field > built-in default. The fully
//! resolved configuration is echoed into every output JSON for provenance.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qad_core::data::SynthSpec;
use qad_core::encoding::EncodingConfig;
use qad_core::error::{Error, Result};
use qad_core::qcluster::MinimizationMode;

use crate::args;

/// Superset of the tunables a JSON config file may carry; fields are shared
/// across subcommands and unknown fields are rejected.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub data: Option<PathBuf>,
    pub background: Option<PathBuf>,
    pub anomaly: Option<PathBuf>,
    pub dim: Option<usize>,
    pub n_background: Option<usize>,
    pub n_anomaly: Option<usize>,
    pub shift: Option<f64>,
    pub scale: Option<f64>,
    pub correlation: Option<f64>,
    pub data_seed: Option<u64>,
    pub format: Option<String>,
    pub model: Option<String>,
    pub n_qubits: Option<usize>,
    pub depth: Option<usize>,
    pub entanglement: Option<bool>,
    pub angle_scale: Option<f64>,
    pub n_train: Option<usize>,
    pub n_test: Option<usize>,
    pub nu: Option<f64>,
    pub gamma: Option<f64>,
    pub k: Option<usize>,
    pub epsilon: Option<f64>,
    pub min_mode: Option<String>,
    pub shots: Option<u64>,
    pub folds: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub l_values: Option<String>,
    pub n_qubits_values: Option<String>,
    pub samplers: Option<String>,
    pub n_pairs: Option<u64>,
    pub q_samples: Option<u64>,
    pub bins: Option<usize>,
}

pub fn load_file_config(path: Option<&Path>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("bad config file {}: {e}", path.display())))
        }
    }
}

/// Where the event vectors come from.
#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum DataSource {
    /// A single labeled dataset file.
    Labeled { path: PathBuf },
    /// Separate background / anomaly files.
    Files {
        background: PathBuf,
        anomaly: Option<PathBuf>,
    },
    /// The synthetic generator.
    Synth(SynthSpec),
}

pub fn resolve_data_source(
    flags: &args::DataSourceArgs,
    file: &FileConfig,
    run_seed: u64,
) -> DataSource {
    if let Some(path) = flags.data.clone().or_else(|| file.data.clone()) {
        return DataSource::Labeled { path };
    }
    if let Some(background) = flags.background.clone().or_else(|| file.background.clone()) {
        return DataSource::Files {
            background,
            anomaly: flags.anomaly.clone().or_else(|| file.anomaly.clone()),
        };
    }
    DataSource::Synth(resolve_synth_spec(flags, file, run_seed))
}

fn resolve_synth_spec(flags: &args::DataSourceArgs, file: &FileConfig, run_seed: u64) -> SynthSpec {
    SynthSpec {
        dim: flags.dim.or(file.dim).unwrap_or(8),
        n_background: flags.n_background.or(file.n_background).unwrap_or(20_000),
        n_anomaly: flags.n_anomaly.or(file.n_anomaly).unwrap_or(10_000),
        anomaly_shift: flags.shift.or(file.shift).unwrap_or(2.0),
        anomaly_scale: flags.scale.or(file.scale).unwrap_or(2.5),
        correlation: flags.correlation.or(file.correlation).unwrap_or(0.95),
        seed: flags.data_seed.or(file.data_seed).unwrap_or(run_seed),
    }
}

/// Resolved encoding parameters; `n_qubits` may still need inference from
/// the dataset dimension (None until then).
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct EncodingSettings {
    pub n_qubits: Option<usize>,
    pub depth: usize,
    pub entanglement: bool,
    pub angle_scale: f64,
}

pub fn resolve_encoding(flags: &args::EncodingArgs, file: &FileConfig) -> EncodingSettings {
    EncodingSettings {
        n_qubits: flags.n_qubits.or(file.n_qubits),
        depth: flags.depth.or(file.depth).unwrap_or(3),
        entanglement: flags.entanglement.or(file.entanglement).unwrap_or(true),
        angle_scale: flags
            .angle_scale
            .or(file.angle_scale)
            .unwrap_or(std::f64::consts::PI),
    }
}

impl EncodingSettings {
    /// Concrete circuit config for a dataset of the given dimension; the
    /// dimension must equal 2·n_qubits.
    pub fn for_dim(&self, dim: usize) -> Result<EncodingConfig> {
        let n_qubits = match self.n_qubits {
            Some(n) => {
                if dim != 2 * n {
                    return Err(Error::Config(format!(
                        "dataset dimension {dim} must equal 2*n_qubits = {}",
                        2 * n
                    )));
                }
                n
            }
            None => {
                if dim % 2 != 0 {
                    return Err(Error::Config(format!(
                        "dataset dimension {dim} is odd; the encoding consumes two features per qubit"
                    )));
                }
                dim / 2
            }
        };
        Ok(EncodingConfig::new(n_qubits, self.depth, self.entanglement)?
            .with_angle_scale(self.angle_scale))
    }
}

/// Model selection for `train`.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Ocsvm,
    OcsvmRbf,
    OcsvmLinear,
    OcsvmPoly,
    OcsvmSigmoid,
    QkMeans,
    QkMedians,
    KMeans,
    KMedians,
}

impl ModelKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "ocsvm" => ModelKind::Ocsvm,
            "ocsvm-rbf" => ModelKind::OcsvmRbf,
            "ocsvm-linear" => ModelKind::OcsvmLinear,
            "ocsvm-poly" => ModelKind::OcsvmPoly,
            "ocsvm-sigmoid" => ModelKind::OcsvmSigmoid,
            "qkmeans" => ModelKind::QkMeans,
            "qkmedians" => ModelKind::QkMedians,
            "kmeans" => ModelKind::KMeans,
            "kmedians" => ModelKind::KMedians,
            other => {
                return Err(Error::Config(format!(
                    "unknown model kind {other:?} (expected ocsvm, ocsvm-rbf, ocsvm-linear, \
                     ocsvm-poly, ocsvm-sigmoid, qkmeans, qkmedians, kmeans, kmedians)"
                )))
            }
        })
    }
}

pub fn parse_min_mode(s: &str) -> Result<MinimizationMode> {
    Ok(match s {
        "deterministic" => MinimizationMode::Deterministic,
        "quantum-sim" => MinimizationMode::QuantumSim,
        other => {
            return Err(Error::Config(format!(
                "unknown minimization mode {other:?} (expected deterministic or quantum-sim)"
            )))
        }
    })
}

/// Depth grid entry: a repetition count or the no-entanglement circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthSpec {
    NoEntanglement,
    Depth(usize),
}

impl DepthSpec {
    pub fn label(&self) -> String {
        match self {
            DepthSpec::NoEntanglement => "NE".into(),
            DepthSpec::Depth(l) => l.to_string(),
        }
    }

    /// The no-entanglement grid point is the depth-1 circuit with all CNOT
    /// gates removed.
    pub fn depth_and_entanglement(&self) -> (usize, bool) {
        match self {
            DepthSpec::NoEntanglement => (1, false),
            DepthSpec::Depth(l) => (*l, true),
        }
    }
}

pub fn parse_depth_grid(s: &str) -> Result<Vec<DepthSpec>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.eq_ignore_ascii_case("ne") {
                Ok(DepthSpec::NoEntanglement)
            } else {
                tok.parse::<usize>()
                    .map(DepthSpec::Depth)
                    .map_err(|_| Error::Config(format!("bad depth grid entry {tok:?}")))
            }
        })
        .collect()
}

pub fn parse_usize_grid(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad grid entry {tok:?}")))
        })
        .collect()
}

/// Initializes the global worker pool. 0 keeps the library default; results
/// never depend on the worker count.
pub fn init_workers(workers: usize) {
    if workers > 0 {
        // Ignore the error if a pool already exists (tests in one process).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
