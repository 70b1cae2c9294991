//! Command-line definitions. Every tunable is optional here; values resolve
//! as flag > config-file field > built-in default (see `runcfg`).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "qad",
    version,
    about = "Quantum anomaly detection on latent event vectors: dataset generation, model training, evaluation, sweeps, and circuit characterization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a synthetic latent dataset (background + anomaly files).
    Generate(GenerateArgs),
    /// Train an anomaly detection model on background-only data.
    Train(TrainArgs),
    /// Score a labeled test set with a trained model and run k-fold testing.
    Evaluate(EvaluateArgs),
    /// Grid sweep over circuit depth and qubit count, quantum vs classical.
    Sweep(SweepArgs),
    /// Expressibility, entanglement capability, and kernel variance grids.
    Characterize(CharacterizeArgs),
}

#[derive(Args, Debug, Clone)]
pub struct DataSourceArgs {
    /// Labeled dataset file (.qadl or .csv) with background and anomaly rows.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Background-only dataset file (.qadl or .csv).
    #[arg(long)]
    pub background: Option<PathBuf>,
    /// Anomaly-only dataset file (.qadl or .csv).
    #[arg(long)]
    pub anomaly: Option<PathBuf>,
    /// Synthetic generator: latent dimension.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Synthetic generator: background rows.
    #[arg(long)]
    pub n_background: Option<usize>,
    /// Synthetic generator: anomaly rows.
    #[arg(long)]
    pub n_anomaly: Option<usize>,
    /// Synthetic generator: anomaly mean shift before the tanh squashing.
    #[arg(long)]
    pub shift: Option<f64>,
    /// Synthetic generator: anomaly scale factor.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Synthetic generator: pairwise feature correlation in [0, 1).
    #[arg(long)]
    pub correlation: Option<f64>,
    /// Synthetic generator seed (defaults to the run seed).
    #[arg(long)]
    pub data_seed: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct EncodingArgs {
    /// Qubit count of the encoding circuit (default: dataset dim / 2).
    #[arg(long)]
    pub n_qubits: Option<usize>,
    /// Encoding circuit repetitions L.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Entangling CNOT chain between rotation layers (true/false).
    #[arg(long)]
    pub entanglement: Option<bool>,
    /// Radians per unit feature (default π).
    #[arg(long)]
    pub angle_scale: Option<f64>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub n_background: Option<usize>,
    #[arg(long)]
    pub n_anomaly: Option<usize>,
    #[arg(long)]
    pub shift: Option<f64>,
    #[arg(long)]
    pub scale: Option<f64>,
    #[arg(long)]
    pub correlation: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// File format for the generated datasets: binary | csv.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Model kind: ocsvm | ocsvm-rbf | ocsvm-linear | ocsvm-poly |
    /// ocsvm-sigmoid | qkmeans | qkmedians | kmeans | kmedians.
    #[arg(long)]
    pub model: Option<String>,
    #[command(flatten)]
    pub data: DataSourceArgs,
    #[command(flatten)]
    pub encoding: EncodingArgs,
    /// Training rows (background only).
    #[arg(long)]
    pub n_train: Option<usize>,
    /// Held-out test rows (balanced; written next to the model).
    #[arg(long)]
    pub n_test: Option<usize>,
    /// One-class fraction bound ν.
    #[arg(long)]
    pub nu: Option<f64>,
    /// RBF bandwidth γ for classical kernels (default: 1/(d·var)).
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Cluster count k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Convergence tolerance ε for clustering.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Minimum finding for QK-means: deterministic | quantum-sim.
    #[arg(long)]
    pub min_mode: Option<String>,
    /// Measurement shots per kernel entry; 0 = ideal simulation.
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0 = library default). Results do not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Also write the training Gram matrix (gram.qadm).
    #[arg(long)]
    pub save_gram: bool,
}

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Trained model file.
    #[arg(long)]
    pub model: PathBuf,
    /// Labeled test dataset (.qadl or .csv).
    #[arg(long)]
    pub test: PathBuf,
    #[arg(long)]
    pub folds: Option<usize>,
    /// Measurement shots per kernel entry; 0 = ideal simulation.
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub data: DataSourceArgs,
    /// Depth grid, e.g. "NE,1,2,3".
    #[arg(long)]
    pub l_values: Option<String>,
    /// Qubit-count grid, e.g. "2,4". Synthetic data is regenerated with the
    /// matching dimension; file-based data must match 2·n_qubits.
    #[arg(long)]
    pub n_qubits_values: Option<String>,
    #[arg(long)]
    pub angle_scale: Option<f64>,
    #[arg(long)]
    pub n_train: Option<usize>,
    #[arg(long)]
    pub n_test: Option<usize>,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub nu: Option<f64>,
    /// RBF bandwidth γ of the classical benchmark (default: 1/(d·var)).
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CharacterizeArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub data: DataSourceArgs,
    /// Depth grid, e.g. "NE,1,2,3,4".
    #[arg(long)]
    pub l_values: Option<String>,
    /// Qubit-count grid, e.g. "4,8".
    #[arg(long)]
    pub n_qubits_values: Option<String>,
    /// Samplers: comma list of uniform | background | signal.
    #[arg(long)]
    pub samplers: Option<String>,
    #[arg(long)]
    pub angle_scale: Option<f64>,
    /// Fidelity pairs per expressibility / kernel-variance estimate.
    #[arg(long)]
    pub n_pairs: Option<u64>,
    /// States per entanglement-capability estimate.
    #[arg(long)]
    pub q_samples: Option<u64>,
    /// Histogram bins for the fidelity distribution.
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
}
