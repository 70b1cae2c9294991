//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("qubit count {n_qubits} outside supported range 1..={max}")]
    QubitCount { n_qubits: usize, max: usize },

    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitIndex { qubit: usize, n_qubits: usize },

    #[error("control and target must differ (both {qubit})")]
    EqualQubits { qubit: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("feature {value} at position {index} outside the encoding domain [-1, 1]")]
    FeatureOutOfDomain { index: usize, value: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric within tolerance (max asymmetry {max_asymmetry})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("shot-sampled kernel matrix must be PSD-repaired before training")]
    MustRepair,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("validation error at row {row}: {message}")]
    Validation { row: usize, message: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("classical background rejection is unbounded; performance ratio undefined")]
    UndefinedRatio,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
