//! Quantum anomaly detection on latent-space event vectors.
//!
//! The crate simulates quantum feature maps on a dense statevector backend and
//! builds anomaly detectors on top of them: a fidelity-kernel one-class SVM,
//! quantum K-means / K-medians clustering with circuit-based distances and
//! Grover-style minimum finding, circuit characterization metrics
//! (expressibility, entanglement capability, kernel variance), and ROC-based
//! evaluation utilities for HEP-style working points.

pub mod characterize;
pub mod data;
pub mod encoding;
pub mod error;
pub mod metrics;
pub mod ocsvm;
pub mod qcluster;
pub mod qkernel;
pub mod seeding;
pub mod statevector;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testutil;
