//! Quantum K-means and K-medians clustering.
//!
//! Distances are computed by simulating the corresponding circuits: the
//! controlled-swap test for K-means and the single-Hadamard interference
//! circuit for K-medians. Both return exactly the squared Euclidean distance
//! (the proportionality constants 2Z and 2𝒩² are part of the definitions).
//! K-means can route its per-point cluster assignment through a simulated
//! Grover minimum search with a moving threshold; K-medians assigns
//! classically and updates centroids with an iterative geometric median.

use std::io::{BufRead, BufReader, Read, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::FeatureMatrix;
use crate::encoding::{amplitude_encode_concat, amplitude_encode_pair};
use crate::error::{Error, Result};
use crate::seeding;
use crate::statevector::{SingleQubitGate, StateVector};

/// Squared-Euclidean distance via the controlled-swap-test circuit:
/// D = 2Z·|⟨φ|ψ⟩|² with the overlap read off the ancilla as 2·P(0) − 1.
pub fn swap_test_distance(u: &[f64], v: &[f64]) -> Result<f64> {
    let enc = amplitude_encode_pair(u, v)?;
    // Register layout (little-endian): φ on qubit 0, ψ on the next
    // 1 + log2(dim) wires with its index qubit on top, ancilla highest.
    let ancilla_index = enc.psi.n_qubits() + 1;
    let psi_index_qubit = enc.psi.n_qubits();
    let mut joint = StateVector::new_zero_state(1)?
        .tensor(&enc.psi)?
        .tensor(&enc.phi)?;
    joint.apply_gate(ancilla_index, &SingleQubitGate::hadamard())?;
    joint.apply_cswap(ancilla_index, psi_index_qubit, 0)?;
    joint.apply_gate(ancilla_index, &SingleQubitGate::hadamard())?;
    let p0 = 1.0 - joint.probability_qubit_one(ancilla_index)?;
    let overlap_sq = 2.0 * p0 - 1.0;
    Ok((2.0 * enc.z * overlap_sq).max(0.0))
}

/// Squared-Euclidean distance via destructive interference: one Hadamard on
/// the most significant qubit of the concatenated encoding, then
/// D = 2𝒩²·P(MSQB = 1).
pub fn interference_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    let enc = amplitude_encode_concat(a, b)?;
    let mut state = enc.state;
    let msqb = state.n_qubits() - 1;
    state.apply_gate(msqb, &SingleQubitGate::hadamard())?;
    let p1 = state.probability_qubit_one(msqb)?;
    Ok((2.0 * enc.norm * enc.norm * p1).max(0.0))
}

/// How cluster assignment picks the nearest centroid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimizationMode {
    /// Simulated Grover search with a moving threshold.
    QuantumSim,
    /// Classical argmin with lowest-index tie-break.
    Deterministic,
}

/// Configuration of the minimum finder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroverMinConfig {
    pub mode: MinimizationMode,
    pub rng_seed: u64,
    /// Outer threshold-update rounds of the search.
    pub repetitions: u64,
}

impl GroverMinConfig {
    pub fn deterministic() -> Self {
        Self {
            mode: MinimizationMode::Deterministic,
            rng_seed: 0,
            repetitions: 1,
        }
    }

    /// Quantum-simulation config with the round count derived from the
    /// number of candidates: ⌈√(2^k)⌉ rounds, floored at 3 so that the
    /// smallest searches keep a high success probability.
    pub fn quantum_sim(candidates: usize, rng_seed: u64) -> Self {
        Self {
            mode: MinimizationMode::QuantumSim,
            rng_seed,
            repetitions: default_repetitions(candidates),
        }
    }

    fn with_seed(self, rng_seed: u64) -> Self {
        Self { rng_seed, ..self }
    }
}

/// ⌈√(2^k)⌉ capped to a practical bound, with a floor of 3 rounds.
pub fn default_repetitions(candidates: usize) -> u64 {
    let sqrt = 2f64.powi(candidates.min(120) as i32).sqrt().ceil();
    (sqrt as u64).clamp(3, 1 << 20)
}

/// Index of the minimum of `values`.
///
/// In `QuantumSim` mode this simulates the threshold-oracle minimum search on
/// a ⌈log2 k⌉-qubit index register: starting from a uniformly random
/// threshold index, each round marks {x : f(x) < f(threshold)}, amplifies the
/// marked set with the optimal Grover iteration count for the known marked
/// fraction, measures, and accepts the outcome as the new threshold whenever
/// it improves. Rounds where more than half the register is marked skip
/// amplification and measure the uniform superposition directly (one Grover
/// iteration would overshoot past the marked set there).
pub fn grover_find_min(values: &[f64], config: &GroverMinConfig) -> Result<usize> {
    if values.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::Numerical("NaN distance in minimum search".into()));
    }
    match config.mode {
        MinimizationMode::Deterministic => Ok(argmin(values)),
        MinimizationMode::QuantumSim => quantum_sim_min(values, config),
    }
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0usize;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

fn quantum_sim_min(values: &[f64], config: &GroverMinConfig) -> Result<usize> {
    let k = values.len();
    if k == 1 {
        return Ok(0);
    }
    let width = (usize::BITS - (k - 1).leading_zeros()) as usize;
    let dim = 1usize << width;
    let mut rng = seeding::rng_for(config.rng_seed, 0x6D1F);

    let mut threshold = rng.gen_range(0..k);
    for _ in 0..config.repetitions {
        let marked: Vec<usize> = (0..k).filter(|&x| values[x] < values[threshold]).collect();
        if marked.is_empty() {
            break; // the threshold is the minimum
        }
        let m = marked.len();
        let iterations = if 2 * m > dim {
            0
        } else {
            let optimal = (std::f64::consts::FRAC_PI_4 * (dim as f64 / m as f64).sqrt()).floor();
            (optimal as u64).max(1)
        };

        let mut state = uniform_superposition(width)?;
        for _ in 0..iterations {
            // Oracle: phase-flip the marked indices.
            {
                let amps = state.amplitudes_mut();
                for &x in &marked {
                    amps[x] = -amps[x];
                }
            }
            // Diffusion: reflect about the uniform superposition.
            {
                let amps = state.amplitudes_mut();
                let mean = amps.iter().sum::<num_complex::Complex64>() / amps.len() as f64;
                for a in amps.iter_mut() {
                    *a = 2.0 * mean - *a;
                }
            }
        }
        let outcome = state.sample_basis_index(&mut rng);
        if outcome < k && values[outcome] < values[threshold] {
            threshold = outcome;
        }
    }
    Ok(threshold)
}

fn uniform_superposition(width: usize) -> Result<StateVector> {
    let mut state = StateVector::new_zero_state(width)?;
    for q in 0..width {
        state.apply_gate(q, &SingleQubitGate::hadamard())?;
    }
    Ok(state)
}

fn is_zero_vector(v: &[f64]) -> bool {
    v.iter().all(|&x| x == 0.0)
}

// Two zero vectors admit no preparable state, but their distance is zero;
// the clustering loops and the scorer short-circuit that pair instead of
// failing on points that sit exactly at the origin.
fn swap_test_or_zero(u: &[f64], v: &[f64]) -> Result<f64> {
    if is_zero_vector(u) && is_zero_vector(v) {
        return Ok(0.0);
    }
    swap_test_distance(u, v)
}

fn interference_or_zero(a: &[f64], b: &[f64]) -> Result<f64> {
    if is_zero_vector(a) && is_zero_vector(b) {
        return Ok(0.0);
    }
    interference_distance(a, b)
}

/// Clustering algorithm family of a fitted model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterAlgorithm {
    QkMeans,
    QkMedians,
    /// Classical baselines: same loop with direct squared-Euclidean distances.
    KMeans,
    KMedians,
}

impl ClusterAlgorithm {
    fn tag(&self) -> &'static str {
        match self {
            ClusterAlgorithm::QkMeans => "qkmeans",
            ClusterAlgorithm::QkMedians => "qkmedians",
            ClusterAlgorithm::KMeans => "kmeans",
            ClusterAlgorithm::KMedians => "kmedians",
        }
    }

    fn from_tag(tag: &str) -> Result<Self> {
        Ok(match tag {
            "qkmeans" => ClusterAlgorithm::QkMeans,
            "qkmedians" => ClusterAlgorithm::QkMedians,
            "kmeans" => ClusterAlgorithm::KMeans,
            "kmedians" => ClusterAlgorithm::KMedians,
            other => return Err(Error::Format(format!("unknown algorithm tag {other:?}"))),
        })
    }
}

/// Fitted centroids plus the metadata needed to score with them.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterModel {
    pub centroids: Vec<Vec<f64>>,
    pub algorithm: ClusterAlgorithm,
    pub tolerance_epsilon: f64,
    pub iterations_run: usize,
}

/// Shared fit options.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterFitConfig {
    pub epsilon: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for ClusterFitConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-4,
            max_iterations: 300,
            seed: 0,
        }
    }
}

/// Initial centroids: k rows sampled uniformly without replacement.
pub fn initial_centroids(x: &FeatureMatrix, k: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if k == 0 || k > x.n_rows() {
        return Err(Error::Config(format!(
            "cluster count {k} outside 1..={}",
            x.n_rows()
        )));
    }
    let mut indices: Vec<usize> = (0..x.n_rows()).collect();
    let mut rng = seeding::rng_for(seed, 0xC3A7);
    indices.shuffle(&mut rng);
    Ok(indices[..k].iter().map(|&i| x.row(i).to_vec()).collect())
}

fn euclidean_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn mean_of(points: &[&[f64]]) -> Vec<f64> {
    let dim = points[0].len();
    let mut mean = vec![0.0; dim];
    for p in points {
        for (m, v) in mean.iter_mut().zip(*p) {
            *m += v;
        }
    }
    let n = points.len() as f64;
    mean.iter_mut().for_each(|m| *m /= n);
    mean
}

/// Geometric median by the Vardi–Zhang modified Weiszfeld iteration; safe
/// when the iterate coincides with a data point.
pub fn geometric_median(points: &[Vec<f64>], epsilon: f64) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if points.len() == 1 {
        return Ok(points[0].clone());
    }
    let dim = points[0].len();
    let refs: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    let mut current = mean_of(&refs);

    for _ in 0..10_000 {
        let mut weighted = vec![0.0; dim];
        let mut weight_sum = 0.0;
        let mut pull = vec![0.0; dim]; // Σ (p - y)/|p - y| over non-coincident points
        let mut coincident = 0usize;
        for p in points {
            let d = euclidean_sq(p, &current).sqrt();
            if d < 1e-14 {
                coincident += 1;
                continue;
            }
            let w = 1.0 / d;
            weight_sum += w;
            for ((acc, pl), (pv, cv)) in weighted
                .iter_mut()
                .zip(pull.iter_mut())
                .zip(p.iter().zip(&current))
            {
                *acc += w * pv;
                *pl += (pv - cv) / d;
            }
        }
        if weight_sum == 0.0 {
            break; // every point coincides with the iterate
        }
        let weiszfeld: Vec<f64> = weighted.iter().map(|v| v / weight_sum).collect();
        let next: Vec<f64> = if coincident == 0 {
            weiszfeld
        } else {
            // Vardi–Zhang step at a data point: stationary when the pull of the
            // other points does not exceed the coincident multiplicity.
            let pull_norm = pull.iter().map(|v| v * v).sum::<f64>().sqrt();
            if pull_norm <= coincident as f64 {
                break;
            }
            let blend = (coincident as f64 / pull_norm).min(1.0);
            weiszfeld
                .iter()
                .zip(&current)
                .map(|(w, c)| (1.0 - blend) * w + blend * c)
                .collect()
        };
        let step = euclidean_sq(&next, &current).sqrt();
        current = next;
        if step < epsilon {
            break;
        }
    }
    Ok(current)
}

enum CentroidUpdate {
    Mean,
    Median { epsilon: f64 },
}

fn reseed_farthest(
    x: &FeatureMatrix,
    old_centroid: &[f64],
    dist: &(dyn Fn(&[f64], &[f64]) -> Result<f64> + Sync),
) -> Result<Vec<f64>> {
    let mut best = 0usize;
    let mut best_dist = f64::NEG_INFINITY;
    for i in 0..x.n_rows() {
        let d = dist(x.row(i), old_centroid)?;
        if d > best_dist {
            best_dist = d;
            best = i;
        }
    }
    Ok(x.row(best).to_vec())
}

fn lloyd_fit(
    x: &FeatureMatrix,
    k: usize,
    config: &ClusterFitConfig,
    algorithm: ClusterAlgorithm,
    dist: &(dyn Fn(&[f64], &[f64]) -> Result<f64> + Sync),
    update: CentroidUpdate,
    min_config: Option<&GroverMinConfig>,
    init: Option<Vec<Vec<f64>>>,
) -> Result<ClusterModel> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if k == 0 || k > x.n_rows() {
        return Err(Error::Config(format!(
            "cluster count {k} outside 1..={}",
            x.n_rows()
        )));
    }
    let mut centroids = match init {
        Some(init) => {
            if init.len() != k {
                return Err(Error::Config(format!(
                    "{} initial centroids provided for k = {k}",
                    init.len()
                )));
            }
            init
        }
        None => initial_centroids(x, k, config.seed)?,
    };

    let n = x.n_rows();
    let mut iterations_run = 0usize;
    for iteration in 0..config.max_iterations {
        iterations_run = iteration + 1;
        let assignments: Vec<usize> = (0..n)
            .into_par_iter()
            .map(|i| -> Result<usize> {
                let distances: Vec<f64> = centroids
                    .iter()
                    .map(|c| dist(x.row(i), c))
                    .collect::<Result<_>>()?;
                match min_config {
                    None => Ok(argmin(&distances)),
                    Some(mc) => {
                        // Per-point derived seed keeps parallel assignment
                        // deterministic and independent of worker count.
                        let seeded = mc.with_seed(seeding::mix2(
                            mc.rng_seed,
                            iteration as u64,
                            i as u64,
                        ));
                        grover_find_min(&distances, &seeded)
                    }
                }
            })
            .collect::<Result<_>>()?;

        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &c) in assignments.iter().enumerate() {
            members[c].push(i);
        }

        let mut max_shift: f64 = 0.0;
        let mut next = Vec::with_capacity(k);
        for (c, member_ids) in members.iter().enumerate() {
            let centroid = if member_ids.is_empty() {
                reseed_farthest(x, &centroids[c], dist)?
            } else {
                match update {
                    CentroidUpdate::Mean => {
                        let rows: Vec<&[f64]> = member_ids.iter().map(|&i| x.row(i)).collect();
                        mean_of(&rows)
                    }
                    CentroidUpdate::Median { epsilon } => {
                        let rows: Vec<Vec<f64>> =
                            member_ids.iter().map(|&i| x.row(i).to_vec()).collect();
                        geometric_median(&rows, epsilon)?
                    }
                }
            };
            max_shift = max_shift.max(euclidean_sq(&centroid, &centroids[c]).sqrt());
            next.push(centroid);
        }
        centroids = next;
        if max_shift < config.epsilon {
            break;
        }
    }

    Ok(ClusterModel {
        centroids,
        algorithm,
        tolerance_epsilon: config.epsilon,
        iterations_run,
    })
}

/// Quantum K-means: swap-test distances, minimum finding per `min_config`,
/// classical mean updates. Emptied clusters are reseeded to the point
/// farthest from their previous position.
pub fn qkmeans_fit(
    x: &FeatureMatrix,
    k: usize,
    config: &ClusterFitConfig,
    min_config: &GroverMinConfig,
) -> Result<ClusterModel> {
    lloyd_fit(
        x,
        k,
        config,
        ClusterAlgorithm::QkMeans,
        &swap_test_or_zero,
        CentroidUpdate::Mean,
        Some(min_config),
        None,
    )
}

/// Quantum K-means from explicit initial centroids (shared-initialization
/// comparisons against classical baselines).
pub fn qkmeans_fit_with_init(
    x: &FeatureMatrix,
    init: Vec<Vec<f64>>,
    config: &ClusterFitConfig,
    min_config: &GroverMinConfig,
) -> Result<ClusterModel> {
    let k = init.len();
    lloyd_fit(
        x,
        k,
        config,
        ClusterAlgorithm::QkMeans,
        &swap_test_or_zero,
        CentroidUpdate::Mean,
        Some(min_config),
        Some(init),
    )
}

/// Quantum K-medians: interference distances, classical argmin assignment,
/// geometric-median updates.
pub fn qkmedians_fit(x: &FeatureMatrix, k: usize, config: &ClusterFitConfig) -> Result<ClusterModel> {
    let median_eps = (config.epsilon * 0.1).min(1e-6);
    lloyd_fit(
        x,
        k,
        config,
        ClusterAlgorithm::QkMedians,
        &interference_or_zero,
        CentroidUpdate::Median { epsilon: median_eps },
        None,
        None,
    )
}

pub fn qkmedians_fit_with_init(
    x: &FeatureMatrix,
    init: Vec<Vec<f64>>,
    config: &ClusterFitConfig,
) -> Result<ClusterModel> {
    let k = init.len();
    let median_eps = (config.epsilon * 0.1).min(1e-6);
    lloyd_fit(
        x,
        k,
        config,
        ClusterAlgorithm::QkMedians,
        &interference_or_zero,
        CentroidUpdate::Median { epsilon: median_eps },
        None,
        Some(init),
    )
}

/// Classical K-means baseline: identical loop with direct squared distances.
pub fn kmeans_fit(x: &FeatureMatrix, k: usize, config: &ClusterFitConfig) -> Result<ClusterModel> {
    lloyd_fit(
        x,
        k,
        config,
        ClusterAlgorithm::KMeans,
        &|a, b| Ok(euclidean_sq(a, b)),
        CentroidUpdate::Mean,
        None,
        None,
    )
}

/// Classical K-medians baseline.
pub fn kmedians_fit(x: &FeatureMatrix, k: usize, config: &ClusterFitConfig) -> Result<ClusterModel> {
    let median_eps = (config.epsilon * 0.1).min(1e-6);
    lloyd_fit(
        x,
        k,
        config,
        ClusterAlgorithm::KMedians,
        &|a, b| Ok(euclidean_sq(a, b)),
        CentroidUpdate::Median { epsilon: median_eps },
        None,
        None,
    )
}

/// Distance to the nearest centroid under the model's own metric; higher =
/// more anomalous.
pub fn cluster_anomaly_score(model: &ClusterModel, x: &[f64]) -> Result<f64> {
    if model.centroids.is_empty() {
        return Err(Error::Config("model has no centroids".into()));
    }
    let mut best = f64::INFINITY;
    for c in &model.centroids {
        let d = match model.algorithm {
            ClusterAlgorithm::QkMeans => swap_test_or_zero(x, c)?,
            ClusterAlgorithm::QkMedians => interference_or_zero(x, c)?,
            ClusterAlgorithm::KMeans | ClusterAlgorithm::KMedians => euclidean_sq(x, c),
        };
        best = best.min(d);
    }
    Ok(best)
}

impl ClusterModel {
    /// Plain-text record: algorithm tag, ε, iteration count, then the
    /// centroid matrix at 17 significant digits.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "QADCLUSTER 1")?;
        writeln!(w, "algorithm {}", self.algorithm.tag())?;
        writeln!(w, "epsilon {:.16e}", self.tolerance_epsilon)?;
        writeln!(w, "iterations {}", self.iterations_run)?;
        let dim = self.centroids.first().map_or(0, Vec::len);
        writeln!(w, "centroids {} {}", self.centroids.len(), dim)?;
        for c in &self.centroids {
            let line: Vec<String> = c.iter().map(|v| format!("{v:.16e}")).collect();
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
        if header.trim() != "QADCLUSTER 1" {
            return Err(Error::Format(format!("unexpected model header {header:?}")));
        }
        let algorithm_line = next_line("algorithm")?;
        let algorithm = ClusterAlgorithm::from_tag(
            algorithm_line
                .strip_prefix("algorithm ")
                .ok_or_else(|| Error::Format(format!("bad algorithm line {algorithm_line:?}")))?
                .trim(),
        )?;
        let epsilon_line = next_line("epsilon")?;
        let tolerance_epsilon: f64 = epsilon_line
            .strip_prefix("epsilon ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Format(format!("bad epsilon line {epsilon_line:?}")))?;
        let iter_line = next_line("iterations")?;
        let iterations_run: usize = iter_line
            .strip_prefix("iterations ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Format(format!("bad iterations line {iter_line:?}")))?;
        let shape_line = next_line("centroids")?;
        let parts: Vec<&str> = shape_line.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "centroids" {
            return Err(Error::Format(format!("bad centroids header {shape_line:?}")));
        }
        let k: usize = parts[1]
            .parse()
            .map_err(|_| Error::Format("bad centroid count".into()))?;
        let dim: usize = parts[2]
            .parse()
            .map_err(|_| Error::Format("bad centroid dimension".into()))?;
        let mut centroids = Vec::with_capacity(k);
        for _ in 0..k {
            let line = next_line("centroid row")?;
            let row: Vec<f64> = line
                .split(',')
                .map(|cell| {
                    cell.trim()
                        .parse()
                        .map_err(|_| Error::Format(format!("bad centroid value {cell:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != dim {
                return Err(Error::Format(format!(
                    "centroid row has {} values, expected {dim}",
                    row.len()
                )));
            }
            centroids.push(row);
        }
        let end = next_line("end marker")?;
        if end.trim() != "end" {
            return Err(Error::Format(format!("expected end marker, got {end:?}")));
        }
        Ok(ClusterModel {
            centroids,
            algorithm,
            tolerance_epsilon,
            iterations_run,
        })
    }
}
