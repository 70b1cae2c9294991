//! Data-encoding circuits: the angle-encoding feature map behind the quantum
//! kernel, and the amplitude encodings used by the clustering distances.
//!
//! The feature map consumes two features per qubit per layer. One repetition
//! applies a rotation layer, an optional nearest-neighbor CNOT chain, and a
//! second rotation layer with the two feature roles swapped; repetitions
//! cyclically permute which feature lands on which rotation angle so that no
//! feature is pinned to a single axis as the depth grows.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::{SingleQubitGate, StateVector, MAX_QUBITS};

/// Shape of the angle-encoding circuit U(x).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EncodingConfig {
    pub n_qubits: usize,
    /// Repetitions of the encoding block; 0 leaves the register in |0...0⟩.
    pub depth: usize,
    /// When false ("NE"), the circuit contains zero CNOT gates.
    pub entanglement: bool,
    /// Radians per unit feature; π maps the latent range (-1, 1) onto (-π, π).
    pub angle_scale: f64,
}

impl EncodingConfig {
    pub fn new(n_qubits: usize, depth: usize, entanglement: bool) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(Self {
            n_qubits,
            depth,
            entanglement,
            angle_scale: std::f64::consts::PI,
        })
    }

    pub fn with_angle_scale(mut self, angle_scale: f64) -> Self {
        self.angle_scale = angle_scale;
        self
    }

    /// Features consumed per input vector: two per qubit.
    pub fn feature_dim(&self) -> usize {
        2 * self.n_qubits
    }
}

/// U(x)|0⟩ for a feature vector with entries in [-1, 1].
pub fn encode(x: &[f64], config: &EncodingConfig) -> Result<StateVector> {
    let n = config.feature_dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    for (i, &v) in x.iter().enumerate() {
        if !(v.abs() <= 1.0) {
            return Err(Error::FeatureOutOfDomain { index: i, value: v });
        }
    }
    let mut state = StateVector::new_zero_state(config.n_qubits)?;
    let scale = config.angle_scale;
    for rep in 0..config.depth {
        // Cyclic feature-to-angle shift for this repetition.
        let sigma = |i: usize| (i + 2 * rep) % n;
        for q in 0..config.n_qubits {
            let theta = scale * x[sigma(2 * q)];
            let phi = scale * x[sigma(2 * q + 1)];
            state.apply_gate(q, &SingleQubitGate::new(theta, phi, 0.0))?;
        }
        if config.entanglement {
            for q in 0..config.n_qubits.saturating_sub(1) {
                state.apply_cnot(q, q + 1)?;
            }
        }
        // Second rotation layer with θ and φ roles swapped.
        for q in 0..config.n_qubits {
            let theta = scale * x[sigma(2 * q + 1)];
            let phi = scale * x[sigma(2 * q)];
            state.apply_gate(q, &SingleQubitGate::new(theta, phi, 0.0))?;
        }
    }
    Ok(state)
}

/// The two states of the controlled-swap-test distance circuit, plus the
/// normalization Z = |u|² + |v|².
#[derive(Clone, Debug)]
pub struct PairEncoding {
    /// (|0⟩|u/|u|⟩ + |1⟩|v/|v|⟩)/√2 over 1 + log2(dim) qubits; the index
    /// qubit is the most significant one.
    pub psi: StateVector,
    /// (|u| |0⟩ − |v| |1⟩)/√Z on a single qubit.
    pub phi: StateVector,
    pub z: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Unit vector along `v` padded to `dim`; an arbitrary basis direction when
/// `v` is zero (its weight in the encodings below is then zero as well).
fn padded_direction(v: &[f64], dim: usize) -> Vec<f64> {
    let n = norm(v);
    let mut out = vec![0.0; dim];
    if n == 0.0 {
        out[0] = 1.0;
    } else {
        for (o, &x) in out.iter_mut().zip(v) {
            *o = x / n;
        }
    }
    out
}

/// Amplitude encoding for the swap-test distance.
pub fn amplitude_encode_pair(u: &[f64], v: &[f64]) -> Result<PairEncoding> {
    if u.is_empty() || u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len().max(1),
            got: v.len(),
        });
    }
    let nu = norm(u);
    let nv = norm(v);
    let z = nu * nu + nv * nv;
    if z == 0.0 {
        return Err(Error::DegenerateInput(
            "both vectors are zero; no state can be prepared".into(),
        ));
    }
    let dim = u.len().next_power_of_two();
    let u_dir = padded_direction(u, dim);
    let v_dir = padded_direction(v, dim);

    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut psi_amps = vec![Complex64::new(0.0, 0.0); 2 * dim];
    for j in 0..dim {
        psi_amps[j] = Complex64::new(u_dir[j] * inv_sqrt2, 0.0);
        psi_amps[dim + j] = Complex64::new(v_dir[j] * inv_sqrt2, 0.0);
    }
    let psi = StateVector::from_amplitudes(psi_amps)?;

    let sqrt_z = z.sqrt();
    let phi = StateVector::from_amplitudes(vec![
        Complex64::new(nu / sqrt_z, 0.0),
        Complex64::new(-nv / sqrt_z, 0.0),
    ])?;

    Ok(PairEncoding { psi, phi, z })
}

/// Concatenated amplitude encoding for the interference distance.
#[derive(Clone, Debug)]
pub struct ConcatEncoding {
    /// [a₁′…aₙ′ b₁′…bₙ′]ᵀ, zero-padded so each half has power-of-two length;
    /// the most significant qubit selects the half.
    pub state: StateVector,
    /// 𝒩 = √(Σa² + Σb²).
    pub norm: f64,
}

pub fn amplitude_encode_concat(a: &[f64], b: &[f64]) -> Result<ConcatEncoding> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len().max(1),
            got: b.len(),
        });
    }
    let total: f64 = a.iter().chain(b).map(|x| x * x).sum();
    let n = total.sqrt();
    if n == 0.0 {
        return Err(Error::DegenerateInput(
            "zero total norm; no state can be prepared".into(),
        ));
    }
    let half = a.len().next_power_of_two();
    let mut amps = vec![Complex64::new(0.0, 0.0); 2 * half];
    for (j, &x) in a.iter().enumerate() {
        amps[j] = Complex64::new(x / n, 0.0);
    }
    for (j, &x) in b.iter().enumerate() {
        amps[half + j] = Complex64::new(x / n, 0.0);
    }
    Ok(ConcatEncoding {
        state: StateVector::from_amplitudes(amps)?,
        norm: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::SingleQubitGate;
    use crate::testutil::{apply_circuit_dense, assert_close, DenseOp};

    #[test]
    fn depth_zero_is_the_zero_state() {
        let config = EncodingConfig::new(3, 0, true).unwrap();
        let s = encode(&[0.3, -0.2, 0.9, 0.1, -0.7, 0.5], &config).unwrap();
        assert_close(s.amplitudes()[0].re, 1.0, 0.0);
    }

    #[test]
    fn zero_features_give_zero_state() {
        let config = EncodingConfig::new(2, 1, true).unwrap();
        let s = encode(&[0.0; 4], &config).unwrap();
        assert_close(s.amplitudes()[0].norm(), 1.0, 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let config = EncodingConfig::new(2, 1, true).unwrap();
        assert!(matches!(
            encode(&[0.0; 3], &config),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            encode(&[0.0, 1.5, 0.0, 0.0], &config),
            Err(Error::FeatureOutOfDomain { index: 1, .. })
        ));
        assert!(encode(&[0.0, f64::NAN, 0.0, 0.0], &config).is_err());
    }

    #[test]
    fn matches_gate_by_gate_dense_product() {
        let config = EncodingConfig::new(2, 1, true).unwrap();
        let x = [0.5, -0.3, 0.1, 0.9];
        let s = encode(&x, &config).unwrap();

        let pi = std::f64::consts::PI;
        let ops = vec![
            DenseOp::Single {
                qubit: 0,
                matrix: SingleQubitGate::new(pi * x[0], pi * x[1], 0.0).matrix(),
            },
            DenseOp::Single {
                qubit: 1,
                matrix: SingleQubitGate::new(pi * x[2], pi * x[3], 0.0).matrix(),
            },
            DenseOp::Cnot { control: 0, target: 1 },
            DenseOp::Single {
                qubit: 0,
                matrix: SingleQubitGate::new(pi * x[1], pi * x[0], 0.0).matrix(),
            },
            DenseOp::Single {
                qubit: 1,
                matrix: SingleQubitGate::new(pi * x[3], pi * x[2], 0.0).matrix(),
            },
        ];
        let expected = apply_circuit_dense(&StateVector::new_zero_state(2).unwrap(), &ops);
        for (a, b) in s.amplitudes().iter().zip(expected.iter()) {
            assert_close(a.re, b.re, 1e-10);
            assert_close(a.im, b.im, 1e-10);
        }
    }

    #[test]
    fn encode_is_normalized_and_deterministic() {
        let config = EncodingConfig::new(3, 4, true).unwrap();
        let x = [0.1, -0.9, 0.4, 0.8, -0.2, 0.6];
        let a = encode(&x, &config).unwrap();
        let b = encode(&x, &config).unwrap();
        assert!((a.norm_sqr() - 1.0).abs() < 1e-10);
        assert_eq!(a.amplitudes(), b.amplitudes());
    }

    #[test]
    fn no_entanglement_yields_product_states() {
        let config = EncodingConfig::new(4, 3, false).unwrap();
        let x = [0.3, -0.5, 0.8, 0.2, -0.9, 0.4, 0.05, -0.35];
        let s = encode(&x, &config).unwrap();
        for q in 0..4 {
            assert_close(s.reduced_qubit_purity(q).unwrap(), 1.0, 1e-10);
        }
    }

    #[test]
    fn pair_encoding_formula_cases() {
        // u = v = (1, 0): Z = 2, phi = (|0> - |1>)/sqrt(2).
        let enc = amplitude_encode_pair(&[1.0, 0.0], &[1.0, 0.0]).unwrap();
        assert_close(enc.z, 2.0, 1e-15);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(enc.phi.amplitudes()[0].re, inv_sqrt2, 1e-12);
        assert_close(enc.phi.amplitudes()[1].re, -inv_sqrt2, 1e-12);

        // u = (1,0), v = (0,1): psi = (|0>|0> + |1>|1>)/sqrt(2).
        let enc = amplitude_encode_pair(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        let amps = enc.psi.amplitudes();
        assert_close(amps[0].re, inv_sqrt2, 1e-12);
        assert_close(amps[3].re, inv_sqrt2, 1e-12);
        assert_close(amps[1].norm() + amps[2].norm(), 0.0, 1e-12);

        assert!(matches!(
            amplitude_encode_pair(&[0.0, 0.0], &[0.0, 0.0]),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn concat_encoding_layout_and_padding() {
        // a = (1,0), b = (0,1) -> (1/sqrt2, 0, 0, 1/sqrt2) on 2 qubits.
        let enc = amplitude_encode_concat(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(enc.state.n_qubits(), 2);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(enc.state.amplitudes()[0].re, inv_sqrt2, 1e-12);
        assert_close(enc.state.amplitudes()[3].re, inv_sqrt2, 1e-12);

        // identical halves interfere destructively after a Hadamard on the MSQB.
        let enc = amplitude_encode_concat(&[0.4, -0.3, 0.2], &[0.4, -0.3, 0.2]).unwrap();
        let mut s = enc.state.clone();
        let msqb = s.n_qubits() - 1;
        s.apply_gate(msqb, &SingleQubitGate::hadamard()).unwrap();
        assert_close(s.probability_qubit_one(msqb).unwrap(), 0.0, 1e-12);

        // odd length pads each half to 4: 3 qubits, norm sqrt(3).
        let enc = amplitude_encode_concat(&[1.0, 1.0, 1.0], &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(enc.state.n_qubits(), 3);
        assert_close(enc.norm, 3.0_f64.sqrt(), 1e-12);

        assert!(matches!(
            amplitude_encode_concat(&[0.0], &[0.0]),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn concat_hadamard_matches_vector_identity() {
        // P(MSQB = 1) = ||a - b||^2 / (2 N^2), checked against direct arithmetic.
        let a = [0.7, -0.1, 0.3, 0.9, 0.05];
        let b = [-0.2, 0.4, 0.3, -0.6, 0.8];
        let enc = amplitude_encode_concat(&a, &b).unwrap();
        let mut s = enc.state.clone();
        let msqb = s.n_qubits() - 1;
        s.apply_gate(msqb, &SingleQubitGate::hadamard()).unwrap();
        let p1 = s.probability_qubit_one(msqb).unwrap();
        let dist_sq: f64 = a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum();
        assert_close(p1, dist_sq / (2.0 * enc.norm * enc.norm), 1e-10);
    }
}
