//! Test-only helpers: a brute-force dense-matrix circuit oracle and random
//! state generation. The oracle builds explicit 2^n x 2^n operators via
//! Kronecker products and never goes through the simulator's gate kernels.

use num_complex::Complex64;
use rand::Rng;

use crate::statevector::{SingleQubitGate, StateVector};

pub fn assert_close(got: f64, expected: f64, tol: f64) {
    assert!(
        (got - expected).abs() <= tol,
        "got {got}, expected {expected} (tol {tol})"
    );
}

/// One circuit element for the dense oracle.
pub enum DenseOp {
    Single { qubit: usize, matrix: [[Complex64; 2]; 2] },
    Cnot { control: usize, target: usize },
}

pub fn kron_gate(gate: &SingleQubitGate) -> [[Complex64; 2]; 2] {
    gate.matrix()
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Dense 2^n x 2^n matrix of a single-qubit gate on `qubit` (little-endian).
fn single_qubit_operator(n: usize, qubit: usize, m: &[[Complex64; 2]; 2]) -> Vec<Vec<Complex64>> {
    let dim = 1 << n;
    let bit = 1usize << qubit;
    let mut op = vec![vec![zero(); dim]; dim];
    for col in 0..dim {
        let cb = (col & bit != 0) as usize;
        for rb in 0..2 {
            let row = (col & !bit) | (rb * bit);
            op[row][col] += m[rb][cb];
        }
    }
    op
}

/// Dense CNOT matrix (a permutation).
fn cnot_operator(n: usize, control: usize, target: usize) -> Vec<Vec<Complex64>> {
    let dim = 1 << n;
    let cbit = 1usize << control;
    let tbit = 1usize << target;
    let mut op = vec![vec![zero(); dim]; dim];
    for col in 0..dim {
        let row = if col & cbit != 0 { col ^ tbit } else { col };
        op[row][col] = Complex64::new(1.0, 0.0);
    }
    op
}

fn mat_vec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Applies a circuit to a state by explicit matrix-vector products.
pub fn apply_circuit_dense(state: &StateVector, ops: &[DenseOp]) -> Vec<Complex64> {
    let n = state.n_qubits();
    let mut v: Vec<Complex64> = state.amplitudes().to_vec();
    for op in ops {
        let m = match op {
            DenseOp::Single { qubit, matrix } => single_qubit_operator(n, *qubit, matrix),
            DenseOp::Cnot { control, target } => cnot_operator(n, *control, *target),
        };
        v = mat_vec(&m, &v);
    }
    v
}

/// Haar-ish random normalized state (Gaussian amplitudes, normalized).
pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let dim = 1usize << n;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| {
            Complex64::new(
                rng.gen::<f64>() * 2.0 - 1.0,
                rng.gen::<f64>() * 2.0 - 1.0,
            )
        })
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(amps).unwrap()
}
