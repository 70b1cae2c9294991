//! Minimal dense statevector simulator.
//!
//! States are full complex amplitude vectors over `2^n_qubits` basis states.
//! Qubit ordering is little-endian: qubit 0 is the least-significant bit of
//! the basis index. All gate applications preserve the norm, and every
//! operation either returns a fresh state or mutates an exclusively-owned
//! buffer, so states are freely shareable across threads once constructed.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Hard cap on the register width; keeps one state under ~1 GiB of amplitudes.
pub const MAX_QUBITS: usize = 26;

/// Universal single-qubit gate G(θ, φ, λ) with matrix
///
/// ```text
/// [ cos(θ/2)            -e^{iλ} sin(θ/2)     ]
/// [ e^{iφ} sin(θ/2)      e^{i(φ+λ)} cos(θ/2) ]
/// ```
///
/// The determinant is e^{i(φ+λ)}; the global phase relative to the SU(2)
/// representative cancels in every fidelity-type observable computed here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitGate {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

impl SingleQubitGate {
    pub fn new(theta: f64, phi: f64, lambda: f64) -> Self {
        Self { theta, phi, lambda }
    }

    /// Hadamard as G(π/2, 0, π).
    pub fn hadamard() -> Self {
        Self::new(std::f64::consts::FRAC_PI_2, 0.0, std::f64::consts::PI)
    }

    /// The 2x2 unitary realized by this gate.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let (sin_half, cos_half) = (self.theta / 2.0).sin_cos();
        [
            [
                Complex64::new(cos_half, 0.0),
                -Complex64::from_polar(sin_half, self.lambda),
            ],
            [
                Complex64::from_polar(sin_half, self.phi),
                Complex64::from_polar(cos_half, self.phi + self.lambda),
            ],
        ]
    }
}

/// Pure state of an `n_qubits` register.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0...0⟩ on `n_qubits` wires.
    pub fn new_zero_state(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Builds a state from raw amplitudes; the length must be a power of two
    /// and the vector must be normalized within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() || len > (1 << MAX_QUBITS) {
            return Err(Error::QubitCount {
                n_qubits: len.trailing_zeros() as usize,
                max: MAX_QUBITS,
            });
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits == 0 {
            return Err(Error::QubitCount { n_qubits: 0, max: MAX_QUBITS });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Numerical(format!(
                "amplitude vector has squared norm {norm}, expected 1"
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Raw amplitude access for algorithms that manipulate the state directly
    /// (oracle phase flips, diffusion). The caller keeps the norm invariant.
    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Σ|amplitude|²; 1 within 1e-10 after any gate sequence.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitIndex {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Applies a single-qubit gate on the given wire.
    pub fn apply_gate(&mut self, qubit: usize, gate: &SingleQubitGate) -> Result<()> {
        self.check_qubit(qubit)?;
        let [[m00, m01], [m10, m11]] = gate.matrix();
        let bit = 1usize << qubit;
        for base in 0..self.amps.len() {
            if base & bit == 0 {
                let a = self.amps[base];
                let b = self.amps[base | bit];
                self.amps[base] = m00 * a + m01 * b;
                self.amps[base | bit] = m10 * a + m11 * b;
            }
        }
        Ok(())
    }

    /// CNOT: flips `target` on basis states whose `control` bit is 1.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::EqualQubits { qubit: control });
        }
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for base in 0..self.amps.len() {
            if base & cbit != 0 && base & tbit == 0 {
                self.amps.swap(base, base | tbit);
            }
        }
        Ok(())
    }

    /// Controlled swap (Fredkin): exchanges wires `a` and `b` on basis states
    /// whose `control` bit is 1.
    pub fn apply_cswap(&mut self, control: usize, a: usize, b: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if control == a || control == b {
            return Err(Error::EqualQubits { qubit: control });
        }
        if a == b {
            return Err(Error::EqualQubits { qubit: a });
        }
        let cbit = 1usize << control;
        let abit = 1usize << a;
        let bbit = 1usize << b;
        for base in 0..self.amps.len() {
            if base & cbit != 0 && base & abit != 0 && base & bbit == 0 {
                self.amps.swap(base, base ^ abit ^ bbit);
            }
        }
        Ok(())
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: other.n_qubits,
            });
        }
        let overlap: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(overlap.norm_sqr().min(1.0))
    }

    /// Probability of measuring the given qubit in |1⟩.
    pub fn probability_qubit_one(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let p: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok(p.clamp(0.0, 1.0))
    }

    /// tr(ρ_q²) of the single-qubit reduced density matrix; 0.5 for a
    /// maximally entangled qubit, 1 for a product state.
    pub fn reduced_qubit_purity(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let mut p00 = 0.0;
        let mut p11 = 0.0;
        let mut rho01 = Complex64::new(0.0, 0.0);
        for base in 0..self.amps.len() {
            if base & bit == 0 {
                let a = self.amps[base];
                let b = self.amps[base | bit];
                p00 += a.norm_sqr();
                p11 += b.norm_sqr();
                rho01 += a * b.conj();
            }
        }
        Ok(p00 * p00 + p11 * p11 + 2.0 * rho01.norm_sqr())
    }

    /// Tensor product; `other` occupies the low qubits of the result.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n_qubits = self.n_qubits + other.n_qubits;
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        let mut amps = Vec::with_capacity(1 << n_qubits);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { n_qubits, amps })
    }

    /// Samples a basis-state index from the measurement distribution.
    pub fn sample_basis_index<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen::<f64>() * self.norm_sqr();
        let mut acc = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr();
            if u < acc {
                return i;
            }
        }
        self.amps.len() - 1
    }
}
