use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{renormalization, NORM_TOLERANCE};
use crate::{Error, Result};

/// Registers larger than this are refused (2^24 amplitudes is 256 MiB).
pub const MAX_QUBITS: usize = 24;

const UNITARY_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A one- or two-qubit unitary.
///
/// For a two-qubit gate the first target is the more significant bit of the
/// gate's basis ordering, so `cnot()` applied to `[c, t]` controls on `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    matrix: DMatrix<Complex64>,
    arity: usize,
}

impl Gate {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let arity = match matrix.shape() {
            (2, 2) => 1,
            (4, 4) => 2,
            (r, _) => return Err(Error::GateArity { dim: r, targets: 0 }),
        };
        let dim = matrix.nrows();
        let deviation =
            (matrix.adjoint() * &matrix - DMatrix::<Complex64>::identity(dim, dim)).camax();
        if deviation.is_nan() || deviation > UNITARY_TOLERANCE {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(Gate { matrix, arity })
    }

    fn from_real(dim: usize, entries: &[f64]) -> Self {
        let matrix =
            DMatrix::from_row_iterator(dim, dim, entries.iter().map(|&x| Complex64::new(x, 0.0)));
        Gate::new(matrix).expect("built-in gate is unitary")
    }

    pub fn identity() -> Self {
        Self::from_real(2, &[1.0, 0.0, 0.0, 1.0])
    }

    pub fn x() -> Self {
        Self::from_real(2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn z() -> Self {
        Self::from_real(2, &[1.0, 0.0, 0.0, -1.0])
    }

    pub fn y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Gate::new(DMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO])).expect("Y is unitary")
    }

    pub fn h() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(2, &[s, s, s, -s])
    }

    pub fn cnot() -> Self {
        #[rustfmt::skip]
        let m = [
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 0.0,
        ];
        Self::from_real(4, &m)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Number of qubits the gate acts on.
    pub fn arity(&self) -> usize {
        self.arity
    }
}

/// A normalized single-qubit pure state `α|0⟩ + β|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    alpha: Complex64,
    beta: Complex64,
}

impl QubitState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        let scale = renormalization(norm_sqr)?;
        Ok(QubitState {
            alpha: alpha * scale,
            beta: beta * scale,
        })
    }

    pub fn zero() -> Self {
        QubitState {
            alpha: ONE,
            beta: ZERO,
        }
    }

    pub fn one() -> Self {
        QubitState {
            alpha: ZERO,
            beta: ONE,
        }
    }

    /// Haar-random state, drawn from four independent normals.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut draw = || rng.sample::<f64, _>(StandardNormal);
            let alpha = Complex64::new(draw(), draw());
            let beta = Complex64::new(draw(), draw());
            let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
            if norm > 1e-300 {
                return QubitState {
                    alpha: alpha / norm,
                    beta: beta / norm,
                };
            }
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.alpha, self.beta]
    }
}

/// Outcome of a single-qubit measurement in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub outcome: u8,
    /// Born probability of `outcome` before the collapse.
    pub probability: f64,
}

/// Dense state vector of up to [`MAX_QUBITS`] qubits.
///
/// Qubit 0 is the leftmost label in a ket, i.e. the most significant bit of
/// the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct Register {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Register {
    /// All qubits in `|0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// The computational basis state with the given index.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let len = 1usize << n_qubits;
        if index >= len {
            return Err(Error::param("index", format!("{index} >= 2^{n_qubits}")));
        }
        let mut amps = vec![ZERO; len];
        amps[index] = ONE;
        Ok(Register { n_qubits, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "amplitude vector length {} is not a power of two",
                amps.len()
            )));
        }
        let n_qubits = amps.len().trailing_zeros() as usize;
        check_size(n_qubits)?;
        let norm_sqr: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        let scale = renormalization(norm_sqr)?;
        let amps = if (norm_sqr - 1.0).abs() > NORM_TOLERANCE / 10.0 {
            amps.into_iter().map(|c| c * scale).collect()
        } else {
            amps
        };
        Ok(Register { n_qubits, amps })
    }

    /// Tensor product of single-qubit states, qubit 0 first.
    pub fn product(qubits: &[QubitState]) -> Result<Self> {
        check_size(qubits.len())?;
        let mut amps = vec![ONE];
        for q in qubits {
            amps = amps
                .iter()
                .flat_map(|&c| [c * q.alpha, c * q.beta])
                .collect();
        }
        Ok(Register {
            n_qubits: qubits.len(),
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    fn bit_mask(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(1 << (self.n_qubits - 1 - qubit))
    }

    /// Apply `gate` to `targets`, identity on every other qubit.
    pub fn apply(&mut self, gate: &Gate, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity {
            return Err(Error::GateArity {
                dim: gate.matrix.nrows(),
                targets: targets.len(),
            });
        }
        let masks = targets
            .iter()
            .map(|&t| self.bit_mask(t))
            .collect::<Result<Vec<_>>>()?;
        for (i, &t) in targets.iter().enumerate() {
            if targets[..i].contains(&t) {
                return Err(Error::DuplicateTarget(t));
            }
        }

        let all_targets: usize = masks.iter().fold(0, |acc, m| acc | m);
        let local_dim = 1usize << masks.len();
        // global index offset for each local basis state, first target most significant
        let offsets: Vec<usize> = (0..local_dim)
            .map(|local| {
                masks.iter().enumerate().fold(0, |acc, (pos, &mask)| {
                    if local & (1 << (masks.len() - 1 - pos)) != 0 {
                        acc | mask
                    } else {
                        acc
                    }
                })
            })
            .collect();

        let mut scratch = vec![ZERO; local_dim];
        for base in (0..self.amps.len()).filter(|i| i & all_targets == 0) {
            for (slot, &off) in scratch.iter_mut().zip(&offsets) {
                *slot = self.amps[base | off];
            }
            for (row, &off) in offsets.iter().enumerate() {
                self.amps[base | off] = (0..local_dim)
                    .map(|col| gate.matrix[(row, col)] * scratch[col])
                    .sum();
            }
        }
        Ok(())
    }

    /// Probability of reading `bit` on `qubit`.
    pub fn outcome_probability(&self, qubit: usize, bit: u8) -> Result<f64> {
        let mask = self.bit_mask(qubit)?;
        let want = if bit == 0 { 0 } else { mask };
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == want)
            .map(|(_, c)| c.norm_sqr())
            .sum())
    }

    /// Projective measurement of `qubit`, collapsing and renormalizing the
    /// register.
    pub fn measure<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<Measurement> {
        let mask = self.bit_mask(qubit)?;
        let p1 = self.outcome_probability(qubit, 1)?.clamp(0.0, 1.0);
        let outcome = u8::from(rng.random::<f64>() < p1);
        let probability = if outcome == 1 {
            p1
        } else {
            self.outcome_probability(qubit, 0)?
        };
        let keep = if outcome == 1 { mask } else { 0 };
        let scale = 1.0 / probability.sqrt();
        for (i, c) in self.amps.iter_mut().enumerate() {
            if i & mask == keep {
                *c *= scale;
            } else {
                *c = ZERO;
            }
        }
        Ok(Measurement {
            outcome,
            probability,
        })
    }

    pub fn fidelity(&self, other: &Register) -> Result<f64> {
        fidelity(&self.amps, &other.amps)
    }
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::param(
            "n_qubits",
            "a register needs at least one qubit",
        ));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    Ok(())
}

/// `|⟨a|b⟩|²` for two normalized pure states.
pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    Ok(overlap.norm_sqr().clamp(0.0, 1.0))
}
