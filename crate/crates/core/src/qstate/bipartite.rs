use nalgebra::DMatrix;
use num_complex::Complex64;

use super::density::DensityMatrix;
use super::entropy::shannon_entropy;
use super::{renormalization, NORM_TOLERANCE, ZERO_CUTOFF};
use crate::{Error, Result};

/// A bipartite pure state in Schmidt form, `Σ λ_k |k⟩_A |k⟩_B`.
///
/// Coefficients are real, non-negative and sorted in non-increasing order;
/// any phases live in the local bases returned by [`schmidt_decompose`].
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitePureState {
    coeffs: Vec<f64>,
    dim_a: usize,
    dim_b: usize,
}

impl BipartitePureState {
    /// Build a state from Schmidt coefficients in any order.
    ///
    /// The squared coefficients must sum to one within
    /// [`INPUT_NORM_TOLERANCE`](super::INPUT_NORM_TOLERANCE); small deviations
    /// are rescaled away.
    pub fn new(coeffs: Vec<f64>, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidState(
                "local dimensions must be positive".into(),
            ));
        }
        if coeffs.is_empty() || coeffs.len() > dim_a.min(dim_b) {
            return Err(Error::InvalidState(format!(
                "{} Schmidt coefficients do not fit local dimensions {dim_a}x{dim_b}",
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::InvalidState(format!(
                "Schmidt coefficient {bad} is not a non-negative real"
            )));
        }
        let norm_sqr: f64 = coeffs.iter().map(|c| c * c).sum();
        let scale = renormalization(norm_sqr)?;
        let mut coeffs = coeffs;
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE / 10.0 {
            coeffs.iter_mut().for_each(|c| *c *= scale);
        }
        coeffs.sort_by(|x, y| y.total_cmp(x));
        Ok(BipartitePureState {
            coeffs,
            dim_a,
            dim_b,
        })
    }

    /// Schmidt coefficients, largest first.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Squared Schmidt coefficients, i.e. the spectrum of either reduced state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c * c).collect()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    /// Number of coefficients above [`ZERO_CUTOFF`].
    pub fn schmidt_rank(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c > ZERO_CUTOFF).count()
    }

    /// The state written in its own Schmidt bases.
    pub fn to_amplitude_matrix(&self) -> AmplitudeMatrix {
        let mut entries = DMatrix::zeros(self.dim_a, self.dim_b);
        for (k, &c) in self.coeffs.iter().enumerate() {
            entries[(k, k)] = Complex64::new(c, 0.0);
        }
        AmplitudeMatrix { entries }
    }
}

/// The Bell pair `(|00⟩ + |11⟩)/√2`, one ebit.
pub fn make_bell() -> BipartitePureState {
    BipartitePureState {
        coeffs: vec![std::f64::consts::FRAC_1_SQRT_2; 2],
        dim_a: 2,
        dim_b: 2,
    }
}

/// The two-qubit state `a|00⟩ + b|11⟩` with `b = √(1 - a²)`.
pub fn make_partial(a: f64) -> Result<BipartitePureState> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::param("a", format!("{a} is outside [0, 1]")));
    }
    let b = (1.0 - a * a).max(0.0).sqrt();
    BipartitePureState::new(vec![a, b], 2, 2)
}

/// Entropy of entanglement in ebits: the Shannon entropy of the squared
/// Schmidt coefficients.
pub fn entropy_of_entanglement(state: &BipartitePureState) -> f64 {
    shannon_entropy(state.coeffs.iter().map(|c| c * c))
}

/// Amplitudes `c_ij` of `|ψ⟩ = Σ c_ij |i⟩_A |j⟩_B`, rows indexing `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeMatrix {
    entries: DMatrix<Complex64>,
}

impl AmplitudeMatrix {
    /// Wrap an amplitude matrix whose squared Frobenius norm is already one
    /// (within [`INPUT_NORM_TOLERANCE`](super::INPUT_NORM_TOLERANCE)).
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidState("empty amplitude matrix".into()));
        }
        let norm_sqr = entries.norm_squared();
        let scale = renormalization(norm_sqr)?;
        let entries = if (norm_sqr - 1.0).abs() > NORM_TOLERANCE / 10.0 {
            entries * Complex64::new(scale, 0.0)
        } else {
            entries
        };
        Ok(AmplitudeMatrix { entries })
    }

    /// Scale an arbitrary non-zero matrix to unit norm.
    pub fn normalized(entries: DMatrix<Complex64>) -> Result<Self> {
        let norm = entries.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        Self::new(entries.unscale(norm))
    }

    /// Real-valued convenience constructor, rows indexing `A`.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim_a = rows.len();
        let dim_b = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != dim_b) {
            return Err(Error::InvalidState("ragged amplitude rows".into()));
        }
        Self::new(DMatrix::from_fn(dim_a, dim_b, |i, j| {
            Complex64::new(rows[i][j], 0.0)
        }))
    }

    /// Reshape a state vector indexed as `i·dim_b + j`.
    pub fn from_state_vector(amps: &[Complex64], dim_a: usize, dim_b: usize) -> Result<Self> {
        if amps.len() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: dim_a * dim_b,
            });
        }
        Self::new(DMatrix::from_fn(dim_a, dim_b, |i, j| amps[i * dim_b + j]))
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dims(&self) -> (usize, usize) {
        self.entries.shape()
    }

    /// Flatten back to a state vector indexed as `i·dim_b + j`.
    pub fn to_state_vector(&self) -> Vec<Complex64> {
        let (dim_a, dim_b) = self.dims();
        (0..dim_a * dim_b)
            .map(|idx| self.entries[(idx / dim_b, idx % dim_b)])
            .collect()
    }
}

/// Schmidt coefficients together with the local bases carrying them.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub state: BipartitePureState,
    /// Column `k` is `|u_k⟩_A`.
    pub left: DMatrix<Complex64>,
    /// Column `k` is `|v_k⟩_B`.
    pub right: DMatrix<Complex64>,
}

impl SchmidtDecomposition {
    /// Rebuild `Σ λ_k |u_k⟩|v_k⟩` as an amplitude matrix.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let (dim_a, dim_b) = self.state.dims();
        let mut out = DMatrix::zeros(dim_a, dim_b);
        for (k, &lambda) in self.state.coefficients().iter().enumerate() {
            let u = self.left.column(k);
            let v = self.right.column(k);
            out += (u * v.transpose()) * Complex64::new(lambda, 0.0);
        }
        out
    }
}

/// Schmidt decomposition via the singular value decomposition of the
/// amplitude matrix.
pub fn schmidt_decompose(m: &AmplitudeMatrix) -> SchmidtDecomposition {
    let (dim_a, dim_b) = m.dims();
    let svd = m.entries.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");

    let rank = svd.singular_values.len();
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));

    let coeffs: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    // m = U Σ V†, so the B-side vector paired with u_k is row k of V†.
    let left = DMatrix::from_fn(dim_a, rank, |i, c| u[(i, order[c])]);
    let right = DMatrix::from_fn(dim_b, rank, |j, c| v_t[(order[c], j)]);

    let state = BipartitePureState::new(coeffs, dim_a, dim_b)
        .expect("singular values of a normalized matrix form a valid Schmidt spectrum");
    SchmidtDecomposition { state, left, right }
}

/// Which party keeps its system when the other is traced out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Reduced density matrix of one party: `ρ_A = M M†` or `ρ_B = Mᵀ M̄`.
pub fn reduced_density(m: &AmplitudeMatrix, side: Side) -> DensityMatrix {
    let rho = match side {
        Side::A => &m.entries * m.entries.adjoint(),
        Side::B => m.entries.transpose() * m.entries.map(|c| c.conj()),
    };
    DensityMatrix::new(rho).expect("partial trace of a normalized pure state is a density matrix")
}
