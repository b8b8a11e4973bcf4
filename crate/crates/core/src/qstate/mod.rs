//! Exact linear algebra on small pure states.

mod bipartite;
mod density;
mod entropy;
mod multiparty;
mod register;

pub use bipartite::{
    entropy_of_entanglement, make_bell, make_partial, reduced_density, schmidt_decompose,
    AmplitudeMatrix, BipartitePureState, SchmidtDecomposition, Side,
};
pub use density::{von_neumann_entropy, DensityMatrix};
pub use entropy::{binary_entropy, shannon_entropy};
pub use multiparty::{bipartition_entropy, make_cat, make_multiparty, MultipartyState};
pub use register::{fidelity, Gate, Measurement, QubitState, Register, MAX_QUBITS};

pub use num_complex::Complex64;

/// Tolerance on the squared norm of stored states.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Largest squared-norm deviation accepted (and silently corrected) on input.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-6;

/// Singular values and eigenvalues below this are numerically zero.
pub const ZERO_CUTOFF: f64 = 1e-12;

/// Validate a squared norm read from user input and return the factor that
/// rescales it to exactly one.
pub(crate) fn renormalization(norm_sqr: f64) -> crate::Result<f64> {
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > INPUT_NORM_TOLERANCE {
        return Err(crate::Error::NotNormalized { norm_sqr });
    }
    Ok(1.0 / norm_sqr.sqrt())
}
