use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// State norm is too far from one to be renormalized.
    #[error("state is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("gate is not unitary (deviation {deviation:e})")]
    NonUnitary { deviation: f64 },

    #[error("gate of dimension {dim} does not act on {targets} qubit(s)")]
    GateArity { dim: usize, targets: usize },

    #[error("qubit {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit {0} targeted more than once")]
    DuplicateTarget(usize),

    #[error("register of {0} qubits exceeds the supported maximum")]
    TooManyQubits(usize),

    #[error("parameter `{name}` out of range: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid bipartition cut: {0}")]
    InvalidCut(String),

    #[error("round index {got} precedes last recorded round {last}")]
    RoundOrder { last: u64, got: u64 },

    #[error("channel event carries neither classical bits nor qubits")]
    EmptyEvent,

    #[error("malformed ledger line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("cycle is undefined for a product state (zero entanglement)")]
    DegenerateCycle,

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
