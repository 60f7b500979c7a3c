use thiserror::Error;

/// Errors raised by the operator kernel, the constraint solvers and the
/// scenario front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds {bound:.3e})")]
    NotHermitian { defect: f64, bound: f64 },

    #[error("iterative solver did not converge: {0}")]
    NoConvergence(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator requires a {expected} axis, got a {found} axis")]
    WrongAxis {
        expected: &'static str,
        found: &'static str,
    },

    #[error("model kind {found} cannot provide {requested}")]
    WrongKind {
        requested: &'static str,
        found: &'static str,
    },

    #[error("energy {energy} lies outside the representable band |E| <= {band}")]
    OutOfBand { energy: f64, band: f64 },

    #[error("time {time} lies outside the grid range [{first}, {last}]")]
    OutOfRange { time: f64, first: f64, last: f64 },

    #[error("energy {energy} is not on the energy lattice (nearest {nearest})")]
    OffLattice { energy: f64, nearest: f64 },

    #[error("eigen-level index {index} out of range (retained levels: {levels})")]
    IndexOutOfRange { index: usize, levels: usize },

    #[error("raising operator applied to the top retained level {level}")]
    TruncationTop { level: usize },

    #[error("state is not dominated by a single ladder level (best weight {weight:.3e})")]
    NotALadderState { weight: f64 },

    #[error("invalid jump: {0}")]
    InvalidJump(String),

    #[error("subspace basis is empty")]
    EmptyBasis,

    #[error("state has no overlap with the subspace (weight {weight:.3e})")]
    ZeroOverlap { weight: f64 },

    #[error("composite dimension {dim} exceeds the dense limit {limit} and the operator has no factored solver")]
    TooLarge { dim: usize, limit: usize },

    #[error("evolution operators disagree on a constraint solution by {mismatch:.3e}")]
    EquivalenceViolated { mismatch: f64 },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid field `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("unknown check suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
