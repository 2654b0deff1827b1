use thiserror::Error;

/// Errors shared across the crate.
///
/// Degenerate inputs and budget refusals are ordinary outcomes for this
/// library (surveys probe them on purpose), so they carry enough context
/// to be reported rather than just logged.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("index out of range: ({row}, {col}) in {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("digraph has no spanning converging tree: rank of the Laplacian is {rank}, need {needed} (not a simplex)")]
    Degenerate { rank: usize, needed: usize },

    #[error("budget exceeded while {what}: needs {needed} of {budget} allowed (set LAPSIMPLEX_BUDGET to raise)")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("origin is not strictly interior: barycentric coordinate {index} is {value}")]
    OriginNotInterior { index: usize, value: String },

    #[error("origin lies outside the simplex")]
    OriginOutside,

    #[error("invalid {what}: {reason}")]
    InvalidSpec { what: &'static str, reason: String },

    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
