use thiserror::Error;

use crate::kernel::SpdMatrix;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}x{expected}, got {got}x{got}")]
    Shape { expected: usize, got: usize },

    #[error("matrix data has {got} entries, expected {expected}")]
    DataLength { expected: usize, got: usize },

    #[error("matrix dimension must be positive")]
    EmptyMatrix,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not symmetric: asymmetry {asymmetry:e} exceeds {bound:e}")]
    Asymmetric { asymmetry: f64, bound: f64 },

    #[error("matrix is not positive definite: smallest eigenvalue {min_eig:e} <= {tol:e}")]
    NotPositiveDefinite { min_eig: f64, tol: f64 },

    #[error("function is not finite at eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("tuple must contain at least one matrix")]
    EmptyTuple,

    #[error("tuple item {index} has dimension {got}, expected {expected}")]
    TupleDim {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("map expects {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Karcher iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        last: Box<SpdMatrix>,
    },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("check `{check}` does not apply to the {kind} mean")]
    Inapplicable { check: String, kind: String },
}
