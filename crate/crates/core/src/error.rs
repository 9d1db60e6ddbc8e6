use num_complex::Complex64;
use thiserror::Error;

use crate::solver::SolveReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column, got {nrows}x{ncols}")]
    Empty { nrows: usize, ncols: usize },

    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square ({nrows}x{ncols})")]
    NonSquare { nrows: usize, ncols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("norm of the matrix is zero")]
    ZeroMatrix,

    #[error("eigenvalue iteration did not converge")]
    EigFailure,

    #[error("SpectraOverlap: spectral separation {delta:e} is below tolerance {tol:e}")]
    SpectraOverlap { delta: f64, tol: f64 },

    #[error("spectrum is empty")]
    DegenerateSpectrum,

    #[error("DomainInvalid: check `{check}` failed ({detail})")]
    DomainInvalid { check: String, detail: String },

    #[error("quadrature node {node} is within {dist:e} of the evaluation point")]
    NodeSingular { node: Complex64, dist: f64 },

    #[error("QuadratureNotConverged: stopped at order {} with residual {:e}", .0.order_used, .0.residual_fro)]
    QuadratureNotConverged(Box<SolveReport>),

    #[error("ResolventSingular: LU factorization at z = {z} is numerically singular")]
    ResolventSingular { z: Complex64 },

    #[error("NotNormal: {which} has normality residual {residual:e} above tolerance {tol:e}")]
    NotNormal {
        which: String,
        residual: f64,
        tol: f64,
    },

    #[error("control function returned a non-finite value at ({s}, {t})")]
    NonFiniteH { s: f64, t: f64 },

    #[error("SingularSystem: the Kronecker system is numerically singular")]
    SingularSystem,

    #[error("SizeGuard: dense system of order {order} exceeds the limit {limit}")]
    SizeGuard { order: usize, limit: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
