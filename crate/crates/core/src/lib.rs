//! Sylvester equations `BX - XA = Q` for normal matrices, solved by a
//! Rosenblum contour integral around a grid-square domain enclosing `σ(A)`,
//! with solution norms certified in localized matrix algebras.
//!
//! ```
//! use sylvan::{solve_sylvester, CMatrix, SolveOptions};
//!
//! let a = CMatrix::from_real_rows(&[&[0.0]]).unwrap();
//! let b = CMatrix::from_real_rows(&[&[1.0]]).unwrap();
//! let q = CMatrix::from_real_rows(&[&[1.0]]).unwrap();
//! let report = solve_sylvester(&a, &b, &q, &SolveOptions::default()).unwrap();
//! assert!((report.x.get(0, 0).re - 1.0).abs() < 1e-12);
//! ```

pub mod certify;
pub mod cli;
pub mod domain;
pub mod error;
pub mod generators;
pub mod lu;
pub mod matrix;
pub mod norms;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod solver;
pub mod spectra;
pub mod suite;
pub mod svg;

pub use certify::{certify, monotonize, monotonize_table, HKind, NormCertificate, NormControlFn};
pub use domain::{build_domain, trace_boundary, verify_domain, GridDomain};
pub use error::{Error, Result};
pub use generators::{generate, shifted_copy, Family, GenSpec};
pub use matrix::{CMatrix, C64};
pub use norms::{algebra_norm, inclusion_check, op_norm, AlgebraSpec, Exponent, NormKind};
pub use oracle::{eig_solve_normal, kron_solve};
pub use quadrature::{build_quadrature, winding_selfcheck, ContourQuadrature};
pub use solver::{solve_lyapunov, solve_sylvester, SolveOptions, SolveReport};
pub use spectra::{separation, spectrum, Separation, SpectrumSet};
