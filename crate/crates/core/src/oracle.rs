//! Direct Sylvester solvers used as ground truth for the contour method.
//!
//! Neither path shares code with the quadrature solver: `kron_solve` uses
//! nalgebra's LU on the vectorized system, `eig_solve_normal` diagonalizes
//! through a complex Schur form.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{normality_residual, CMatrix, C64};
use crate::spectra::complex_schur;

/// Largest `mn` accepted by [`kron_solve`].
pub const KRON_LIMIT: usize = 4096;

fn check_dims(a: &CMatrix, b: &CMatrix, q: &CMatrix) -> Result<(usize, usize)> {
    let n = a.require_square()?;
    let m = b.require_square()?;
    if q.nrows() != m || q.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "Q is {}x{}, expected {m}x{n}",
            q.nrows(),
            q.ncols()
        )));
    }
    Ok((n, m))
}

/// Solves `(I ⊗ B - Aᵀ ⊗ I) vec(X) = vec(Q)` with column-major `vec`.
pub fn kron_solve(a: &CMatrix, b: &CMatrix, q: &CMatrix) -> Result<CMatrix> {
    let (n, m) = check_dims(a, b, q)?;
    let order = n * m;
    if order > KRON_LIMIT {
        return Err(Error::SizeGuard {
            order,
            limit: KRON_LIMIT,
        });
    }
    let mut k = DMatrix::<C64>::zeros(order, order);
    // Block (j, l) of the system is δ_jl B - a_lj I.
    for j in 0..n {
        for i in 0..m {
            for ip in 0..m {
                k[(j * m + i, j * m + ip)] += b.get(i, ip);
            }
        }
        for l in 0..n {
            let alj = a.get(l, j);
            for i in 0..m {
                k[(j * m + i, l * m + i)] -= alj;
            }
        }
    }
    let rhs = nalgebra::DVector::from_iterator(
        order,
        (0..n).flat_map(|j| (0..m).map(move |i| q.get(i, j))),
    );

    let scale = k.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lu = k.lu();
    let pivots = lu.u().diagonal();
    let min_pivot = pivots
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    if scale == 0.0 || min_pivot <= 1e-13 * scale {
        return Err(Error::SingularSystem);
    }
    let v = lu.solve(&rhs).ok_or(Error::SingularSystem)?;
    Ok(CMatrix::from_fn(m, n, |i, j| v[j * m + i])?.with_offsets(q.row_offset(), q.col_offset()))
}

/// Unitary diagonalization of a normal matrix: `(U, diag)` with `A = U Λ U*`.
fn unitary_eigen(a: &CMatrix) -> Result<(DMatrix<C64>, Vec<C64>)> {
    let (u, t) = complex_schur(&a.to_nalgebra())?;
    let diag = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    Ok((u, diag))
}

/// For normal `A`, `B`: `Y_ij = Q̃_ij / (β_i - α_j)` in the eigenbases.
pub fn eig_solve_normal(a: &CMatrix, b: &CMatrix, q: &CMatrix) -> Result<CMatrix> {
    check_dims(a, b, q)?;
    for (which, m) in [("A", a), ("B", b)] {
        let residual = normality_residual(m)?;
        let tol = m.normality_tolerance();
        if residual > tol {
            return Err(Error::NotNormal {
                which: which.into(),
                residual,
                tol,
            });
        }
    }
    let (ua, alpha) = unitary_eigen(a)?;
    let (ub, beta) = unitary_eigen(b)?;
    let max_mod = alpha
        .iter()
        .chain(&beta)
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let tol = 1e-12 * (1.0 + max_mod);

    let mut y = ub.adjoint() * q.to_nalgebra() * &ua;
    for i in 0..beta.len() {
        for j in 0..alpha.len() {
            let gap = beta[i] - alpha[j];
            if gap.norm() <= tol {
                return Err(Error::SpectraOverlap {
                    delta: gap.norm(),
                    tol,
                });
            }
            y[(i, j)] /= gap;
        }
    }
    let x = ub * y * ua.adjoint();
    Ok(CMatrix::from_nalgebra(&x)?.with_offsets(q.row_offset(), q.col_offset()))
}
