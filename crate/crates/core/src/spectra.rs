//! Eigenvalues of finite sections and the separation of two spectra.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{normality_residual, CMatrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSet {
    #[serde(serialize_with = "crate::report::complex_list")]
    pub values: Vec<C64>,
    pub normality_residual: f64,
    pub is_normal: bool,
}

impl SpectrumSet {
    /// Wraps a known eigenvalue list for a normal operator.
    pub fn from_values(values: Vec<C64>) -> Self {
        SpectrumSet {
            values,
            normality_residual: 0.0,
            is_normal: true,
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn shifted(&self, shift: C64) -> Self {
        SpectrumSet {
            values: self.values.iter().map(|z| z + shift).collect(),
            ..self.clone()
        }
    }

    pub fn scaled(&self, t: f64) -> Self {
        SpectrumSet {
            values: self.values.iter().map(|z| z * t).collect(),
            ..self.clone()
        }
    }
}

const EIG_MAX_ITER: usize = 10_000;

/// Complex Schur form `(Q, T)` with `A = Q T Q*`.
///
/// QR iteration can stall on matrices such as cyclic permutations, where the
/// shift strategy makes no progress. On failure the factorization is retried
/// on `A + σI` for a few fixed complex `σ` and `σ` is removed from `T`.
pub fn complex_schur(m: &DMatrix<C64>) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    let n = m.nrows();
    let scale = 1.0 + m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for k in 0..4 {
        let sigma = C64::new(0.1, 0.07) * (k as f64) * scale;
        let shifted = m + DMatrix::<C64>::identity(n, n) * sigma;
        if let Some(s) = Schur::try_new(shifted, f64::EPSILON, EIG_MAX_ITER) {
            let (q, mut t) = s.unpack();
            for i in 0..n {
                t[(i, i)] -= sigma;
            }
            return Ok((q, t));
        }
    }
    Err(Error::EigFailure)
}

fn is_hermitian(a: &CMatrix) -> bool {
    let n = a.nrows();
    let tol = 1e-14 * (1.0 + a.max_abs());
    (0..n).all(|r| (r..n).all(|c| (a.get(r, c) - a.get(c, r).conj()).norm() <= tol))
}

pub fn spectrum(a: &CMatrix) -> Result<SpectrumSet> {
    a.require_square()?;
    let residual = normality_residual(a)?;
    let is_normal = residual <= a.normality_tolerance();
    let m = a.to_nalgebra();
    let mut values: Vec<C64> = if is_hermitian(a) {
        let eig =
            SymmetricEigen::try_new(m, f64::EPSILON, EIG_MAX_ITER).ok_or(Error::EigFailure)?;
        let mut re: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        re.sort_by(f64::total_cmp);
        re.into_iter().map(|x| C64::new(x, 0.0)).collect()
    } else {
        let (_, t) = complex_schur(&m)?;
        (0..t.nrows()).map(|i| t[(i, i)]).collect()
    };
    if !is_hermitian(a) {
        values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    }
    Ok(SpectrumSet {
        values,
        normality_residual: residual,
        is_normal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Separation {
    /// Chebyshev separation `min max(|Re(a-b)|, |Im(a-b)|)`.
    pub delta_cheb: f64,
    /// Euclidean separation `min |a - b|`.
    pub delta_eucl: f64,
    /// Grid side, `delta_cheb / 3`.
    pub delta_prime: f64,
    /// `floor((‖A‖ + δ') / δ')`.
    pub n0: i64,
    pub op_norm_a: f64,
}

pub fn chebyshev(z: C64) -> f64 {
    z.re.abs().max(z.im.abs())
}

pub fn overlap_tolerance(sa: &SpectrumSet, sb: &SpectrumSet) -> f64 {
    1e-9 * (1.0 + sa.max_modulus().max(sb.max_modulus()))
}

pub fn separation(sa: &SpectrumSet, sb: &SpectrumSet, op_norm_a: f64) -> Result<Separation> {
    if sa.values.is_empty() || sb.values.is_empty() {
        return Err(Error::DegenerateSpectrum);
    }
    let mut delta_cheb = f64::INFINITY;
    let mut delta_eucl = f64::INFINITY;
    for a in &sa.values {
        for b in &sb.values {
            let d = a - b;
            delta_cheb = delta_cheb.min(chebyshev(d));
            delta_eucl = delta_eucl.min(d.norm());
        }
    }
    let tol = overlap_tolerance(sa, sb);
    if delta_cheb <= tol {
        return Err(Error::SpectraOverlap {
            delta: delta_cheb,
            tol,
        });
    }
    let delta_prime = delta_cheb / 3.0;
    let n0 = ((op_norm_a + delta_prime) / delta_prime).floor() as i64;
    Ok(Separation {
        delta_cheb,
        delta_eucl,
        delta_prime,
        n0,
        op_norm_a,
    })
}
