//! Norm-control functions and the a-priori certificate for Sylvester solutions.
//!
//! For normal `A`, `B` with Chebyshev spectral separation `δ` and a
//! norm-control function `h` of the algebra `𝒜` (so that
//! `‖T⁻¹‖_𝒜 ≤ h(‖T⁻¹‖_op, ‖T‖_𝒜)`), the contour solution obeys
//!
//! ```text
//! ‖X‖_𝒜 ≤ (24/π) ‖Q‖_𝒜 (‖A‖_op + δ)² δ⁻¹ · h̃(3/δ, max(‖A‖_𝒜, ‖B‖_𝒜) + (‖A‖_op + δ) ‖I‖_𝒜)²
//! ```
//!
//! where `h̃` is the running supremum of `h`. The constant combines the
//! contour length bound `48 (‖A‖_op + δ)²/δ`, the `1/(2π)` of the Cauchy
//! integral and the resolvent bound `1/δ' = 3/δ` on the contour.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{normality_residual, CMatrix};
use crate::norms::{algebra_norm, op_norm, AlgebraSpec};
use crate::spectra::Separation;

/// Lattice points per axis when `h` has to be monotonized numerically.
pub const DEFAULT_LATTICE: usize = 64;

/// A nonnegative bivariate bound `h(s, t)`.
#[derive(Clone)]
pub struct NormControlFn {
    h: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub monotone_declared: bool,
    pub name: String,
}

impl fmt::Debug for NormControlFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormControlFn")
            .field("name", &self.name)
            .field("monotone_declared", &self.monotone_declared)
            .finish()
    }
}

impl NormControlFn {
    pub fn new(
        name: impl Into<String>,
        monotone_declared: bool,
        h: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        NormControlFn {
            h: Arc::new(h),
            monotone_declared,
            name: name.into(),
        }
    }

    /// `h(s, t) = s`, the control function of `B(ℓ²)` itself.
    pub fn identity() -> Self {
        Self::new("identity", true, |s, _| s)
    }

    pub fn eval(&self, s: f64, t: f64) -> Result<f64> {
        let v = (self.h)(s, t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteH { s, t })
        }
    }
}

fn lattice(x: f64, grid: usize) -> impl Iterator<Item = f64> {
    let last = (grid - 1) as f64;
    (0..grid).map(move |i| x * (i as f64 / last))
}

/// `h̃(s, t) = sup_{0≤u≤s, 0≤v≤t} h(u, v)`, evaluated on a `grid × grid`
/// lattice including both endpoints, or directly when `h` is declared
/// monotone.
pub fn monotonize(h: &NormControlFn, s: f64, t: f64, grid: usize) -> Result<f64> {
    if !(s >= 0.0 && t >= 0.0) {
        return Err(Error::InvalidSpec(format!(
            "h̃ needs s, t >= 0, got ({s}, {t})"
        )));
    }
    if h.monotone_declared {
        return h.eval(s, t);
    }
    if grid < 2 {
        return Err(Error::InvalidSpec(format!(
            "lattice needs at least 2 points, got {grid}"
        )));
    }
    let mut best = f64::NEG_INFINITY;
    for u in lattice(s, grid) {
        for v in lattice(t, grid) {
            best = best.max(h.eval(u, v)?);
        }
    }
    Ok(best)
}

/// `h̃` on the product of two ascending query grids.
///
/// Each entry is the lattice value at `(s_i, t_j)` maxed with its lower and
/// left neighbours, so the table is nondecreasing along both axes and every
/// entry still lower-bounds the true supremum.
pub fn monotonize_table(
    h: &NormControlFn,
    s_values: &[f64],
    t_values: &[f64],
    grid: usize,
) -> Result<Vec<Vec<f64>>> {
    let ascending = |v: &[f64]| v.windows(2).all(|w| w[0] <= w[1]);
    if !ascending(s_values) || !ascending(t_values) {
        return Err(Error::InvalidSpec("query grids must be ascending".into()));
    }
    let mut table = vec![vec![0.0; t_values.len()]; s_values.len()];
    for (i, &s) in s_values.iter().enumerate() {
        for (j, &t) in t_values.iter().enumerate() {
            let mut v = monotonize(h, s, t, grid)?;
            if i > 0 {
                v = v.max(table[i - 1][j]);
            }
            if j > 0 {
                v = v.max(table[i][j - 1]);
            }
            table[i][j] = v;
        }
    }
    Ok(table)
}

/// Which control function a solve should certify with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum HKind {
    #[default]
    Identity,
    User,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormCertificate {
    pub spec: AlgebraSpec,
    pub norm_q_a: f64,
    pub norm_a_a: f64,
    pub norm_b_a: f64,
    pub op_norm_a: f64,
    /// Chebyshev separation used in the bound.
    pub delta: f64,
    /// Euclidean separation, recorded alongside: `δ ≤ d ≤ √2 δ`.
    pub delta_eucl: f64,
    pub norm_i_a: f64,
    pub h_name: String,
    /// `"declared-monotone"` or `"lattice(N)"`.
    pub h_tilde_method: String,
    pub h_args: (f64, f64),
    pub h_tilde: f64,
    pub g_value: f64,
    pub norm_x_a: f64,
    pub pass: bool,
}

/// `(24/π) ‖Q‖ (‖A‖_op + δ)² / δ · h̃²`.
pub fn certificate_bound(norm_q: f64, op_norm_a: f64, delta: f64, h_tilde: f64) -> f64 {
    24.0 / PI * norm_q * (op_norm_a + delta).powi(2) / delta * h_tilde * h_tilde
}

pub fn certify(
    a: &CMatrix,
    b: &CMatrix,
    q: &CMatrix,
    x: &CMatrix,
    spec: &AlgebraSpec,
    h: &NormControlFn,
    sep: &Separation,
) -> Result<NormCertificate> {
    let n = a.require_section()?;
    for (name, m) in [("B", b), ("Q", q), ("X", x)] {
        if m.require_section()? != n || m.row_offset() != a.row_offset() {
            return Err(Error::DimensionMismatch(format!(
                "{name} does not share A's indexing"
            )));
        }
    }
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

    let norm = |m: &CMatrix| algebra_norm(m, spec);
    let norm_a_a = norm(a)?;
    let norm_b_a = norm(b)?;
    let norm_q_a = norm(q)?;
    let norm_x_a = norm(x)?;
    let norm_i_a = norm(&a.identity_like())?;
    let op_norm_a = op_norm(a);
    let delta = sep.delta_cheb;

    let s = 3.0 / delta;
    let t = norm_a_a.max(norm_b_a) + (op_norm_a + delta) * norm_i_a;
    let h_tilde = monotonize(h, s, t, DEFAULT_LATTICE)?;
    let h_tilde_method = if h.monotone_declared {
        "declared-monotone".to_string()
    } else {
        format!("lattice({DEFAULT_LATTICE})")
    };
    let g_value = certificate_bound(norm_q_a, op_norm_a, delta, h_tilde);

    Ok(NormCertificate {
        spec: *spec,
        norm_q_a,
        norm_a_a,
        norm_b_a,
        op_norm_a,
        delta,
        delta_eucl: sep.delta_eucl,
        norm_i_a,
        h_name: h.name.clone(),
        h_tilde_method,
        h_args: (s, t),
        h_tilde,
        g_value,
        norm_x_a,
        pass: norm_x_a <= g_value,
    })
}
