//! Contour-integral solution of `BX - XA = Q`.
//!
//! With `σ(A)` inside the grid domain `D` and `σ(B)` outside its closure,
//!
//! ```text
//! X = (1/2πi) ∮_{∂D} (B - zI)⁻¹ Q (zI - A)⁻¹ dz
//! ```
//!
//! The integral is discretized by composite Gauss–Legendre on every unit
//! edge of `∂D`, and the order is doubled until two successive
//! approximations agree and the residual is small.

use std::sync::OnceLock;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::certify::{certify, HKind, NormCertificate, NormControlFn};
use crate::domain::{build_domain, verify_domain, DomainVerification, GridDomain};
use crate::error::{Error, Result};
use crate::lu::Lu;
use crate::matrix::{CMatrix, C64};
use crate::norms::{op_norm, AlgebraSpec};
use crate::quadrature::{build_quadrature, cauchy_factor, ContourQuadrature};
use crate::spectra::{separation, spectrum, Separation, SpectrumSet};

/// Caps the worker count for node evaluation.
pub const THREADS_ENV: &str = "SYLVAN_THREADS";

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(0);
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("failed to build worker pool")
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveOptions {
    pub tol: f64,
    pub q0: usize,
    pub q_max: usize,
    pub certify: bool,
    pub spec: AlgebraSpec,
    pub h: HKind,
    /// Control function used when `h` is [`HKind::User`].
    #[serde(skip)]
    pub user_h: Option<NormControlFn>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-9,
            q0: 2,
            q_max: 64,
            certify: false,
            spec: AlgebraSpec::operator(),
            h: HKind::Identity,
            user_h: None,
        }
    }
}

impl SolveOptions {
    fn control_fn(&self) -> Result<NormControlFn> {
        match self.h {
            HKind::Identity => Ok(NormControlFn::identity()),
            HKind::User => self.user_h.clone().ok_or_else(|| {
                Error::InvalidSpec("h = user but no control function supplied".into())
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub x: CMatrix,
    pub residual_fro: f64,
    pub order_used: usize,
    pub converged: bool,
    /// `‖X_q - X_{q/2}‖_F` at the final order.
    pub cauchy_diff: f64,
    pub spectrum_a: SpectrumSet,
    pub spectrum_b: SpectrumSet,
    pub separation: Separation,
    pub domain: GridDomain,
    pub verification: DomainVerification,
    pub certificate: Option<NormCertificate>,
    pub warnings: Vec<String>,
}

/// Spectra, separation and verified domain for one `(A, B)` pair; reusable
/// across right-hand sides and orders.
#[derive(Debug, Clone)]
pub struct ContourSetup {
    a: CMatrix,
    b: CMatrix,
    pub spectrum_a: SpectrumSet,
    pub spectrum_b: SpectrumSet,
    pub separation: Separation,
    pub domain: GridDomain,
    pub verification: DomainVerification,
}

impl ContourSetup {
    pub fn new(a: &CMatrix, b: &CMatrix) -> Result<Self> {
        a.require_square()?;
        b.require_square()?;
        let spectrum_a = spectrum(a)?;
        let spectrum_b = spectrum(b)?;
        let sep = separation(&spectrum_a, &spectrum_b, op_norm(a))?;
        let domain = build_domain(&spectrum_a, &sep)?;
        let verification = verify_domain(&domain, &spectrum_a, &spectrum_b, &sep)?;
        Ok(ContourSetup {
            a: a.clone(),
            b: b.clone(),
            spectrum_a,
            spectrum_b,
            separation: sep,
            domain,
            verification,
        })
    }

    pub fn quadrature(&self, order: usize) -> ContourQuadrature {
        build_quadrature(&self.domain, order)
    }

    /// Applies the order-`order` rule to every right-hand side. Both resolvent
    /// factorizations at a node are shared by all of `qs`.
    pub fn evaluate(&self, order: usize, qs: &[&CMatrix]) -> Result<Vec<CMatrix>> {
        let (n, m) = (self.a.nrows(), self.b.nrows());
        for q in qs {
            if q.nrows() != m || q.ncols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "Q is {}x{}, expected {m}x{n}",
                    q.nrows(),
                    q.ncols()
                )));
            }
        }
        let quad = self.quadrature(order);
        let a_t = self.a.transpose();
        let b = &self.b;

        // Per-segment partial sums of Xᵀ, reduced below in segment order so the
        // result does not depend on scheduling.
        let partials: Vec<Result<Vec<Vec<C64>>>> = pool().install(|| {
            (0..quad.segments.len())
                .into_par_iter()
                .map(|s| {
                    let (nodes, weights) = quad.segment_nodes(s);
                    let mut acc = vec![vec![C64::new(0.0, 0.0); n * m]; qs.len()];
                    for (&z, &w) in nodes.iter().zip(weights) {
                        let lu_b = Lu::factor(m, b.shifted(-z)?.entries().to_vec())
                            .map_err(|_| Error::ResolventSingular { z })?;
                        let lu_a = Lu::factor(
                            n,
                            a_t.scale(C64::new(-1.0, 0.0))
                                .shifted(z)?
                                .entries()
                                .to_vec(),
                        )
                        .map_err(|_| Error::ResolventSingular { z })?;
                        for (q, sum) in qs.iter().zip(acc.iter_mut()) {
                            // Y = (B - zI)⁻¹ Q, then Xᵀ += w (zI - Aᵀ)⁻¹ Yᵀ
                            let y = lu_b.solve(q.entries(), n);
                            let yt = transpose_raw(&y, m, n);
                            let zt = lu_a.solve(&yt, m);
                            sum.iter_mut().zip(&zt).for_each(|(s, v)| *s += w * v);
                        }
                    }
                    Ok(acc)
                })
                .collect()
        });

        let mut totals = vec![vec![C64::new(0.0, 0.0); n * m]; qs.len()];
        for part in partials {
            for (total, p) in totals.iter_mut().zip(part?) {
                total.iter_mut().zip(&p).for_each(|(t, v)| *t += v);
            }
        }
        let factor = cauchy_factor();
        totals
            .into_iter()
            .zip(qs)
            .map(|(xt, q)| {
                let x: Vec<C64> = transpose_raw(&xt, n, m)
                    .into_iter()
                    .map(|v| v * factor)
                    .collect();
                Ok(CMatrix::from_entries(m, n, x)?.with_offsets(q.row_offset(), q.col_offset()))
            })
            .collect()
    }
}

fn transpose_raw(v: &[C64], rows: usize, cols: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(v.len());
    for c in 0..cols {
        for r in 0..rows {
            out.push(v[r * cols + c]);
        }
    }
    out
}

/// `‖BX - XA - Q‖_F`.
pub fn sylvester_residual(a: &CMatrix, b: &CMatrix, q: &CMatrix, x: &CMatrix) -> Result<f64> {
    let bx = b.mul(x)?;
    let xa = x.mul(a)?;
    let mut r = bx.entries().to_vec();
    for ((r, xa), q) in r.iter_mut().zip(xa.entries()).zip(q.entries()) {
        *r -= xa + q;
    }
    Ok(r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
}

pub fn solve_sylvester(
    a: &CMatrix,
    b: &CMatrix,
    q: &CMatrix,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let n = a.require_square()?;
    let m = b.require_square()?;
    if q.nrows() != m || q.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "Q is {}x{}, expected {m}x{n}",
            q.nrows(),
            q.ncols()
        )));
    }
    if opts.q0 < 1 || opts.q_max < opts.q0 || !(opts.tol > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "need 1 <= q0 <= q_max and tol > 0 (q0 = {}, q_max = {}, tol = {})",
            opts.q0, opts.q_max, opts.tol
        )));
    }
    let setup = ContourSetup::new(a, b)?;
    let mut warnings = setup.verification.warnings.clone();

    let q_norm = q.frobenius();
    let mut order = opts.q0;
    let mut x = setup.evaluate(order, &[q])?.remove(0);
    let mut residual = sylvester_residual(a, b, q, &x)?;
    let mut cauchy_diff = f64::INFINITY;
    let mut converged = false;
    while order * 2 <= opts.q_max {
        order *= 2;
        let next = setup.evaluate(order, &[q])?.remove(0);
        cauchy_diff = next.sub(&x)?.frobenius();
        let scale = 1.0 + x.frobenius();
        x = next;
        residual = sylvester_residual(a, b, q, &x)?;
        if cauchy_diff <= opts.tol * scale && residual <= opts.tol * (1.0 + q_norm) {
            converged = true;
            break;
        }
    }

    let mut certificate = None;
    if opts.certify {
        if !(setup.spectrum_a.is_normal && setup.spectrum_b.is_normal) {
            warnings.push("certificate refused: A or B is not normal".into());
        } else {
            let h = opts.control_fn()?;
            match certify(a, b, q, &x, &opts.spec, &h, &setup.separation) {
                Ok(c) => certificate = Some(c),
                Err(Error::DimensionMismatch(msg)) => {
                    warnings.push(format!("certificate refused: {msg}"));
                }
                Err(e) => return Err(e),
            }
        }
    }

    let report = SolveReport {
        x,
        residual_fro: residual,
        order_used: order,
        converged,
        cauchy_diff,
        spectrum_a: setup.spectrum_a,
        spectrum_b: setup.spectrum_b,
        separation: setup.separation,
        domain: setup.domain,
        verification: setup.verification,
        certificate,
        warnings,
    };
    if converged {
        Ok(report)
    } else {
        Err(Error::QuadratureNotConverged(Box::new(report)))
    }
}

/// Solves `AᵀX + XA + Q = 0` as the Sylvester equation with `B = -Aᵀ`.
pub fn solve_lyapunov(a: &CMatrix, q: &CMatrix, opts: &SolveOptions) -> Result<SolveReport> {
    a.require_square()?;
    let b = a.transpose().scale(C64::new(-1.0, 0.0));
    solve_sylvester(a, &b, q, opts)
}
