//! Weighted norms of localized matrices on finite sections.
//!
//! Three families of off-diagonal decay are measured with the polynomial
//! weight `u_α(i, j) = (1 + |i - j|)^α`:
//!
//! * Gröchenig–Schur: the larger of the worst weighted row and the worst
//!   weighted column, each in `ℓ^p`.
//! * Baskakov–Gohberg–Sjöstrand: `ℓ^p` over diagonals `k = i - j` of the
//!   largest weighted entry on that diagonal.
//! * Beurling: `ℓ^p` over `k` of the largest weighted entry with
//!   `|i - j| >= |k|`, i.e. a decreasing envelope of the diagonals.
//!
//! Every sum and supremum runs over the stored window only. On any matrix the
//! three norms are ordered GS ≤ BGS ≤ Beurling and they coincide at `p = ∞`.

use std::fmt;
use std::str::FromStr;

use nalgebra::SVD;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    #[serde(rename = "gs")]
    GrochenigSchur,
    #[serde(rename = "bgs")]
    BaskakovGohbergSjostrand,
    #[serde(rename = "beurling")]
    Beurling,
    #[serde(rename = "op")]
    OperatorL2,
}

impl NormKind {
    pub fn tag(self) -> &'static str {
        match self {
            NormKind::GrochenigSchur => "gs",
            NormKind::BaskakovGohbergSjostrand => "bgs",
            NormKind::Beurling => "beurling",
            NormKind::OperatorL2 => "op",
        }
    }
}

/// Exponent `p ∈ [1, ∞]`; `"inf"` on the wire for `p = ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl Exponent {
    pub const INF: Exponent = Exponent(f64::INFINITY);

    pub fn is_inf(self) -> bool {
        self.0 == f64::INFINITY
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_inf() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(Exponent(p)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "infinity" | "∞" => Ok(Exponent::INF),
            t => t
                .parse::<f64>()
                .map(Exponent)
                .map_err(|_| Error::InvalidSpec(format!("bad exponent `{t}`"))),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub kind: NormKind,
    pub p: Exponent,
    pub alpha: f64,
}

impl AlgebraSpec {
    pub fn new(kind: NormKind, p: f64, alpha: f64) -> Result<Self> {
        let spec = AlgebraSpec {
            kind,
            p: Exponent(p),
            alpha,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn operator() -> Self {
        AlgebraSpec {
            kind: NormKind::OperatorL2,
            p: Exponent(2.0),
            alpha: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p.0;
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidSpec(format!("p must be >= 1, got {p}")));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "alpha must be finite and >= 0, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// `alpha > 1 - 1/p`: the decay under which these algebras are
    /// inverse-closed differential subalgebras of `B(ℓ²(ℤ))`.
    pub fn admissible(&self) -> bool {
        let inv_p = if self.p.is_inf() { 0.0 } else { 1.0 / self.p.0 };
        self.alpha > 1.0 - inv_p
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    /// Parses `kind:p:alpha`, e.g. `bgs:2:1.5` or `gs:inf:0`; `op` alone is accepted.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let kind = match parts[0].trim() {
            "gs" => NormKind::GrochenigSchur,
            "bgs" => NormKind::BaskakovGohbergSjostrand,
            "beurling" => NormKind::Beurling,
            "op" => NormKind::OperatorL2,
            other => return Err(Error::InvalidSpec(format!("unknown norm kind `{other}`"))),
        };
        let (p, alpha) = match parts.len() {
            1 if kind == NormKind::OperatorL2 => (Exponent(2.0), 0.0),
            3 => {
                let alpha = parts[2]
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidSpec(format!("bad alpha `{}`", parts[2])))?;
                (parts[1].parse()?, alpha)
            }
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "expected kind:p:alpha, got `{s}`"
                )))
            }
        };
        let spec = AlgebraSpec { kind, p, alpha };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.kind.tag(), self.p, self.alpha)
    }
}

/// `(1 + |i - j|)^α`.
pub fn weight(i: i64, j: i64, alpha: f64) -> f64 {
    (1.0 + (i - j).unsigned_abs() as f64).powf(alpha)
}

fn lp_norm(values: impl IntoIterator<Item = f64>, p: Exponent) -> f64 {
    let values: Vec<f64> = values.into_iter().collect();
    let max = values.iter().copied().fold(0.0, f64::max);
    if p.is_inf() || max == 0.0 {
        return max;
    }
    if p.0 == 1.0 {
        return values.iter().sum();
    }
    let sum: f64 = values.iter().map(|v| (v / max).powf(p.0)).sum();
    max * sum.powf(1.0 / p.0)
}

/// Largest singular value.
pub fn op_norm(a: &CMatrix) -> f64 {
    SVD::new(a.to_nalgebra(), false, false)
        .singular_values
        .max()
}

/// Smallest singular value.
pub fn min_singular(a: &CMatrix) -> f64 {
    SVD::new(a.to_nalgebra(), false, false)
        .singular_values
        .min()
}

/// Weighted magnitudes `|a(i,j)| u_α(i,j)` in storage order.
fn weighted(a: &CMatrix, alpha: f64) -> Vec<f64> {
    let n = a.nrows();
    let mut w = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            // Equal offsets, so i - j = r - c.
            w.push(a.get(r, c).norm() * weight(r as i64, c as i64, alpha));
        }
    }
    w
}

/// Per-diagonal suprema indexed by `k + (n - 1)` for `k = i - j`.
fn diagonal_sups(w: &[f64], n: usize) -> Vec<f64> {
    let mut sups = vec![0.0f64; 2 * n - 1];
    for r in 0..n {
        for c in 0..n {
            let k = r + n - 1 - c;
            sups[k] = sups[k].max(w[r * n + c]);
        }
    }
    sups
}

pub fn algebra_norm(a: &CMatrix, spec: &AlgebraSpec) -> Result<f64> {
    spec.validate()?;
    let n = a.require_section()?;
    if spec.kind == NormKind::OperatorL2 {
        return Ok(op_norm(a));
    }
    let w = weighted(a, spec.alpha);
    let p = spec.p;
    let value = match spec.kind {
        NormKind::GrochenigSchur => {
            let rows = (0..n).map(|r| lp_norm(w[r * n..(r + 1) * n].iter().copied(), p));
            let cols = (0..n).map(|c| lp_norm((0..n).map(|r| w[r * n + c]), p));
            rows.chain(cols).fold(0.0, f64::max)
        }
        NormKind::BaskakovGohbergSjostrand => lp_norm(diagonal_sups(&w, n), p),
        NormKind::Beurling => {
            let sups = diagonal_sups(&w, n);
            // envelope[d] = sup over |i - j| >= d
            let mut envelope = vec![0.0f64; n];
            let mut running = 0.0f64;
            for d in (0..n).rev() {
                running = running.max(sups[n - 1 + d]).max(sups[n - 1 - d]);
                envelope[d] = running;
            }
            let ks = -(n as i64 - 1)..=(n as i64 - 1);
            lp_norm(ks.map(|k| envelope[k.unsigned_abs() as usize]), p)
        }
        NormKind::OperatorL2 => unreachable!(),
    };
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InclusionReport {
    pub gs: f64,
    pub bgs: f64,
    pub beurling: f64,
    pub ordered: bool,
}

/// Relative slack for the GS ≤ BGS ≤ Beurling ordering.
pub const ORDERING_RTOL: f64 = 1e-12;

pub fn inclusion_check(a: &CMatrix, p: Exponent, alpha: f64) -> Result<InclusionReport> {
    let norm = |kind| algebra_norm(a, &AlgebraSpec { kind, p, alpha });
    let gs = norm(NormKind::GrochenigSchur)?;
    let bgs = norm(NormKind::BaskakovGohbergSjostrand)?;
    let beurling = norm(NormKind::Beurling)?;
    let ordered = gs <= bgs * (1.0 + ORDERING_RTOL) && bgs <= beurling * (1.0 + ORDERING_RTOL);
    Ok(InclusionReport {
        gs,
        bgs,
        beurling,
        ordered,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifferentialProbe {
    pub m: u32,
    pub theta: f64,
    pub ratio: f64,
}

/// `‖A^m‖ / (‖A‖^{m-θ} ‖A‖_op^θ)`, an empirical lower estimate of the
/// constant in the differential-subalgebra inequality.
pub fn differential_ratio(
    a: &CMatrix,
    spec: &AlgebraSpec,
    m: u32,
    theta: f64,
) -> Result<DifferentialProbe> {
    if m < 2 {
        return Err(Error::InvalidSpec(format!("m must be >= 2, got {m}")));
    }
    if !(theta > 0.0 && theta <= (m - 1) as f64) {
        return Err(Error::InvalidSpec(format!(
            "theta must lie in (0, {}], got {theta}",
            m - 1
        )));
    }
    let norm_a = algebra_norm(a, spec)?;
    if norm_a == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let op = op_norm(a);
    let norm_pow = algebra_norm(&a.power(m)?, spec)?;
    let ratio = norm_pow / (norm_a.powf(m as f64 - theta) * op.powf(theta));
    Ok(DifferentialProbe { m, theta, ratio })
}

/// `‖AB‖ / (‖A‖ ‖B‖)`; reported rather than asserted for the weighted norms.
pub fn submultiplicativity_ratio(a: &CMatrix, b: &CMatrix, spec: &AlgebraSpec) -> Result<f64> {
    let denom = algebra_norm(a, spec)? * algebra_norm(b, spec)?;
    if denom == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(algebra_norm(&a.mul(b)?, spec)? / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;
    use proptest::prelude::*;

    const ALL_KINDS: [NormKind; 4] = [
        NormKind::GrochenigSchur,
        NormKind::BaskakovGohbergSjostrand,
        NormKind::Beurling,
        NormKind::OperatorL2,
    ];

    fn single_entry() -> CMatrix {
        let mut m = vec![C64::new(0.0, 0.0); 16];
        m[3] = C64::new(2.0, 0.0);
        CMatrix::from_entries(4, 4, m).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(5, 2, 2.0), 16.0);
        assert_eq!(weight(7, 7, 3.5), 1.0);
        assert_eq!(weight(0, 4, 0.0), 1.0);
    }

    #[test]
    fn identity_has_unit_norm_everywhere() {
        let i = CMatrix::identity(5).with_offsets(-2, -2);
        for kind in ALL_KINDS {
            for p in [1.0, 2.0, 3.5, f64::INFINITY] {
                for alpha in [0.0, 1.0, 2.5] {
                    let spec = AlgebraSpec::new(kind, p, alpha).unwrap();
                    let v = algebra_norm(&i, &spec).unwrap();
                    assert!((v - 1.0).abs() < 1e-14, "{spec}: {v}");
                }
            }
        }
    }

    #[test]
    fn single_entry_example() {
        let a = single_entry();
        let norm = |kind| algebra_norm(&a, &AlgebraSpec::new(kind, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(norm(NormKind::GrochenigSchur), 8.0);
        assert_eq!(norm(NormKind::BaskakovGohbergSjostrand), 8.0);
        assert_eq!(norm(NormKind::Beurling), 56.0);
        let rep = inclusion_check(&a, Exponent(1.0), 1.0).unwrap();
        assert_eq!(
            (rep.gs, rep.bgs, rep.beurling, rep.ordered),
            (8.0, 8.0, 56.0, true)
        );
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let d = CMatrix::from_diagonal(&[C64::new(1.0, 0.0), C64::new(0.0, 2.0)]).unwrap();
        let v = algebra_norm(&d, &AlgebraSpec::operator()).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(
            AlgebraSpec::new(NormKind::Beurling, 0.5, 1.0),
            Err(Error::InvalidSpec(_))
        ));
        let bad = AlgebraSpec {
            kind: NormKind::GrochenigSchur,
            p: Exponent(0.2),
            alpha: 0.0,
        };
        assert!(matches!(
            algebra_norm(&CMatrix::identity(2), &bad),
            Err(Error::InvalidSpec(_))
        ));
        let spec = AlgebraSpec::new(NormKind::GrochenigSchur, 1.0, 0.0).unwrap();
        assert!(matches!(
            algebra_norm(&CMatrix::zeros(2, 3), &spec),
            Err(Error::NonSquare { .. })
        ));
        let skew = CMatrix::identity(2).with_offsets(0, 1);
        assert!(matches!(
            algebra_norm(&skew, &spec),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn spec_parsing_and_wire_format() {
        let s: AlgebraSpec = "bgs:inf:1.5".parse().unwrap();
        assert_eq!(s.kind, NormKind::BaskakovGohbergSjostrand);
        assert!(s.p.is_inf());
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"kind":"bgs","p":"inf","alpha":1.5}"#
        );
        let back: AlgebraSpec = serde_json::from_str(r#"{"kind":"gs","p":2,"alpha":1}"#).unwrap();
        assert_eq!(
            back,
            AlgebraSpec::new(NormKind::GrochenigSchur, 2.0, 1.0).unwrap()
        );
        assert_eq!(
            "op".parse::<AlgebraSpec>().unwrap().kind,
            NormKind::OperatorL2
        );
        assert!("xx:1:1".parse::<AlgebraSpec>().is_err());
        assert!("gs:1".parse::<AlgebraSpec>().is_err());
    }

    #[test]
    fn admissibility_threshold() {
        let mk = |p, alpha| AlgebraSpec::new(NormKind::GrochenigSchur, p, alpha).unwrap();
        assert!(mk(1.0, 0.0 + 1e-9).admissible());
        assert!(!mk(1.0, 0.0).admissible());
        assert!(!mk(2.0, 0.5).admissible());
        assert!(mk(2.0, 0.51).admissible());
        assert!(!mk(f64::INFINITY, 1.0).admissible());
        assert!(mk(f64::INFINITY, 1.01).admissible());
    }

    #[test]
    fn differential_probe_examples() {
        let spec = AlgebraSpec::new(NormKind::BaskakovGohbergSjostrand, 1.0, 2.0).unwrap();
        let i = CMatrix::identity(4);
        let r = differential_ratio(&i, &spec, 3, 1.5).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);

        let scaled = i.scale(C64::new(0.0, -2.5));
        let r = differential_ratio(&scaled, &spec, 2, 1.0).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);

        let mut e = vec![C64::new(0.0, 0.0); 9];
        e[1] = C64::new(1.0, 0.0);
        let nil = CMatrix::from_entries(3, 3, e).unwrap();
        assert_eq!(differential_ratio(&nil, &spec, 2, 1.0).unwrap().ratio, 0.0);

        assert!(matches!(
            differential_ratio(&CMatrix::zeros(3, 3), &spec, 2, 1.0),
            Err(Error::ZeroMatrix)
        ));
        assert!(differential_ratio(&i, &spec, 1, 0.5).is_err());
        assert!(differential_ratio(&i, &spec, 2, 1.5).is_err());
    }

    fn arb_square() -> impl Strategy<Value = CMatrix> {
        (1usize..7).prop_flat_map(|n| {
            prop::collection::vec((-10f64..10.0, -10f64..10.0), n * n).prop_map(move |v| {
                CMatrix::from_entries(n, n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
                    .unwrap()
            })
        })
    }

    fn arb_spec() -> impl Strategy<Value = AlgebraSpec> {
        (
            prop::sample::select(ALL_KINDS.to_vec()),
            prop::sample::select(vec![1.0, 1.5, 2.0, 4.0, f64::INFINITY]),
            0.0f64..3.0,
        )
            .prop_map(|(k, p, a)| AlgebraSpec::new(k, p, a).unwrap())
    }

    proptest! {
        #[test]
        fn homogeneity(a in arb_square(), spec in arb_spec(), re in -3f64..3.0, im in -3f64..3.0) {
            let c = C64::new(re, im);
            let lhs = algebra_norm(&a.scale(c), &spec).unwrap();
            let rhs = c.norm() * algebra_norm(&a, &spec).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + rhs));
        }

        #[test]
        fn triangle_inequality(a in arb_square(), spec in arb_spec(), seed in 0u64..1000) {
            let n = a.nrows();
            let b = CMatrix::from_fn(n, n, |r, c| {
                let t = (seed as f64 + (r * 7 + c * 3) as f64).sin();
                C64::new(5.0 * t, -3.0 * t * t)
            }).unwrap();
            let lhs = algebra_norm(&a.add(&b).unwrap(), &spec).unwrap();
            let rhs = algebra_norm(&a, &spec).unwrap() + algebra_norm(&b, &spec).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
        }

        #[test]
        fn ordering_and_sup_coincidence(a in arb_square(), p in prop::sample::select(vec![1.0, 2.0, 3.0]), alpha in 0f64..3.0) {
            let rep = inclusion_check(&a, Exponent(p), alpha).unwrap();
            prop_assert!(rep.ordered, "{rep:?}");
            let inf = inclusion_check(&a, Exponent::INF, alpha).unwrap();
            let jaffard = weighted(&a, alpha).into_iter().fold(0.0, f64::max);
            prop_assert_eq!(inf.gs, jaffard);
            prop_assert_eq!(inf.bgs, jaffard);
            prop_assert_eq!(inf.beurling, jaffard);
        }

        #[test]
        fn operator_norm_is_submultiplicative(a in arb_square(), b in arb_square()) {
            if a.nrows() == b.nrows() {
                let ab = op_norm(&a.mul(&b).unwrap());
                prop_assert!(ab <= op_norm(&a) * op_norm(&b) * (1.0 + 1e-12) + 1e-12);
            }
        }
    }
}
