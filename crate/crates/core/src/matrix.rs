//! Dense complex matrices that stand for finite sections of ℤ-indexed operators.
//!
//! A [`CMatrix`] stores its entries row-major together with the logical index
//! of its first row and first column. Entry `(r, c)` of the storage is the
//! operator entry `a(row_offset + r, col_offset + c)`. Offsets only matter for
//! the weighted algebra norms; arithmetic works on positions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative factor in the normality tolerance `1e-10 * (1 + ‖A‖_F²)`.
pub const NORMALITY_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct CMatrix {
    nrows: usize,
    ncols: usize,
    row_offset: i64,
    col_offset: i64,
    entries: Vec<C64>,
}

/// Wire form: `{"nrows","ncols","row_offset","col_offset","entries":[[re,im],...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    nrows: usize,
    ncols: usize,
    #[serde(default)]
    row_offset: i64,
    #[serde(default)]
    col_offset: i64,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let entries = raw
            .entries
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        CMatrix::from_entries(raw.nrows, raw.ncols, entries)
            .map(|m| m.with_offsets(raw.row_offset, raw.col_offset))
    }
}

impl From<CMatrix> for MatrixJson {
    fn from(m: CMatrix) -> Self {
        MatrixJson {
            nrows: m.nrows,
            ncols: m.ncols,
            row_offset: m.row_offset,
            col_offset: m.col_offset,
            entries: m.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Operation selector for [`mat_apply`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatOp {
    Add,
    Sub,
    Mul,
    Adjoint,
    Scale(C64),
}

impl CMatrix {
    /// Builds a matrix from row-major entries, rejecting empty shapes and
    /// non-finite values.
    pub fn from_entries(nrows: usize, ncols: usize, entries: Vec<C64>) -> Result<Self> {
        if nrows == 0 || ncols == 0 {
            return Err(Error::Empty { nrows, ncols });
        }
        if entries.len() != nrows * ncols {
            return Err(Error::EntryCount {
                expected: nrows * ncols,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: pos / ncols,
                col: pos % ncols,
            });
        }
        Ok(CMatrix {
            nrows,
            ncols,
            row_offset: 0,
            col_offset: 0,
            entries,
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0)))
            .collect();
        Self::from_entries(nrows, ncols, entries)
    }

    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> C64,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                entries.push(f(r, c));
            }
        }
        Self::from_entries(nrows, ncols, entries)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(nrows > 0 && ncols > 0, "empty matrix");
        CMatrix {
            nrows,
            ncols,
            row_offset: 0,
            col_offset: 0,
            entries: vec![C64::new(0.0, 0.0); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[C64]) -> Result<Self> {
        let n = diag.len();
        Self::from_fn(
            n,
            n,
            |r, c| if r == c { diag[r] } else { C64::new(0.0, 0.0) },
        )
    }

    /// Identity section sharing this matrix's row indexing.
    pub fn identity_like(&self) -> Self {
        Self::identity(self.nrows).with_offsets(self.row_offset, self.row_offset)
    }

    pub fn with_offsets(mut self, row_offset: i64, col_offset: i64) -> Self {
        self.row_offset = row_offset;
        self.col_offset = col_offset;
        self
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row_offset(&self) -> i64 {
        self.row_offset
    }

    pub fn col_offset(&self) -> i64 {
        self.col_offset
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.entries[r * self.ncols + c]
    }

    /// Entry at logical indices `(i, j)`; zero outside the stored window.
    pub fn logical(&self, i: i64, j: i64) -> C64 {
        let r = i - self.row_offset;
        let c = j - self.col_offset;
        if r < 0 || c < 0 || r as usize >= self.nrows || c as usize >= self.ncols {
            C64::new(0.0, 0.0)
        } else {
            self.get(r as usize, c as usize)
        }
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows)
        } else {
            Err(Error::NonSquare {
                nrows: self.nrows,
                ncols: self.ncols,
            })
        }
    }

    /// Square with equal offsets, the shape every algebra norm needs.
    pub fn require_section(&self) -> Result<usize> {
        let n = self.require_square()?;
        if self.row_offset != self.col_offset {
            return Err(Error::DimensionMismatch(format!(
                "row offset {} differs from column offset {}",
                self.row_offset, self.col_offset
            )));
        }
        Ok(n)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for c in 0..self.ncols {
            for r in 0..self.nrows {
                out.push(self.get(r, c).conj());
            }
        }
        CMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            row_offset: self.col_offset,
            col_offset: self.row_offset,
            entries: out,
        }
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for c in 0..self.ncols {
            for r in 0..self.nrows {
                out.push(self.get(r, c));
            }
        }
        CMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            row_offset: self.col_offset,
            col_offset: self.row_offset,
            entries: out,
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|z| *z *= c);
        out
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        if self.row_offset != other.row_offset || self.col_offset != other.col_offset {
            return Err(Error::DimensionMismatch(format!(
                "{what}: index offsets differ"
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let mut out = self.clone();
        out.entries
            .iter_mut()
            .zip(&other.entries)
            .for_each(|(a, b)| *a += b);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        let mut out = self.clone();
        out.entries
            .iter_mut()
            .zip(&other.entries)
            .for_each(|(a, b)| *a -= b);
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let (n, k, m) = (self.nrows, self.ncols, other.ncols);
        let mut out = vec![C64::new(0.0, 0.0); n * m];
        for r in 0..n {
            let row = &mut out[r * m..(r + 1) * m];
            for l in 0..k {
                let a = self.entries[r * k + l];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let brow = &other.entries[l * m..(l + 1) * m];
                row.iter_mut().zip(brow).for_each(|(o, b)| *o += a * b);
            }
        }
        Ok(CMatrix {
            nrows: n,
            ncols: m,
            row_offset: self.row_offset,
            col_offset: other.col_offset,
            entries: out,
        })
    }

    /// `self + shift * I`.
    pub fn shifted(&self, shift: C64) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for i in 0..n {
            out.entries[i * n + i] += shift;
        }
        Ok(out)
    }

    /// Repeated product `A^m`, `m >= 1`.
    pub fn power(&self, m: u32) -> Result<Self> {
        self.require_square()?;
        assert!(m >= 1, "power needs m >= 1");
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.nrows, self.ncols, &self.entries)
    }

    pub fn from_nalgebra(m: &DMatrix<C64>) -> Result<Self> {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn normality_tolerance(&self) -> f64 {
        let f = self.frobenius();
        NORMALITY_RTOL * (1.0 + f * f)
    }
}

/// Dispatches one of the basic operations. `Adjoint` and `Scale` ignore `b`.
pub fn mat_apply(a: &CMatrix, b: Option<&CMatrix>, op: MatOp) -> Result<CMatrix> {
    let rhs = || b.ok_or_else(|| Error::DimensionMismatch(format!("{op:?} needs two operands")));
    match op {
        MatOp::Add => a.add(rhs()?),
        MatOp::Sub => a.sub(rhs()?),
        MatOp::Mul => a.mul(rhs()?),
        MatOp::Adjoint => Ok(a.adjoint()),
        MatOp::Scale(c) => Ok(a.scale(c)),
    }
}

/// Frobenius norm of the commutator `A*A - AA*`.
pub fn normality_residual(a: &CMatrix) -> Result<f64> {
    a.require_square()?;
    let a = a.clone().with_offsets(0, 0);
    let ah = a.adjoint();
    let left = ah.mul(&a)?;
    let right = a.mul(&ah)?;
    Ok(left.sub(&right)?.frobenius())
}

pub fn is_normal(a: &CMatrix) -> Result<bool> {
    Ok(normality_residual(a)? <= a.normality_tolerance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(
            CMatrix::from_entries(0, 2, vec![]),
            Err(Error::Empty { .. })
        ));
        assert!(matches!(
            CMatrix::from_entries(2, 2, vec![c(1.0, 0.0); 3]),
            Err(Error::EntryCount {
                expected: 4,
                got: 3
            })
        ));
        let bad = vec![
            c(1.0, 0.0),
            c(f64::NAN, 0.0),
            c(0.0, 0.0),
            c(0.0, f64::INFINITY),
        ];
        assert!(matches!(
            CMatrix::from_entries(2, 2, bad),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn normality_examples() {
        let d = CMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)]).unwrap();
        assert_eq!(normality_residual(&d).unwrap(), 0.0);

        let jordan = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let r = normality_residual(&jordan).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        assert!(!is_normal(&jordan).unwrap());

        let circ = CMatrix::from_fn(5, 5, |r, col| {
            let coeffs = [
                c(0.3, 0.1),
                c(-1.0, 0.5),
                c(0.2, 0.0),
                c(0.0, 0.7),
                c(1.5, -0.2),
            ];
            coeffs[(col + 5 - r) % 5]
        })
        .unwrap();
        assert!(normality_residual(&circ).unwrap() < 1e-13);

        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(
            normality_residual(&rect),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let a =
            CMatrix::from_fn(3, 3, |r, col| c(r as f64 - col as f64, (r * col) as f64)).unwrap();
        let i = CMatrix::identity(3);
        assert_eq!(mat_apply(&i, Some(&a), MatOp::Mul).unwrap(), a);
        let adj = mat_apply(&a, None, MatOp::Adjoint).unwrap();
        assert_eq!(mat_apply(&adj, None, MatOp::Adjoint).unwrap(), a);
        let zero = mat_apply(&a, Some(&a), MatOp::Sub).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
        assert!(matches!(
            mat_apply(&a, Some(&CMatrix::zeros(2, 2)), MatOp::Add),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(mat_apply(&a, None, MatOp::Add).is_err());
        let shifted = a.clone().with_offsets(1, 1);
        assert!(a.add(&shifted).is_err());
    }

    #[test]
    fn adjoint_swaps_offsets() {
        let a = CMatrix::zeros(2, 3).with_offsets(-1, 4);
        let ah = a.adjoint();
        assert_eq!((ah.nrows(), ah.ncols()), (3, 2));
        assert_eq!((ah.row_offset(), ah.col_offset()), (4, -1));
    }

    #[test]
    fn logical_indexing_honours_offsets() {
        let a = CMatrix::from_fn(3, 3, |r, col| c((10 * r + col) as f64, 0.0))
            .unwrap()
            .with_offsets(-1, -1);
        assert_eq!(a.logical(-1, -1), c(0.0, 0.0));
        assert_eq!(a.logical(1, 0), c(21.0, 0.0));
        assert_eq!(a.logical(2, 0), c(0.0, 0.0));
    }

    #[test]
    fn json_wire_format() {
        let a = CMatrix::from_entries(1, 2, vec![c(1.0, -0.5), c(0.0, 2.0)])
            .unwrap()
            .with_offsets(-3, 2);
        let s = a.to_json();
        assert_eq!(
            s,
            r#"{"nrows":1,"ncols":2,"row_offset":-3,"col_offset":2,"entries":[[1.0,-0.5],[0.0,2.0]]}"#
        );
        let b = CMatrix::from_json(r#"{"nrows":1,"ncols":1,"entries":[[4,0]]}"#).unwrap();
        assert_eq!(b.row_offset(), 0);
        assert_eq!(b.get(0, 0), c(4.0, 0.0));
        assert!(CMatrix::from_json(r#"{"nrows":2,"ncols":1,"entries":[[4,0]]}"#).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = CMatrix> {
        (1usize..6, 1usize..6, -5i64..5, -5i64..5).prop_flat_map(|(r, c, ro, co)| {
            prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), r * c).prop_map(move |v| {
                CMatrix::from_entries(r, c, v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
                    .unwrap()
                    .with_offsets(ro, co)
            })
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(a in arb_matrix()) {
            let back = CMatrix::from_json(&a.to_json()).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn adjoint_is_frobenius_isometry(a in arb_matrix()) {
            let f = a.frobenius();
            prop_assert!((a.adjoint().frobenius() - f).abs() <= 1e-12 * (1.0 + f));
        }

        #[test]
        fn hermitian_matrices_are_normal(a in arb_matrix()) {
            if a.is_square() {
                let h = a.add(&a.adjoint().with_offsets(a.row_offset(), a.col_offset())).unwrap();
                let f = h.frobenius();
                prop_assert!(normality_residual(&h).unwrap() <= 1e-12 * f * f);
            }
        }
    }
}
