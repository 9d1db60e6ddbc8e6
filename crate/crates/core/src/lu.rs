//! Dense complex LU factorization with partial pivoting.
//!
//! Used for the two resolvent solves at every quadrature node. Right-hand
//! sides are stored row-major so that elimination runs over contiguous rows.

use crate::matrix::C64;

#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    // Unit-lower L below the diagonal, U on and above it.
    factors: Vec<C64>,
    perm: Vec<usize>,
}

/// Pivot below `n * eps * max|a_ij|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singular;

impl Lu {
    /// Factors the row-major `n x n` matrix `a`.
    pub fn factor(n: usize, mut a: Vec<C64>) -> Result<Self, Singular> {
        assert_eq!(a.len(), n * n);
        let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let threshold = (n as f64) * f64::EPSILON * scale;
        if scale == 0.0 {
            return Err(Singular);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|r| (r, a[r * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pmax <= threshold {
                return Err(Singular);
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let pivot = a[k * n + k];
            for r in k + 1..n {
                let l = a[r * n + k] / pivot;
                a[r * n + k] = l;
                if l == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in k + 1..n {
                    let u = a[k * n + c];
                    a[r * n + c] -= l * u;
                }
            }
        }
        Ok(Lu {
            n,
            factors: a,
            perm,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `A Z = R` for a row-major `n x ncols` block `R`.
    pub fn solve(&self, rhs: &[C64], ncols: usize) -> Vec<C64> {
        let n = self.n;
        assert_eq!(rhs.len(), n * ncols);
        let mut z = vec![C64::new(0.0, 0.0); n * ncols];
        for (k, &src) in self.perm.iter().enumerate() {
            z[k * ncols..(k + 1) * ncols].copy_from_slice(&rhs[src * ncols..(src + 1) * ncols]);
        }
        for r in 1..n {
            let (done, rest) = z.split_at_mut(r * ncols);
            let row = &mut rest[..ncols];
            for k in 0..r {
                let l = self.factors[r * n + k];
                if l == C64::new(0.0, 0.0) {
                    continue;
                }
                let src = &done[k * ncols..(k + 1) * ncols];
                row.iter_mut().zip(src).for_each(|(o, s)| *o -= l * s);
            }
        }
        for r in (0..n).rev() {
            let (head, tail) = z.split_at_mut((r + 1) * ncols);
            let row = &mut head[r * ncols..];
            for k in r + 1..n {
                let u = self.factors[r * n + k];
                if u == C64::new(0.0, 0.0) {
                    continue;
                }
                let src = &tail[(k - r - 1) * ncols..(k - r) * ncols];
                row.iter_mut().zip(src).for_each(|(o, s)| *o -= u * s);
            }
            let d = self.factors[r * n + r];
            row.iter_mut().for_each(|o| *o /= d);
        }
        z
    }
}
