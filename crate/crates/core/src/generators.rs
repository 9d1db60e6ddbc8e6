//! Seeded structured normal matrices with controllable spectra and decay.
//!
//! Randomness comes from ChaCha20 seeded with `seed`; `stream` selects an
//! independent ChaCha stream, so several matrices can share one seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Diagonal,
    HermitianBanded,
    Circulant,
    ShiftedCopy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub bandwidth: usize,
    pub decay_alpha: f64,
    /// `[re, im]`; used by `shifted_copy`.
    pub shift: [f64; 2],
    pub seed: u64,
    pub stream: u64,
    /// Explicit diagonal (diagonal) or first row (circulant).
    pub values: Option<Vec<[f64; 2]>>,
    /// Matrix that `shifted_copy` shifts.
    pub base: Option<Box<GenSpec>>,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            family: Family::Diagonal,
            n: 4,
            bandwidth: 0,
            decay_alpha: 0.0,
            shift: [0.0, 0.0],
            seed: 0,
            stream: 0,
            values: None,
            base: None,
        }
    }
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            seed,
            ..GenSpec::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.family == Family::ShiftedCopy {
            if self.base.is_none() {
                return Err(Error::InvalidSpec("shifted_copy needs a base spec".into()));
            }
            return Ok(());
        }
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be >= 1".into()));
        }
        if self.bandwidth >= self.n {
            return Err(Error::InvalidSpec(format!(
                "bandwidth {} must be < n = {}",
                self.bandwidth, self.n
            )));
        }
        if !(self.decay_alpha >= 0.0 && self.decay_alpha.is_finite()) {
            return Err(Error::InvalidSpec(
                "decay_alpha must be finite and >= 0".into(),
            ));
        }
        if let Some(v) = &self.values {
            if v.len() != self.n {
                return Err(Error::InvalidSpec(format!(
                    "{} values given for n = {}",
                    v.len(),
                    self.n
                )));
            }
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// `(1 + d)^(-α-1)` beyond the band, 1 inside it.
    fn damping(&self, d: usize) -> f64 {
        if d <= self.bandwidth {
            1.0
        } else {
            (1.0 + d as f64).powf(-self.decay_alpha - 1.0)
        }
    }

    fn given_values(&self) -> Option<Vec<C64>> {
        self.values
            .as_ref()
            .map(|v| v.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }
}

fn unit_complex(rng: &mut ChaCha20Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn generate(spec: &GenSpec) -> Result<CMatrix> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = spec.rng();
    match spec.family {
        Family::Diagonal => {
            let diag = spec
                .given_values()
                .unwrap_or_else(|| (0..n).map(|_| unit_complex(&mut rng)).collect());
            CMatrix::from_diagonal(&diag)
        }
        Family::HermitianBanded => {
            let mut m = vec![C64::new(0.0, 0.0); n * n];
            for r in 0..n {
                m[r * n + r] = C64::new(rng.random_range(-1.0..1.0), 0.0);
                for c in r + 1..n {
                    let v = unit_complex(&mut rng) * spec.damping(c - r);
                    m[r * n + c] = v;
                    m[c * n + r] = v.conj();
                }
            }
            CMatrix::from_entries(n, n, m)
        }
        Family::Circulant => {
            let row = spec.given_values().unwrap_or_else(|| {
                (0..n)
                    .map(|k| unit_complex(&mut rng) * spec.damping(k.min(n - k)))
                    .collect()
            });
            CMatrix::from_fn(n, n, |r, c| row[(c + n - r) % n])
        }
        Family::ShiftedCopy => {
            let base = generate(spec.base.as_deref().expect("validated"))?;
            shifted_copy(&base, C64::new(spec.shift[0], spec.shift[1]))
        }
    }
}

/// `A + shift·I`.
pub fn shifted_copy(a: &CMatrix, shift: C64) -> Result<CMatrix> {
    a.shifted(shift)
}

/// Eigenvalues of the circulant with first row `row`: `Σ_k c_k ω^{jk}`.
pub fn circulant_symbol(row: &[C64]) -> Vec<C64> {
    let n = row.len();
    (0..n)
        .map(|j| {
            row.iter()
                .enumerate()
                .map(|(k, &c)| {
                    c * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64)
                })
                .sum()
        })
        .collect()
}
