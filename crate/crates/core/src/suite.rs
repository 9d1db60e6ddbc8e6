//! Seeded Sylvester instances over the generator families, shared by the
//! `bench` command and the test suites.
//!
//! `B` is built from an independent matrix of the same family and shifted
//! right until every real part of `σ(B)` exceeds every real part of `σ(A)`
//! by `gap`, which forces `δ(A, B) ≥ gap`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::Result;
use crate::generators::{generate, shifted_copy, Family, GenSpec};
use crate::matrix::{CMatrix, C64};
use crate::spectra::spectrum;

pub const SIZES: [usize; 4] = [4, 8, 12, 24];
pub const FAMILIES: [Family; 3] = [Family::Diagonal, Family::HermitianBanded, Family::Circulant];
pub const DEFAULT_GAP: f64 = 1.0;

#[derive(Debug, Clone)]
pub struct Instance {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub a: CMatrix,
    pub b: CMatrix,
    pub q: CMatrix,
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Diagonal => "diagonal",
        Family::HermitianBanded => "hermitian_banded",
        Family::Circulant => "circulant",
        Family::ShiftedCopy => "shifted_copy",
    }
}

fn family_spec(family: Family, n: usize, seed: u64, stream: u64) -> GenSpec {
    GenSpec {
        bandwidth: 2.min(n - 1),
        decay_alpha: 1.5,
        stream,
        ..GenSpec::new(family, n, seed)
    }
}

pub fn instance(family: Family, n: usize, seed: u64, gap: f64) -> Result<Instance> {
    let a = generate(&family_spec(family, n, seed, 0))?;
    let b0 = generate(&family_spec(family, n, seed, 1))?;
    let max_re_a = spectrum(&a)?
        .values
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_re_b = spectrum(&b0)?
        .values
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min);
    let b = shifted_copy(&b0, C64::new(max_re_a - min_re_b + gap, 0.0))?;

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(2);
    let q = CMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })?;
    Ok(Instance {
        family,
        n,
        seed,
        a,
        b,
        q,
    })
}

/// `per_cell` seeds for every family and size, starting at `base_seed`.
pub fn oracle_suite(base_seed: u64, per_cell: u64, sizes: &[usize]) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for &family in &FAMILIES {
        for &n in sizes {
            for k in 0..per_cell {
                out.push(instance(family, n, base_seed + k, DEFAULT_GAP)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::op_norm;
    use crate::spectra::separation;

    #[test]
    fn separation_at_least_gap() {
        for &family in &FAMILIES {
            for seed in 0..3 {
                let inst = instance(family, 8, seed, 0.5).unwrap();
                let sa = spectrum(&inst.a).unwrap();
                let sb = spectrum(&inst.b).unwrap();
                let sep = separation(&sa, &sb, op_norm(&inst.a)).unwrap();
                assert!(
                    sep.delta_cheb >= 0.5 - 1e-12,
                    "{family:?} {seed}: {}",
                    sep.delta_cheb
                );
            }
        }
    }

    #[test]
    fn suite_size_and_reproducibility() {
        let s = oracle_suite(0, 5, &SIZES).unwrap();
        assert_eq!(s.len(), 60);
        let again = instance(Family::Circulant, 12, 3, DEFAULT_GAP).unwrap();
        let first = s
            .iter()
            .find(|i| i.family == Family::Circulant && i.n == 12 && i.seed == 3)
            .unwrap();
        assert_eq!(first.a, again.a);
        assert_eq!(first.b, again.b);
        assert_eq!(first.q, again.q);
    }
}
