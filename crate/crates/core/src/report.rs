//! JSON report records written by the CLI.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::domain::{DomainVerification, GridDomain};
use crate::matrix::C64;
use crate::norms::{AlgebraSpec, DifferentialProbe, InclusionReport};
use crate::solver::SolveReport;
use crate::spectra::{Separation, SpectrumSet};

/// Serializes complex numbers as `[[re, im], ...]`.
pub fn complex_list<S: Serializer>(values: &[C64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for z in values {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub method: &'static str,
    /// `‖X_contour - X_oracle‖_F / ‖X_oracle‖_F`.
    pub rel_deviation: f64,
    pub max_abs_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveRun {
    pub command: &'static str,
    #[serde(flatten)]
    pub report: SolveReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormsRun {
    pub nrows: usize,
    pub ncols: usize,
    pub p: crate::norms::Exponent,
    pub alpha: f64,
    pub op: f64,
    pub inclusion: InclusionReport,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<AlgebraSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec_norm: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DifferentialProbe>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DomainRun {
    pub spectrum_a: SpectrumSet,
    pub spectrum_b: SpectrumSet,
    pub separation: Separation,
    pub domain: GridDomain,
    pub verification: DomainVerification,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub delta: f64,
    pub converged: bool,
    pub order_used: usize,
    pub residual_fro: f64,
    pub rel_error_vs_kron: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRun {
    pub rows: Vec<BenchRow>,
    pub max_rel_error: f64,
    pub all_converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_ms: Option<f64>,
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> crate::error::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Wrap {
        #[serde(serialize_with = "complex_list")]
        v: Vec<C64>,
    }

    #[test]
    fn complex_pairs() {
        let w = Wrap {
            v: vec![C64::new(1.0, -2.0), C64::new(0.5, 0.0)],
        };
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"v":[[1.0,-2.0],[0.5,0.0]]}"#
        );
    }
}
