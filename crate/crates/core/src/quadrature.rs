//! Composite Gauss–Legendre rules on the rectilinear contour.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::Serialize;

use crate::domain::{corner_point, GridDomain};
use crate::error::{Error, Result};
use crate::matrix::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub start: C64,
    pub end: C64,
}

/// Nodes and `dz` weights for every unit edge of the contour.
///
/// Weights carry the affine factor `(end - start)/2` times the Gauss weight;
/// the `1/(2πi)` factor is applied when summing.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourQuadrature {
    pub segments: Vec<Segment>,
    pub order: usize,
    /// `order` nodes per segment, segment-major.
    pub nodes: Vec<C64>,
    pub weights: Vec<C64>,
}

impl ContourQuadrature {
    pub fn segment_nodes(&self, s: usize) -> (&[C64], &[C64]) {
        let r = s * self.order..(s + 1) * self.order;
        (&self.nodes[r.clone()], &self.weights[r])
    }
}

/// `1 / (2πi)`.
pub fn cauchy_factor() -> C64 {
    C64::new(0.0, -1.0 / (2.0 * PI))
}

pub fn build_quadrature(dom: &GridDomain, order: usize) -> ContourQuadrature {
    let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("quadrature order must be >= 1"));
    let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // exact symmetry about 0; the middle node of an odd rule becomes 0
    let raw = pairs.clone();
    for (j, p) in pairs.iter_mut().enumerate() {
        let mirror = raw[order - 1 - j];
        *p = ((p.0 - mirror.0) / 2.0, (p.1 + mirror.1) / 2.0);
    }
    let segments: Vec<Segment> = dom
        .loops
        .iter()
        .flat_map(|l| l.unit_edges())
        .map(|(a, b)| Segment {
            start: corner_point(a, dom.side),
            end: corner_point(b, dom.side),
        })
        .collect();
    let mut nodes = Vec::with_capacity(segments.len() * order);
    let mut weights = Vec::with_capacity(segments.len() * order);
    for seg in &segments {
        let mid = (seg.start + seg.end) * 0.5;
        let half = (seg.end - seg.start) * 0.5;
        for &(x, w) in &pairs {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    ContourQuadrature {
        segments,
        order,
        nodes,
        weights,
    }
}

/// Discrete `(1/2πi) ∮ dz / (z - a)`: the winding number of the contour
/// about `a` once the rule has converged.
pub fn winding_selfcheck(quad: &ContourQuadrature, a: C64) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    for (&z, &w) in quad.nodes.iter().zip(&quad.weights) {
        let d = z - a;
        let dist = d.norm();
        if dist < 1e-14 {
            return Err(Error::NodeSingular { node: z, dist });
        }
        acc += w / d;
    }
    Ok(acc * cauchy_factor())
}
