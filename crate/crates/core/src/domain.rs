//! Grid-square Cauchy domains around a spectrum.
//!
//! The plane is tiled by closed squares `S(k, k')` of side `δ'` centred at
//! `(k + k' i) δ'`. Starting from the cells that touch `σ(A)` (`d1`), two
//! one-ring dilations give `d2` and `d3`. The integration contour is the
//! boundary of the interior of `∪ d2`, traced into positively oriented
//! rectilinear loops: outer loops counterclockwise, holes clockwise, region
//! always on the left.
//!
//! Grid corners are stored as integer lattice points; corner `(a, b)` sits at
//! `((a - 1/2) δ', (b - 1/2) δ')`, so cell `(k, k')` has corners `(k, k')`
//! and `(k + 1, k' + 1)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::C64;
use crate::spectra::{Separation, SpectrumSet};

pub type Cell = (i64, i64);
pub type Corner = (i64, i64);

/// Edge-snapping tolerance in units of the cell side.
pub const SNAP_TOL: f64 = 1e-12;
/// Relative slack on every verification inequality.
pub const CHECK_RTOL: f64 = 1e-12;
/// Constant in the boundary-length estimate `ℓ(∂D) ≤ 48 (‖A‖ + δ)² / δ`.
pub const LENGTH_CONSTANT: f64 = 48.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryLoop {
    /// Polygon corners; consecutive corners differ along one axis.
    pub corners: Vec<Corner>,
    pub ccw: bool,
    /// Number of unit cell edges on the loop.
    pub edge_count: usize,
}

impl BoundaryLoop {
    pub fn vertices(&self, side: f64) -> Vec<C64> {
        self.corners
            .iter()
            .map(|&c| corner_point(c, side))
            .collect()
    }

    pub fn perimeter(&self, side: f64) -> f64 {
        self.edge_count as f64 * side
    }

    /// Twice the signed area in lattice units.
    fn doubled_area(&self) -> i64 {
        let n = self.corners.len();
        (0..n)
            .map(|i| {
                let (x0, y0) = self.corners[i];
                let (x1, y1) = self.corners[(i + 1) % n];
                x0 * y1 - x1 * y0
            })
            .sum()
    }

    /// Unit edges `(from, to)` in traversal order.
    pub fn unit_edges(&self) -> Vec<(Corner, Corner)> {
        let n = self.corners.len();
        let mut out = Vec::with_capacity(self.edge_count);
        for i in 0..n {
            let (x0, y0) = self.corners[i];
            let (x1, y1) = self.corners[(i + 1) % n];
            let (dx, dy) = ((x1 - x0).signum(), (y1 - y0).signum());
            let steps = (x1 - x0).abs() + (y1 - y0).abs();
            for s in 0..steps {
                out.push((
                    (x0 + s * dx, y0 + s * dy),
                    (x0 + (s + 1) * dx, y0 + (s + 1) * dy),
                ));
            }
        }
        out
    }

    /// Winding number of the loop about `p` (crossings of the ray to `+∞`).
    pub fn winding(&self, p: C64, side: f64) -> i64 {
        let n = self.corners.len();
        let mut w = 0;
        for i in 0..n {
            let a = corner_point(self.corners[i], side);
            let b = corner_point(self.corners[(i + 1) % n], side);
            if a.re != b.re || a.re <= p.re {
                continue;
            }
            if a.im <= p.im && p.im < b.im {
                w += 1;
            } else if b.im <= p.im && p.im < a.im {
                w -= 1;
            }
        }
        w
    }
}

pub fn corner_point((a, b): Corner, side: f64) -> C64 {
    C64::new((a as f64 - 0.5) * side, (b as f64 - 0.5) * side)
}

pub fn cell_center((k, kp): Cell, side: f64) -> C64 {
    C64::new(k as f64 * side, kp as f64 * side)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDomain {
    pub side: f64,
    pub d1: BTreeSet<Cell>,
    pub d2: BTreeSet<Cell>,
    pub d3: BTreeSet<Cell>,
    pub loops: Vec<BoundaryLoop>,
    pub boundary_length: f64,
}

impl GridDomain {
    pub fn exposed_edges(&self) -> usize {
        self.loops.iter().map(|l| l.edge_count).sum()
    }

    /// Total winding number of the boundary about `p`.
    pub fn winding(&self, p: C64) -> i64 {
        self.loops.iter().map(|l| l.winding(p, self.side)).sum()
    }
}

fn axis_indices(x: f64) -> Vec<i64> {
    let k = x.round();
    let frac = x - k;
    let k = k as i64;
    let mut out = Vec::with_capacity(2);
    if frac <= -0.5 + SNAP_TOL {
        out.push(k - 1);
    }
    out.push(k);
    if frac >= 0.5 - SNAP_TOL {
        out.push(k + 1);
    }
    out
}

/// Every closed cell containing `z`, with points within `SNAP_TOL` of an edge
/// assigned to all adjacent cells.
pub fn cells_containing(z: C64, side: f64) -> Vec<Cell> {
    let ks = axis_indices(z.re / side);
    let kps = axis_indices(z.im / side);
    ks.iter()
        .flat_map(|&k| kps.iter().map(move |&kp| (k, kp)))
        .collect()
}

/// One-ring (8-neighbour) dilation: all closed cells meeting the union.
pub fn dilate(cells: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let mut out = BTreeSet::new();
    for &(k, kp) in cells {
        for dk in -1..=1 {
            for dkp in -1..=1 {
                out.insert((k + dk, kp + dkp));
            }
        }
    }
    out
}

pub fn build_domain(sa: &SpectrumSet, sep: &Separation) -> Result<GridDomain> {
    if sa.values.is_empty() {
        return Err(Error::DegenerateSpectrum);
    }
    if !(sep.delta_cheb > 0.0) {
        return Err(Error::SpectraOverlap {
            delta: sep.delta_cheb,
            tol: 0.0,
        });
    }
    let side = sep.delta_prime;
    let d1: BTreeSet<Cell> = sa
        .values
        .iter()
        .flat_map(|&z| cells_containing(z, side))
        .collect();
    let d2 = dilate(&d1);
    let d3 = dilate(&d2);
    let loops = trace_boundary(&d2);
    let boundary_length = loops.iter().map(|l| l.perimeter(side)).sum();
    Ok(GridDomain {
        side,
        d1,
        d2,
        d3,
        loops,
        boundary_length,
    })
}

fn left_of((dx, dy): (i64, i64)) -> (i64, i64) {
    (-dy, dx)
}

/// Boundary loops of the union of closed cells.
///
/// Each exposed cell side becomes a directed unit edge with its cell on the
/// left. Where two cells touch only at a corner the tracer turns left, so
/// the two lobes become separate loops that share that corner but never
/// cross or share an edge.
pub fn trace_boundary(cells: &BTreeSet<Cell>) -> Vec<BoundaryLoop> {
    let mut outgoing: BTreeMap<Corner, Vec<Corner>> = BTreeMap::new();
    for &(k, kp) in cells {
        let sides = [
            ((k, kp - 1), (k, kp), (k + 1, kp)),
            ((k + 1, kp), (k + 1, kp), (k + 1, kp + 1)),
            ((k, kp + 1), (k + 1, kp + 1), (k, kp + 1)),
            ((k - 1, kp), (k, kp + 1), (k, kp)),
        ];
        for (neighbour, from, to) in sides {
            if !cells.contains(&neighbour) {
                outgoing.entry(from).or_default().push(to);
            }
        }
    }
    for v in outgoing.values_mut() {
        v.sort_unstable();
    }

    let mut used: BTreeSet<(Corner, Corner)> = BTreeSet::new();
    let mut loops = Vec::new();
    let all_edges: Vec<(Corner, Corner)> = outgoing
        .iter()
        .flat_map(|(&from, tos)| tos.iter().map(move |&to| (from, to)))
        .collect();

    for &start in &all_edges {
        if used.contains(&start) {
            continue;
        }
        let mut path = vec![start.0];
        let mut edge = start;
        loop {
            used.insert(edge);
            let (from, to) = edge;
            let dir = (to.0 - from.0, to.1 - from.1);
            let options = &outgoing[&to];
            let next_to = if options.len() == 1 {
                options[0]
            } else {
                let want = left_of(dir);
                *options
                    .iter()
                    .find(|&&c| (c.0 - to.0, c.1 - to.1) == want)
                    .expect("pinch corner without a left turn")
            };
            let next = (to, next_to);
            if next == start {
                break;
            }
            path.push(to);
            edge = next;
        }
        let edge_count = path.len();
        let corners = simplify(&path);
        let mut l = BoundaryLoop {
            corners,
            ccw: true,
            edge_count,
        };
        l.ccw = l.doubled_area() > 0;
        loops.push(l);
    }
    loops
}

/// Drops collinear lattice points, keeping the first point (a corner, since
/// tracing starts from the smallest vertex of each loop).
fn simplify(path: &[Corner]) -> Vec<Corner> {
    let n = path.len();
    (0..n)
        .filter(|&i| {
            let p = path[(i + n - 1) % n];
            let c = path[i];
            let q = path[(i + 1) % n];
            (c.0 - p.0, c.1 - p.1) != (q.0 - c.0, q.1 - c.1)
        })
        .map(|i| path[i])
        .collect()
}

/// Chebyshev distance from `p` to the segment `[a, b]` (axis-aligned).
pub fn chebyshev_to_segment(p: C64, a: C64, b: C64) -> f64 {
    let clamp = |x: f64, lo: f64, hi: f64| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        if x < lo {
            lo - x
        } else if x > hi {
            x - hi
        } else {
            0.0
        }
    };
    clamp(p.re, a.re, b.re).max(clamp(p.im, a.im, b.im))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    /// `"le"`: pass when value ≤ bound; `"ge"`: pass when value ≥ bound.
    pub relation: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainVerification {
    pub checks: Vec<DomainCheck>,
    pub warnings: Vec<String>,
}

impl DomainVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&DomainCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&DomainCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn le(name: &str, value: f64, bound: f64) -> DomainCheck {
    DomainCheck {
        name: name.into(),
        value,
        bound,
        relation: "le",
        pass: value <= bound + CHECK_RTOL * bound.abs(),
    }
}

fn ge(name: &str, value: f64, bound: f64) -> DomainCheck {
    DomainCheck {
        name: name.into(),
        value,
        bound,
        relation: "ge",
        pass: value >= bound * (1.0 - CHECK_RTOL),
    }
}

/// Evaluates every containment and size estimate without failing.
pub fn evaluate_domain(
    dom: &GridDomain,
    sa: &SpectrumSet,
    sb: &SpectrumSet,
    sep: &Separation,
) -> DomainVerification {
    let side = dom.side;
    let mut checks = Vec::new();
    let mut warnings = Vec::new();

    let uncovered = sa
        .values
        .iter()
        .filter(|&&z| !cells_containing(z, side).iter().any(|c| dom.d1.contains(c)))
        .count();
    checks.push(le("spectrum_a_in_d1", uncovered as f64, 0.0));

    // Smallest covering-cell index per eigenvalue, worst case over σ(A).
    let window = sa
        .values
        .iter()
        .map(|&z| {
            cells_containing(z, side)
                .iter()
                .map(|&(k, kp)| k.abs().max(kp.abs()))
                .min()
                .unwrap_or(i64::MAX)
        })
        .max()
        .unwrap_or(0);
    checks.push(le("spectrum_a_in_n0_window", window as f64, sep.n0 as f64));

    let d2_reach = dom
        .d2
        .iter()
        .map(|&(k, kp)| k.abs().max(kp.abs()))
        .max()
        .unwrap_or(0);
    checks.push(le(
        "d2_in_central_square",
        d2_reach as f64,
        (sep.n0 + 1) as f64,
    ));

    let inside_d3 = sb
        .values
        .iter()
        .filter(|&&z| cells_containing(z, side).iter().all(|c| dom.d3.contains(c)))
        .count();
    checks.push(le("spectrum_b_outside_d3", inside_d3 as f64, 0.0));

    let reach = sep.op_norm_a + sep.delta_cheb;
    let max_radius = dom
        .loops
        .iter()
        .flat_map(|l| l.vertices(side))
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    checks.push(le("boundary_radius", max_radius, reach));

    checks.push(le(
        "boundary_length",
        dom.boundary_length,
        LENGTH_CONSTANT * reach * reach / sep.delta_cheb,
    ));

    if sa.is_normal && sb.is_normal {
        let segments: Vec<(C64, C64)> = dom
            .loops
            .iter()
            .flat_map(|l| {
                let v = l.vertices(side);
                let n = v.len();
                (0..n).map(move |i| (v[i], v[(i + 1) % n]))
            })
            .collect();
        let min_dist = |spec: &SpectrumSet| {
            spec.values
                .iter()
                .flat_map(|&z| {
                    segments
                        .iter()
                        .map(move |&(a, b)| chebyshev_to_segment(z, a, b))
                })
                .fold(f64::INFINITY, f64::min)
        };
        checks.push(ge("contour_gap_a", min_dist(sa), sep.delta_prime));
        checks.push(ge("contour_gap_b", min_dist(sb), sep.delta_prime));
    } else {
        warnings.push(
            "A or B is not normal: contour gap checks and norm certification skipped".to_string(),
        );
    }

    DomainVerification { checks, warnings }
}

pub fn verify_domain(
    dom: &GridDomain,
    sa: &SpectrumSet,
    sb: &SpectrumSet,
    sep: &Separation,
) -> Result<DomainVerification> {
    let rec = evaluate_domain(dom, sa, sb, sep);
    if let Some(bad) = rec.first_failure() {
        return Err(Error::DomainInvalid {
            check: bad.name.clone(),
            detail: format!(
                "value {:e}, bound {:e} ({})",
                bad.value, bad.bound, bad.relation
            ),
        });
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::separation;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn set(cells: &[Cell]) -> BTreeSet<Cell> {
        cells.iter().copied().collect()
    }

    fn block(r: i64) -> BTreeSet<Cell> {
        (-r..=r)
            .flat_map(|k| (-r..=r).map(move |kp| (k, kp)))
            .collect()
    }

    #[test]
    fn single_cell_loop() {
        let loops = trace_boundary(&set(&[(0, 0)]));
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].corners, vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert!(loops[0].ccw);
        assert_eq!(loops[0].perimeter(0.25), 1.0);
    }

    #[test]
    fn domino_loop() {
        let loops = trace_boundary(&set(&[(0, 0), (1, 0)]));
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].corners.len(), 4);
        assert_eq!(loops[0].edge_count, 6);
        assert!(loops[0].ccw);
    }

    #[test]
    fn ring_has_outer_and_hole() {
        let mut cells = block(1);
        cells.remove(&(0, 0));
        let loops = trace_boundary(&cells);
        assert_eq!(loops.len(), 2);
        let outer = loops.iter().find(|l| l.ccw).unwrap();
        let hole = loops.iter().find(|l| !l.ccw).unwrap();
        assert_eq!(outer.edge_count, 12);
        assert_eq!(hole.edge_count, 4);
        let total: i64 = loops.iter().map(|l| l.winding(c(0.0, 0.0), 1.0)).sum();
        assert_eq!(total, 0);
        let in_ring: i64 = loops.iter().map(|l| l.winding(c(1.0, 0.2), 1.0)).sum();
        assert_eq!(in_ring, 1);
    }

    #[test]
    fn diagonal_pinch_splits_into_two_loops() {
        let loops = trace_boundary(&set(&[(0, 0), (1, 1)]));
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|l| l.ccw && l.edge_count == 4));
        let mut cells = block(2);
        cells.remove(&(0, 0));
        cells.remove(&(1, 1));
        let loops = trace_boundary(&cells);
        // holes touching at a corner are traced as one clockwise loop
        assert_eq!(loops.len(), 2);
        let hole = loops.iter().find(|l| !l.ccw).unwrap();
        assert_eq!(hole.edge_count, 8);
        assert_eq!(hole.doubled_area(), -4);
    }

    fn point_example(b: C64) -> (GridDomain, SpectrumSet, SpectrumSet, Separation) {
        let sa = SpectrumSet::from_values(vec![c(0.0, 0.0)]);
        let sb = SpectrumSet::from_values(vec![b]);
        let sep = separation(&sa, &sb, 0.0).unwrap();
        (build_domain(&sa, &sep).unwrap(), sa, sb, sep)
    }

    #[test]
    fn unit_separation_example() {
        let (dom, sa, sb, sep) = point_example(c(1.0, 0.0));
        assert_eq!(sep.n0, 1);
        assert_eq!(dom.d1, set(&[(0, 0)]));
        assert_eq!(dom.d2, block(1));
        assert_eq!(dom.d3, block(2));
        assert_eq!(dom.loops.len(), 1);
        assert!((dom.boundary_length - 4.0).abs() < 1e-14);
        let rec = verify_domain(&dom, &sa, &sb, &sep).unwrap();
        let len = rec.check("boundary_length").unwrap();
        assert_eq!(len.bound, 48.0);
        let radius = rec.check("boundary_radius").unwrap();
        assert!((radius.value - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(radius.bound, 1.0);
        assert!(rec.warnings.is_empty());
    }

    #[test]
    fn scaled_separation_example() {
        let (dom, ..) = point_example(c(10.0, 0.0));
        assert_eq!(dom.d2, block(1));
        assert!((dom.boundary_length - 40.0).abs() < 1e-12);
    }

    #[test]
    fn separate_clusters_give_separate_loops() {
        let sa = SpectrumSet::from_values(vec![c(0.0, 0.0), c(100.0, 0.0)]);
        let sb = SpectrumSet::from_values(vec![c(50.0, 3.0)]);
        let sep = separation(&sa, &sb, 100.0).unwrap();
        let dom = build_domain(&sa, &sep).unwrap();
        assert_eq!(dom.loops.len(), 2);
        assert!(verify_domain(&dom, &sa, &sb, &sep).is_ok());
    }

    #[test]
    fn edge_aligned_eigenvalue_marks_both_cells() {
        // δ = 1, δ' = 1/3; λ = 1/6 lies on the edge between cells 0 and 1.
        let lam = c(1.0 / 6.0, 0.0);
        let sa = SpectrumSet::from_values(vec![lam]);
        let sb = SpectrumSet::from_values(vec![lam + c(1.0, 0.0)]);
        let sep = separation(&sa, &sb, lam.norm()).unwrap();
        let dom = build_domain(&sa, &sep).unwrap();
        assert_eq!(dom.d1, set(&[(0, 0), (1, 0)]));
        // μ sits exactly δ' from the contour: the gap check passes at equality.
        let rec = verify_domain(&dom, &sa, &sb, &sep).unwrap();
        let gap = rec.check("contour_gap_b").unwrap();
        assert!((gap.value - sep.delta_prime).abs() < 1e-14, "{gap:?}");
    }

    #[test]
    fn corner_point_marks_four_cells() {
        let side = 2.0;
        let cells = cells_containing(c(1.0, -1.0), side);
        assert_eq!(cells.len(), 4);
        assert_eq!(cells_containing(c(0.3, 0.1), side), vec![(0, 0)]);
    }

    #[test]
    fn verification_reports_violation() {
        let (mut dom, sa, sb, sep) = point_example(c(1.0, 0.0));
        dom.d1.clear();
        match verify_domain(&dom, &sa, &sb, &sep) {
            Err(Error::DomainInvalid { check, .. }) => assert_eq!(check, "spectrum_a_in_d1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_normal_skips_gap_checks() {
        let sa = SpectrumSet {
            values: vec![c(0.0, 0.0)],
            normality_residual: 1.0,
            is_normal: false,
        };
        let sb = SpectrumSet::from_values(vec![c(1.0, 0.0)]);
        let sep = separation(&sa, &sb, 0.0).unwrap();
        let dom = build_domain(&sa, &sep).unwrap();
        let rec = verify_domain(&dom, &sa, &sb, &sep).unwrap();
        assert!(rec.check("contour_gap_a").is_none());
        assert_eq!(rec.warnings.len(), 1);
    }

    fn arb_cells() -> impl Strategy<Value = BTreeSet<Cell>> {
        prop::collection::btree_set((-4i64..4, -4i64..4), 1..30)
    }

    fn arb_points() -> impl Strategy<Value = Vec<C64>> {
        prop::collection::vec((-3f64..3.0, -3f64..3.0), 1..8)
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
    }

    proptest! {
        #[test]
        fn boundary_edges_are_exposed_and_closed(cells in arb_cells()) {
            let loops = trace_boundary(&cells);
            let mut seen = BTreeSet::new();
            let mut exposed = 0usize;
            for &(k, kp) in &cells {
                for nb in [(k, kp - 1), (k + 1, kp), (k, kp + 1), (k - 1, kp)] {
                    if !cells.contains(&nb) { exposed += 1; }
                }
            }
            let total: usize = loops.iter().map(|l| l.edge_count).sum();
            prop_assert_eq!(total, exposed);
            for l in &loops {
                let edges = l.unit_edges();
                prop_assert_eq!(edges.len(), l.edge_count);
                prop_assert_eq!(edges.first().unwrap().0, edges.last().unwrap().1);
                for (from, to) in edges {
                    prop_assert!(seen.insert((from, to)), "edge used twice");
                    // The cell on the left of a directed unit edge is in the set,
                    // the one on the right is not.
                    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
                    let (left, right) = match (dx, dy) {
                        (1, 0) => ((from.0, from.1), (from.0, from.1 - 1)),
                        (-1, 0) => ((to.0, to.1 - 1), (to.0, to.1)),
                        (0, 1) => ((from.0 - 1, from.1), (from.0, from.1)),
                        (0, -1) => ((to.0, to.1), (to.0 - 1, to.1)),
                        _ => unreachable!(),
                    };
                    prop_assert!(cells.contains(&left));
                    prop_assert!(!cells.contains(&right));
                }
            }
            // winding number 1 inside every cell, 0 elsewhere
            for k in -6i64..6 {
                for kp in -6i64..6 {
                    let p = cell_center((k, kp), 1.0) + c(0.013, 0.021);
                    let w: i64 = loops.iter().map(|l| l.winding(p, 1.0)).sum();
                    prop_assert_eq!(w, cells.contains(&(k, kp)) as i64);
                }
            }
        }

        #[test]
        fn construction_invariants(a in arb_points(), b in arb_points(), t in 0.1f64..10.0) {
            let sa = SpectrumSet::from_values(a);
            let sb = SpectrumSet::from_values(b);
            let op = sa.max_modulus();
            if let Ok(sep) = separation(&sa, &sb, op) {
                let dom = build_domain(&sa, &sep).unwrap();
                prop_assert!(dom.d1.is_subset(&dom.d2) && dom.d2.is_subset(&dom.d3));
                prop_assert!((dom.boundary_length - dom.exposed_edges() as f64 * dom.side).abs() <= 1e-12 * dom.boundary_length);
                let rec = verify_domain(&dom, &sa, &sb, &sep);
                prop_assert!(rec.is_ok(), "{rec:?}");
                for z in &sa.values { prop_assert_eq!(dom.winding(*z), 1); }
                for z in &sb.values { prop_assert_eq!(dom.winding(*z), 0); }

                // scaling both spectra scales the geometry but keeps the cells
                let (ta, tb) = (sa.scaled(t), sb.scaled(t));
                if let Ok(tsep) = separation(&ta, &tb, op * t) {
                    let tdom = build_domain(&ta, &tsep).unwrap();
                    if tdom.d1 == dom.d1 {
                        prop_assert_eq!(&tdom.d2, &dom.d2);
                        prop_assert!((tdom.boundary_length - t * dom.boundary_length).abs() <= 1e-9 * tdom.boundary_length);
                    }
                }
            }
        }
    }
}
