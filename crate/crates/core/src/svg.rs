//! Self-contained SVG diagnostic: `σ(A)` as dots, `σ(B)` as crosses,
//! `D₂` cells filled and boundary loops stroked.

use std::fmt::Write;

use crate::domain::{cell_center, GridDomain};
use crate::matrix::C64;
use crate::spectra::SpectrumSet;

pub const CANVAS: f64 = 640.0;

struct Frame {
    min_re: f64,
    max_im: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, z: C64) -> (f64, f64) {
        (
            (z.re - self.min_re) * self.scale,
            (self.max_im - z.im) * self.scale,
        )
    }
}

fn frame(dom: &GridDomain, sa: &SpectrumSet, sb: &SpectrumSet, margin: f64) -> Frame {
    let half = dom.side / 2.0;
    let mut pts: Vec<C64> = sa.values.iter().chain(&sb.values).copied().collect();
    for &c in &dom.d2 {
        let z = cell_center(c, dom.side);
        pts.push(z + C64::new(half, half));
        pts.push(z - C64::new(half, half));
    }
    let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for z in &pts {
        lo_re = lo_re.min(z.re);
        hi_re = hi_re.max(z.re);
        lo_im = lo_im.min(z.im);
        hi_im = hi_im.max(z.im);
    }
    if pts.is_empty() {
        (lo_re, hi_re, lo_im, hi_im) = (-1.0, 1.0, -1.0, 1.0);
    }
    let margin = if margin > 0.0 && margin.is_finite() {
        margin
    } else {
        1.0
    };
    lo_re -= margin;
    hi_re += margin;
    lo_im -= margin;
    hi_im += margin;
    let extent = (hi_re - lo_re).max(hi_im - lo_im);
    // centre the shorter axis
    let pad_re = (extent - (hi_re - lo_re)) / 2.0;
    let pad_im = (extent - (hi_im - lo_im)) / 2.0;
    Frame {
        min_re: lo_re - pad_re,
        max_im: hi_im + pad_im,
        scale: CANVAS / extent,
    }
}

/// Renders the diagnostic; `delta` sets the margin around the picture.
pub fn render_svg(dom: &GridDomain, sa: &SpectrumSet, sb: &SpectrumSet, delta: f64) -> String {
    let f = frame(dom, sa, sb, delta);
    let cell = dom.side * f.scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );

    let _ = writeln!(out, r##"<g id="d2" fill="#cfe3f7" stroke="none">"##);
    for &c in &dom.d2 {
        let z = cell_center(c, dom.side) + C64::new(-dom.side / 2.0, dom.side / 2.0);
        let (x, y) = f.map(z);
        let _ = writeln!(
            out,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{cell:.3}" height="{cell:.3}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r##"<g id="boundary" fill="none" stroke="#1f4e96" stroke-width="1.5">"##
    );
    for l in &dom.loops {
        let pts: Vec<String> = l
            .vertices(dom.side)
            .into_iter()
            .map(|z| {
                let (x, y) = f.map(z);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g id="spectrum-a" fill="#111111">"##);
    for &z in &sa.values {
        let (x, y) = f.map(z);
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r##"<g id="spectrum-b" stroke="#c0392b" stroke-width="1.5">"##
    );
    for &z in &sb.values {
        let (x, y) = f.map(z);
        let _ = writeln!(
            out,
            r#"<path d="M{:.3},{:.3}L{:.3},{:.3}M{:.3},{:.3}L{:.3},{:.3}"/>"#,
            x - 4.0,
            y - 4.0,
            x + 4.0,
            y + 4.0,
            x - 4.0,
            y + 4.0,
            x + 4.0,
            y - 4.0
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
