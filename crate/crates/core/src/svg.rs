//! SVG pictures. In ℍ² the polygon is drawn with its geodesic arcs; in ℍ³
//! only the traces of the faces on the boundary plane are drawn.

use std::fmt::Write;

use num_complex::Complex64;

use crate::domain::{FundamentalPolyhedron, VertexLocation};
use crate::moebius::Model;

const SIZE: f64 = 640.0;

struct View {
    x0: f64,
    y0: f64,
    scale: f64,
    top: f64,
}

impl View {
    fn fit(xs: &[f64], ys: &[f64]) -> View {
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
        let (mut x0, mut x1) = (fold(xs, f64::min, f64::INFINITY), fold(xs, f64::max, f64::NEG_INFINITY));
        let (mut y0, mut y1) = (fold(ys, f64::min, f64::INFINITY), fold(ys, f64::max, f64::NEG_INFINITY));
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-6);
        let pad = 0.15 * span;
        let scale = SIZE / (span + 2.0 * pad);
        View { x0: x0 - pad, y0: y0 - pad, scale, top: y1 + pad }
    }

    fn pt(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) * self.scale, (self.top - y) * self.scale)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the domain. Infinite edges are cut at the top of the picture.
pub fn render(poly: &FundamentalPolyhedron) -> String {
    match poly.model {
        Model::H2 => render_h2(poly),
        Model::H3 => render_h3(poly),
    }
}

fn h2_coords(loc: &VertexLocation) -> Option<(f64, f64)> {
    match loc {
        VertexLocation::Finite(p) => Some((p.z.re, p.r)),
        VertexLocation::Ideal(z) => Some((z.re, 0.0)),
        _ => None,
    }
}

fn render_h2(poly: &FundamentalPolyhedron) -> String {
    let pts: Vec<(f64, f64)> = poly.vertices.iter().filter_map(|v| h2_coords(&v.location)).collect();
    let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).chain([0.0]).collect();
    let ymax = ys.iter().copied().fold(1.0, f64::max);
    ys.push(ymax * 1.6);
    for f in &poly.faces {
        if let Some((c, r)) = f.halfspace.surface().sphere_f64() {
            xs.extend([c.re - r, c.re + r]);
        }
    }
    let view = View::fit(&xs, &ys);
    let mut out = String::new();
    header(&mut out, &poly.origin);
    let (ax, ay) = view.pt(view.x0, 0.0);
    let _ = writeln!(
        out,
        r##"<line x1="{ax:.3}" y1="{ay:.3}" x2="{SIZE}" y2="{ay:.3}" stroke="#888" stroke-width="1"/>"##
    );
    for (i, f) in poly.faces.iter().enumerate() {
        let ends: Vec<Option<(f64, f64)>> = f.vertices.iter().map(|&k| h2_coords(&poly.vertices[k].location)).collect();
        let surface = f.halfspace.surface();
        let (p, q) = match ends.as_slice() {
            [Some(p), Some(q)] => (*p, *q),
            [Some(p), None] | [None, Some(p)] => (*p, (p.0, view.top)),
            _ => continue,
        };
        let (px, py) = view.pt(p.0, p.1);
        let (qx, qy) = view.pt(q.0, q.1);
        let d = match surface.sphere_f64() {
            Some((_, r)) => {
                let rr = r * view.scale;
                let sweep = if p.0 < q.0 { 1 } else { 0 };
                format!("M {px:.3} {py:.3} A {rr:.3} {rr:.3} 0 0 {sweep} {qx:.3} {qy:.3}")
            }
            None => format!("M {px:.3} {py:.3} L {qx:.3} {qy:.3}"),
        };
        let _ = writeln!(
            out,
            r##"<path id="face{i}" d="{d}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}

fn render_h3(poly: &FundamentalPolyhedron) -> String {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for v in &poly.vertices {
        let z = match &v.location {
            VertexLocation::Finite(p) => p.z,
            VertexLocation::Ideal(z) => *z,
            _ => continue,
        };
        xs.push(z.re);
        ys.push(z.im);
    }
    let view = View::fit(&xs, &ys);
    let mut out = String::new();
    header(&mut out, &poly.origin);
    let (w0, w1) = (view.x0, view.x0 + SIZE / view.scale);
    let (h0, h1) = (view.y0, view.top);
    for (i, f) in poly.faces.iter().enumerate() {
        let s = f.halfspace.surface();
        if let Some((c, r)) = s.sphere_f64() {
            let (cx, cy) = view.pt(c.re, c.im);
            let rr = r * view.scale;
            let _ = writeln!(
                out,
                r##"<circle id="face{i}" cx="{cx:.3}" cy="{cy:.3}" r="{rr:.3}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##
            );
        } else if let Some((n, off)) = s.unit_plane() {
            if let Some((a, b)) = clip_line(n, off, (w0, w1), (h0, h1)) {
                let (ax, ay) = view.pt(a.re, a.im);
                let (bx, by) = view.pt(b.re, b.im);
                let _ = writeln!(
                    out,
                    r##"<line id="face{i}" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" stroke="#b03a2e" stroke-width="1.5"/>"##
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The segment of `Re(n̄ z) = off` inside the box.
fn clip_line(n: Complex64, off: f64, xr: (f64, f64), yr: (f64, f64)) -> Option<(Complex64, Complex64)> {
    let base = n * off;
    let dir = Complex64::new(-n.im, n.re);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (b, d, (m0, m1)) in [(base.re, dir.re, xr), (base.im, dir.im, yr)] {
        if d.abs() < 1e-15 {
            if b < m0 || b > m1 {
                return None;
            }
            continue;
        }
        let (t0, t1) = ((m0 - b) / d, (m1 - b) / d);
        lo = lo.max(t0.min(t1));
        hi = hi.min(t0.max(t1));
    }
    (lo < hi).then(|| (base + dir * lo, base + dir * hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{ford_domain, GroupInput, ReductionOptions};

    #[test]
    fn modular_triangle_has_three_edges() {
        let p = ford_domain(&GroupInput::psl2z(), &ReductionOptions::default()).unwrap();
        let svg = render(&p);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<path").count(), 3);
        assert_eq!(svg.matches(" A ").count(), 1);
    }

    #[test]
    fn clipping() {
        let (a, b) = clip_line(Complex64::new(1.0, 0.0), 0.5, (-1.0, 1.0), (-2.0, 2.0)).unwrap();
        assert!((a.re - 0.5).abs() < 1e-12 && (b.re - 0.5).abs() < 1e-12);
        assert!(((a.im - b.im).abs() - 4.0).abs() < 1e-12);
        assert!(clip_line(Complex64::new(1.0, 0.0), 3.0, (-1.0, 1.0), (-1.0, 1.0)).is_none());
    }
}
