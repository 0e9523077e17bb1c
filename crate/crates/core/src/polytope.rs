//! Convex polytopes in the projective (Klein) model, by incremental double
//! description.
//!
//! A point of ℍⁿ is stored by its Klein coordinates `y ∈ ℝⁿ`, `|y| < 1`; ideal
//! points have `|y| = 1` and the cusp ∞ sits at `(1, 0, 0)`. Every geodesic
//! half-space becomes a Euclidean half-space `c₀ + c·y ≥ 0`, so a hyperbolic
//! polyhedron is an ordinary polytope clipped to the ball. Computations start
//! from the box `[-2, 2]ⁿ`; a polyhedron has finite volume exactly when all
//! vertices end up in the closed unit ball.

use num_complex::Complex64;

use crate::hyperplanes::HermitianForm;
use crate::moebius::{MoebiusElement, PointUH};

/// Half-space `c0 + c·y ≥ 0` with `|c| = 1`.
#[derive(Clone, Copy, Debug)]
pub struct Cut {
    pub c0: f64,
    pub c: [f64; 3],
}

impl Cut {
    pub fn from_form(form: &HermitianForm) -> Cut {
        let n = form.lorentz_coefficients();
        Cut::normalized(n[0], [n[1], n[2], n[3]])
    }

    pub(crate) fn normalized(c0: f64, c: [f64; 3]) -> Cut {
        let len = dot(&c, &c).sqrt();
        Cut { c0: c0 / len, c: [c[0] / len, c[1] / len, c[2] / len] }
    }

    pub fn eval(&self, y: &[f64; 3]) -> f64 {
        self.c0 + dot(&self.c, y)
    }
}

/// A polytope vertex with the cuts it lies on.
#[derive(Clone, Debug)]
pub struct Vertex {
    pub y: [f64; 3],
    pub inc: Vec<usize>,
}

impl Vertex {
    pub fn norm(&self) -> f64 {
        dot(&self.y, &self.y).sqrt()
    }
}

/// Bounded polytope in Klein coordinates.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub cuts: Vec<Cut>,
    pub vertices: Vec<Vertex>,
    /// Number of leading bounding-box cuts.
    pub n_box: usize,
    eps: f64,
}

pub(crate) const BOX: f64 = 2.0;
pub(crate) const EPS: f64 = 1e-9;

impl Polytope {
    pub fn new(dim: usize) -> Polytope {
        assert!(dim == 2 || dim == 3);
        let mut cuts = Vec::new();
        for k in 0..dim {
            let mut c = [0.0; 3];
            c[k] = 1.0;
            cuts.push(Cut { c0: BOX, c });
            c[k] = -1.0;
            cuts.push(Cut { c0: BOX, c });
        }
        let mut vertices = Vec::new();
        for mask in 0..(1usize << dim) {
            let mut y = [0.0; 3];
            let mut inc = Vec::new();
            for k in 0..dim {
                if mask & (1 << k) != 0 {
                    y[k] = BOX;
                    inc.push(2 * k + 1);
                } else {
                    y[k] = -BOX;
                    inc.push(2 * k);
                }
            }
            inc.sort_unstable();
            vertices.push(Vertex { y, inc });
        }
        Polytope { dim, n_box: cuts.len(), cuts, vertices, eps: EPS }
    }

    /// Intersects with `cut`. Returns the new cut's index when it removed part
    /// of the polytope, `None` when it was redundant.
    pub fn add(&mut self, cut: Cut) -> Option<usize> {
        let vals: Vec<f64> = self.vertices.iter().map(|v| cut.eval(&v.y)).collect();
        if vals.iter().all(|&x| x >= -self.eps) {
            return None;
        }
        let id = self.cuts.len();
        self.cuts.push(cut);
        let neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] < -self.eps).collect();
        let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > self.eps).collect();
        let mut fresh: Vec<[f64; 3]> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                if !self.adjacent(p, n) {
                    continue;
                }
                let t = vals[p] / (vals[p] - vals[n]);
                let (a, b) = (&self.vertices[p].y, &self.vertices[n].y);
                fresh.push([
                    a[0] + t * (b[0] - a[0]),
                    a[1] + t * (b[1] - a[1]),
                    a[2] + t * (b[2] - a[2]),
                ]);
            }
        }
        let mut kept: Vec<Vertex> = Vec::with_capacity(self.vertices.len());
        for (i, mut v) in std::mem::take(&mut self.vertices).into_iter().enumerate() {
            if vals[i] < -self.eps {
                continue;
            }
            if vals[i] <= self.eps {
                v.inc.push(id);
            }
            kept.push(v);
        }
        for y in fresh {
            if kept.iter().any(|v| dist_sq(&v.y, &y) < self.eps * self.eps) {
                continue;
            }
            let inc = (0..self.cuts.len()).filter(|&k| self.cuts[k].eval(&y).abs() <= self.eps).collect();
            kept.push(Vertex { y, inc });
        }
        self.vertices = kept;
        Some(id)
    }

    fn adjacent(&self, p: usize, n: usize) -> bool {
        let common = intersect(&self.vertices[p].inc, &self.vertices[n].inc);
        if common.len() + 1 < self.dim {
            return false;
        }
        if rank(common.iter().map(|&k| self.cuts[k].c), self.dim) + 1 < self.dim {
            return false;
        }
        !self
            .vertices
            .iter()
            .enumerate()
            .any(|(w, v)| w != p && w != n && is_subset(&common, &v.inc))
    }

    /// Vertex indices on cut `k`.
    pub fn vertices_on(&self, k: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].inc.binary_search(&k).is_ok()).collect()
    }

    /// Whether cut `k` supports a facet (its vertices span a hyperplane).
    pub fn is_facet(&self, k: usize) -> bool {
        let vs = self.vertices_on(k);
        affine_rank(vs.iter().map(|&i| self.vertices[i].y), self.dim) + 1 >= self.dim
    }

    /// Indices of all facet-supporting cuts outside the bounding box.
    pub fn facets(&self) -> Vec<usize> {
        (self.n_box..self.cuts.len()).filter(|&k| self.is_facet(k)).collect()
    }

    /// Whether the polytope lies in the closed unit ball (finite volume).
    pub fn in_closed_ball(&self, tol: f64) -> bool {
        self.vertices.iter().all(|v| v.norm() <= 1.0 + tol)
    }

    /// Vertex indices shared by facets `i` and `j` when they meet in a ridge.
    pub fn ridge(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let common: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| {
                let inc = &self.vertices[v].inc;
                inc.binary_search(&i).is_ok() && inc.binary_search(&j).is_ok()
            })
            .collect();
        let r = affine_rank(common.iter().map(|&v| self.vertices[v].y), self.dim);
        (!common.is_empty() && r + 2 >= self.dim).then_some(common)
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dist_sq(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Rank of a set of vectors in the first `dim` coordinates.
fn rank(vs: impl Iterator<Item = [f64; 3]>, dim: usize) -> usize {
    let mut basis: Vec<[f64; 3]> = Vec::new();
    for v in vs {
        let mut w = v;
        for b in &basis {
            let p = dot(&w, b);
            for k in 0..dim {
                w[k] -= p * b[k];
            }
        }
        let len = dot(&w, &w).sqrt();
        if len > 1e-7 {
            basis.push([w[0] / len, w[1] / len, w[2] / len]);
            if basis.len() == dim {
                break;
            }
        }
    }
    basis.len()
}

/// Affine rank of a point set (0 for a single point, −1 folded into 0 for none).
fn affine_rank(ps: impl Iterator<Item = [f64; 3]>, dim: usize) -> usize {
    let ps: Vec<[f64; 3]> = ps.collect();
    let Some(first) = ps.first() else { return 0 };
    if ps.len() == 1 {
        return 0;
    }
    let diffs = ps[1..].iter().map(|p| [p[0] - first[0], p[1] - first[1], p[2] - first[2]]);
    rank(diffs, dim)
}

/// Klein coordinates of a point `z + r·j` (ideal when `r = 0`).
pub fn klein_from_uh(z: Complex64, r: f64) -> [f64; 3] {
    let s = z.norm_sqr() + r * r;
    [(s - 1.0) / (s + 1.0), 2.0 * z.re / (s + 1.0), 2.0 * z.im / (s + 1.0)]
}

/// Where a Klein point sits in the upper half-space model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UhLocation {
    Interior(PointUH),
    Ideal(Complex64),
    Infinity,
}

/// Upper half-space location of a Klein point; points within `tol` of the unit
/// sphere are treated as ideal.
pub fn uh_from_klein(y: &[f64; 3], tol: f64) -> UhLocation {
    let n2 = dot(y, y);
    let den = 1.0 - y[0];
    if den.abs() < 1e-12 {
        return UhLocation::Infinity;
    }
    let z = Complex64::new(y[1] / den, y[2] / den);
    if n2 >= 1.0 - tol {
        return UhLocation::Ideal(z);
    }
    UhLocation::Interior(PointUH { z, r: (1.0 - n2).sqrt() / den })
}

/// Image of a Klein point under `g`, via the action `H ↦ g·H·g*` on the
/// Hermitian matrix of the point.
pub fn klein_map(g: &MoebiusElement, y: &[f64; 3]) -> [f64; 3] {
    let [a, b, c, d] = g.to_c64();
    let h11 = Complex64::new(1.0 + y[0], 0.0);
    let h22 = Complex64::new(1.0 - y[0], 0.0);
    let h12 = Complex64::new(y[1], y[2]);
    let h21 = h12.conj();
    // g·H
    let m11 = a * h11 + b * h21;
    let m12 = a * h12 + b * h22;
    let m21 = c * h11 + d * h21;
    let m22 = c * h12 + d * h22;
    // (g·H)·g*
    let n11 = (m11 * a.conj() + m12 * b.conj()).re;
    let n12 = m11 * c.conj() + m12 * d.conj();
    let n22 = (m21 * c.conj() + m22 * d.conj()).re;
    let x0 = (n11 + n22) / 2.0;
    let x1 = (n11 - n22) / 2.0;
    [x1 / x0, n12.re / x0, n12.im / x0]
}

/// Inward Minkowski normal `N` of a cut, signature `(−,+,+,+)`, so that the
/// cut reads `⟨N, (1, y)⟩ ≥ 0`.
pub(crate) fn minkowski_normal(cut: &Cut) -> [f64; 4] {
    [-cut.c0, cut.c[0], cut.c[1], cut.c[2]]
}

fn minkowski(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Interior dihedral angle between two cuts meeting inside ℍⁿ.
pub fn dihedral_angle(p: &Cut, q: &Cut) -> f64 {
    let (n1, n2) = (minkowski_normal(p), minkowski_normal(q));
    let cos = -minkowski(&n1, &n2) / (minkowski(&n1, &n1) * minkowski(&n2, &n2)).sqrt();
    cos.clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperplanes::{dirichlet_form, isometric_exterior};
    use crate::moebius::Model;

    #[test]
    fn klein_round_trip() {
        let y = klein_from_uh(Complex64::new(0.3, -0.2), 0.7);
        match uh_from_klein(&y, 1e-12) {
            UhLocation::Interior(p) => {
                assert!((p.z - Complex64::new(0.3, -0.2)).norm() < 1e-14);
                assert!((p.r - 0.7).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(uh_from_klein(&[1.0, 0.0, 0.0], 1e-9), UhLocation::Infinity);
    }

    #[test]
    fn klein_map_matches_action() {
        let g = MoebiusElement::int(Model::H3, 2, 3, 1, 2).unwrap();
        let p = PointUH::h3(0.2, 0.5, 1.3).unwrap();
        let q = g.act(&p);
        let y = klein_map(&g, &klein_from_uh(p.z, p.r));
        let want = klein_from_uh(q.z, q.r);
        assert!(dist_sq(&y, &want) < 1e-24);
    }

    #[test]
    fn modular_triangle() {
        let mut poly = Polytope::new(2);
        for g in [(1, 1, 0, 1), (1, -1, 0, 1)] {
            let g = MoebiusElement::int(Model::H2, g.0, g.1, g.2, g.3).unwrap();
            assert!(poly.add(Cut::from_form(&dirichlet_form(&g))).is_some());
        }
        assert!(!poly.in_closed_ball(1e-9));
        let s = MoebiusElement::int(Model::H2, 0, 1, -1, 0).unwrap();
        let k = poly.add(Cut::from_form(isometric_exterior(&s).unwrap().form())).unwrap();
        assert!(poly.in_closed_ball(1e-9));
        assert_eq!(poly.vertices.len(), 3);
        let facets = poly.facets();
        assert_eq!(facets.len(), 3);
        let ridge = poly.ridge(facets[0], k).unwrap();
        let UhLocation::Interior(p) = uh_from_klein(&poly.vertices[ridge[0]].y, 1e-9) else {
            panic!()
        };
        assert!((p.r - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let angle = dihedral_angle(&poly.cuts[facets[0]], &poly.cuts[k]);
        assert!((angle - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn redundant_cut_is_skipped() {
        let mut poly = Polytope::new(3);
        let s = MoebiusElement::int(Model::H3, 0, 1, -1, 0).unwrap();
        let h = isometric_exterior(&s).unwrap();
        assert!(poly.add(Cut::from_form(h.form())).is_some());
        assert!(poly.add(Cut::from_form(h.form())).is_none());
    }
}
