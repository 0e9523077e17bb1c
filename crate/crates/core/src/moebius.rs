//! Möbius transformations of the upper half-plane ℍ² and upper half-space ℍ³.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarKind};

/// Which hyperbolic model an element acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    H2,
    H3,
}

impl Model {
    /// The base point `P₀`: `i` in ℍ², `j` in ℍ³.
    pub fn center(self) -> PointUH {
        PointUH::new(Complex64::new(0.0, 0.0), 1.0).unwrap()
    }

    /// Dimension of the hyperbolic space.
    pub fn dim(self) -> usize {
        match self {
            Model::H2 => 2,
            Model::H3 => 3,
        }
    }
}

/// A point `z + r·j` of ℍ³ (or `x + r·i` of ℍ², with `z` real).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointUH {
    pub z: Complex64,
    pub r: f64,
}

impl PointUH {
    pub fn new(z: Complex64, r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::NonPositiveHeight(r));
        }
        Ok(PointUH { z, r })
    }

    /// Point of ℍ² at `x + r·i`.
    pub fn h2(x: f64, r: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0), r)
    }

    /// Point of ℍ³ at `(x + y·i) + r·j`.
    pub fn h3(x: f64, y: f64, r: f64) -> Result<Self> {
        Self::new(Complex64::new(x, y), r)
    }

    /// Squared Euclidean distance in the model.
    pub fn euclid_dist_sq(&self, other: &PointUH) -> f64 {
        (self.z - other.z).norm_sqr() + (self.r - other.r).powi(2)
    }
}

/// A boundary point of the model: a finite point of ℂ (or ℝ) or ∞.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryPoint {
    Finite(Scalar),
    Infinity,
}

/// A 2×2 unimodular matrix taken modulo sign.
///
/// Entries are stored in canonical sign: the first nonzero entry in the order
/// `(c, d, a, b)` has positive real part, or zero real part and positive
/// imaginary part. Two elements are equal in PSL₂ iff their stored entries are.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusElement {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub model: Model,
}

const DET_TOL: f64 = 1e-12;

impl MoebiusElement {
    /// Validating constructor.
    pub fn new(model: Model, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        let kind = a.kind().join(b.kind())?.join(c.kind())?.join(d.kind())?;
        if model == Model::H2 && ![&a, &b, &c, &d].iter().all(|x| x.is_real()) {
            return Err(Error::NotReal);
        }
        let [a, b, c, d] = [a, b, c, d].map(|x| x.promote(kind));
        let det = &(&a * &d) - &(&b * &c);
        let unimodular = if kind.is_exact() {
            det == Scalar::one()
        } else {
            (det.to_c64() - 1.0).norm() <= DET_TOL
        };
        if !unimodular {
            return Err(Error::NotUnimodular);
        }
        Ok(Self::from_entries_unchecked(model, a, b, c, d))
    }

    /// Builds from entries already known to be unimodular and kind-compatible.
    pub(crate) fn from_entries_unchecked(
        model: Model,
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
    ) -> Self {
        let mut g = MoebiusElement { a, b, c, d, model };
        g.canonicalize();
        g
    }

    /// Shorthand for exact integer matrices.
    pub fn int(model: Model, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(model, a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity(model: Model) -> Self {
        Self::from_entries_unchecked(model, Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    /// The translation `z ↦ z + w`.
    pub fn translation(model: Model, w: Scalar) -> Result<Self> {
        Self::new(model, Scalar::one(), w, Scalar::zero(), Scalar::one())
    }

    fn canonicalize(&mut self) {
        let negate = [&self.c, &self.d, &self.a, &self.b]
            .into_iter()
            .find(|x| !x.is_zero())
            .map(|x| match x.re_sign() {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => x.im_sign() == Ordering::Less,
            })
            .unwrap_or(false);
        if negate {
            self.a = -&self.a;
            self.b = -&self.b;
            self.c = -&self.c;
            self.d = -&self.d;
        }
    }

    pub fn kind(&self) -> ScalarKind {
        // entries are promoted to a common kind on construction
        self.a
            .kind()
            .join(self.b.kind())
            .and_then(|k| k.join(self.c.kind()))
            .and_then(|k| k.join(self.d.kind()))
            .expect("entries share a kind")
    }

    pub fn is_exact(&self) -> bool {
        self.kind().is_exact()
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    fn check_compatible(&self, other: &MoebiusElement) -> Result<()> {
        if self.model != other.model {
            return Err(Error::ModelMismatch);
        }
        self.kind().join(other.kind())?;
        Ok(())
    }

    /// Matrix product `self · other`, renormalized to canonical sign.
    pub fn compose(&self, other: &MoebiusElement) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, o: &MoebiusElement) -> Self {
        let a = &(&self.a * &o.a) + &(&self.b * &o.c);
        let b = &(&self.a * &o.b) + &(&self.b * &o.d);
        let c = &(&self.c * &o.a) + &(&self.d * &o.c);
        let d = &(&self.c * &o.b) + &(&self.d * &o.d);
        Self::from_entries_unchecked(self.model, a, b, c, d)
    }

    /// The adjugate `(d, −b; −c, a)`.
    pub fn inverse(&self) -> Self {
        Self::from_entries_unchecked(
            self.model,
            self.d.clone(),
            -&self.b,
            -&self.c,
            self.a.clone(),
        )
    }

    /// `gⁿ` for `n ≥ 0`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.model);
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `g · h · g⁻¹`.
    pub fn conjugate(&self, h: &MoebiusElement) -> Result<Self> {
        Ok(self.compose(h)?.compose(&self.inverse())?)
    }

    pub fn to_float(&self) -> Self {
        Self::from_entries_unchecked(
            self.model,
            self.a.to_float(),
            self.b.to_float(),
            self.c.to_float(),
            self.d.to_float(),
        )
    }

    /// Complex entries `[a, b, c, d]`.
    pub fn to_c64(&self) -> [Complex64; 4] {
        [self.a.to_c64(), self.b.to_c64(), self.c.to_c64(), self.d.to_c64()]
    }

    pub fn trace(&self) -> Scalar {
        &self.a + &self.d
    }

    /// Frobenius norm squared `|a|² + |b|² + |c|² + |d|²`.
    pub fn norm_sq(&self) -> Scalar {
        let [a, b, c, d] = self.entries().map(|x| x.abs_sq());
        a + b + c + d
    }

    pub fn norm_sq_f64(&self) -> f64 {
        self.to_c64().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_identity(&self) -> bool {
        let id = Self::identity(self.model).promote_like(self);
        if self.is_exact() {
            *self == id
        } else {
            self.approx_eq(&id, 1e-9)
        }
    }

    fn promote_like(self, other: &MoebiusElement) -> Self {
        let k = other.kind();
        Self::from_entries_unchecked(
            self.model,
            self.a.promote(k),
            self.b.promote(k),
            self.c.promote(k),
            self.d.promote(k),
        )
    }

    /// Equality in PSL₂: exact for exact entries, entrywise within `tol` otherwise.
    pub fn approx_eq(&self, other: &MoebiusElement, tol: f64) -> bool {
        self.model == other.model
            && self
                .entries()
                .iter()
                .zip(other.entries())
                .all(|(x, y)| x.approx_eq(y, tol))
    }

    /// Whether `γ` stabilizes `P₀`, decided by `‖γ‖² = 2` on the unimodular lift.
    pub fn fixes_center(&self) -> bool {
        let n = self.norm_sq();
        if n.is_exact() {
            n == Scalar::int(2)
        } else {
            (n.to_c64().re - 2.0).abs() < 1e-9
        }
    }

    /// Whether `γ` fixes ∞ (`c = 0`).
    pub fn fixes_infinity(&self) -> bool {
        self.c.is_zero()
    }

    /// The action on a point of the model.
    pub fn act(&self, p: &PointUH) -> PointUH {
        let [a, b, c, d] = self.to_c64();
        let z = p.z;
        let r2 = p.r * p.r;
        let czd = c * z + d;
        let den = czd.norm_sqr() + c.norm_sqr() * r2;
        let num = (a * z + b) * (c.conj() * z.conj() + d.conj()) + a * c.conj() * r2;
        let mut out = PointUH { z: num / den, r: p.r / den };
        if self.model == Model::H2 {
            out.z.im = 0.0;
        }
        out
    }

    /// The action on the boundary `ℂ ∪ {∞}` (exact when entries and point are exact).
    pub fn act_boundary(&self, p: &BoundaryPoint) -> BoundaryPoint {
        match p {
            BoundaryPoint::Infinity => {
                if self.c.is_zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(&self.a / &self.c)
                }
            }
            BoundaryPoint::Finite(z) => {
                let z = if self.is_exact() && z.is_exact() {
                    z.clone()
                } else {
                    z.to_float()
                };
                let g = if z.is_exact() { self.clone() } else { self.to_float() };
                let den = &(&g.c * &z) + &g.d;
                let num = &(&g.a * &z) + &g.b;
                if den.is_zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(&num / &den)
                }
            }
        }
    }

    /// Floating action on a boundary point (`None` is ∞).
    pub fn act_boundary_f64(&self, z: Option<Complex64>) -> Option<Complex64> {
        let [a, b, c, d] = self.to_c64();
        match z {
            None => (c.norm() > 1e-300).then(|| a / c),
            Some(z) => {
                let den = c * z + d;
                (den.norm() > 1e-300).then(|| (a * z + b) / den)
            }
        }
    }

    /// Stable textual key of the canonical entries.
    pub fn key(&self) -> String {
        format!("({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for MoebiusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Hyperbolic distance `arccosh(1 + |P−Q|²/(2 r_P r_Q))`.
pub fn hyperbolic_distance(p: &PointUH, q: &PointUH) -> f64 {
    // 2·asinh(dE / (2√(r r'))) is the same quantity, but accurate for nearby points
    let de = p.euclid_dist_sq(q).sqrt();
    2.0 * (de / (2.0 * (p.r * q.r).sqrt())).asinh()
}

/// Deterministic order on elements: by norm, then by textual key.
pub fn canonical_cmp(x: &MoebiusElement, y: &MoebiusElement) -> Ordering {
    x.norm_sq_f64()
        .partial_cmp(&y.norm_sq_f64())
        .unwrap_or(Ordering::Equal)
        .then_with(|| x.key().cmp(&y.key()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn h3(a: i64, b: i64, c: i64, d: i64) -> MoebiusElement {
        MoebiusElement::int(Model::H3, a, b, c, d).unwrap()
    }

    #[test]
    fn compose_examples() {
        let g = h3(2, 3, 1, 2);
        assert_eq!(g.compose(&MoebiusElement::identity(Model::H3)).unwrap(), g);
        let s = h3(0, 1, -1, 0);
        assert!(s.compose(&s).unwrap().is_identity());
        let t = h3(1, 1, 0, 1);
        assert_eq!(t.compose(&t).unwrap(), h3(1, 2, 0, 1));
    }

    #[test]
    fn compose_rejects_mismatches() {
        let g = h3(1, 1, 0, 1);
        let h = MoebiusElement::int(Model::H2, 1, 1, 0, 1).unwrap();
        assert!(matches!(g.compose(&h), Err(Error::ModelMismatch)));
        let t2 = MoebiusElement::translation(Model::H3, Scalar::sqrt_neg(2)).unwrap();
        let t3 = MoebiusElement::translation(Model::H3, Scalar::sqrt_neg(3)).unwrap();
        assert!(matches!(t2.compose(&t3), Err(Error::DiscriminantMismatch(2, 3))));
        assert!(matches!(t2.compose(&g.to_float()), Err(Error::ScalarKindMismatch)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(h3(1, 1, 0, 1).inverse(), h3(1, -1, 0, 1));
        assert_eq!(h3(0, 1, -1, 0).inverse(), h3(0, 1, -1, 0));
        assert_eq!(h3(2, 3, 1, 2).inverse(), h3(2, -3, -1, 2));
    }

    #[test]
    fn canonical_sign_identifies_negatives() {
        let g = h3(2, 3, 1, 2);
        let neg = MoebiusElement::int(Model::H3, -2, -3, -1, -2).unwrap();
        assert_eq!(g, neg);
        assert_eq!(g.c, Scalar::int(1));
        let q = MoebiusElement::new(
            Model::H3,
            Scalar::zero(),
            Scalar::quad(rat(0), rat(1), 1),
            Scalar::quad(rat(0), rat(1), 1),
            Scalar::zero(),
        )
        .unwrap();
        // c = i: real part zero, positive imaginary part is kept
        assert_eq!(q.c.im_sign(), Ordering::Greater);
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(MoebiusElement::int(Model::H2, 1, 1, 1, 1), Err(Error::NotUnimodular)));
        let r = MoebiusElement::new(
            Model::H2,
            Scalar::one(),
            Scalar::sqrt_neg(2),
            Scalar::zero(),
            Scalar::one(),
        );
        assert!(matches!(r, Err(Error::NotReal)));
        let half = MoebiusElement::new(
            Model::H2,
            Scalar::int(2),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::Rational(ratio(1, 2)),
        );
        assert!(half.is_ok());
    }

    #[test]
    fn act_examples() {
        let p = PointUH::h3(0.3, -0.2, 0.7).unwrap();
        assert_eq!(MoebiusElement::identity(Model::H3).act(&p), p);
        let q = h3(0, 1, -1, 0).act(&PointUH::h3(0.0, 0.0, 2.0).unwrap());
        assert!(q.z.norm() < 1e-15 && (q.r - 0.5).abs() < 1e-15);
        let w = Scalar::quad(rat(1), rat(2), 2);
        let t = MoebiusElement::translation(Model::H3, w.clone()).unwrap();
        let moved = t.act(&p);
        assert!((moved.z - (p.z + w.to_c64())).norm() < 1e-14);
        assert!((moved.r - p.r).abs() < 1e-15);
    }

    #[test]
    fn act_boundary_examples() {
        assert_eq!(h3(1, 1, 0, 1).act_boundary(&BoundaryPoint::Infinity), BoundaryPoint::Infinity);
        assert_eq!(
            h3(0, 1, -1, 0).act_boundary(&BoundaryPoint::Finite(Scalar::zero())),
            BoundaryPoint::Infinity
        );
        assert_eq!(
            h3(2, 3, 1, 2).act_boundary(&BoundaryPoint::Finite(Scalar::one())),
            BoundaryPoint::Finite(Scalar::frac(5, 3))
        );
        assert_eq!(
            h3(2, 3, 1, 2).act_boundary(&BoundaryPoint::Infinity),
            BoundaryPoint::Finite(Scalar::int(2))
        );
    }

    #[test]
    fn distance_examples() {
        let j = PointUH::h3(0.0, 0.0, 1.0).unwrap();
        let j2 = PointUH::h3(0.0, 0.0, 2.0).unwrap();
        assert_eq!(hyperbolic_distance(&j, &j), 0.0);
        assert!((hyperbolic_distance(&j, &j2) - 2f64.ln()).abs() < 1e-15);
        assert!((1.25f64.acosh() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn distance_matches_geodesic_length_by_quadrature() {
        // i and 1+2i lie on the geodesic circle centred at x0 = 2 of radius √5.
        let rad = 5f64.sqrt();
        let t0 = (1.0f64 / rad).atan2(-2.0 / rad); // angle of i
        let t1 = (2.0f64 / rad).atan2(-1.0 / rad); // angle of 1+2i
        let n = 200_000;
        let h = (t1 - t0) / n as f64;
        // ds = rad·dθ / (rad·sin θ); Simpson's rule
        let f = |t: f64| 1.0 / t.sin();
        let mut s = f(t0) + f(t1);
        for k in 1..n {
            let t = t0 + h * k as f64;
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(t);
        }
        let length = (s * h / 3.0).abs();
        let p = PointUH::h2(0.0, 1.0).unwrap();
        let q = PointUH::h2(1.0, 2.0).unwrap();
        assert!((hyperbolic_distance(&p, &q) - length).abs() < 1e-9);
        assert!((hyperbolic_distance(&p, &q) - 1.5f64.acosh()).abs() < 1e-12);
    }

    #[test]
    fn fixes_center_examples() {
        assert!(MoebiusElement::identity(Model::H3).fixes_center());
        assert!(h3(0, 1, -1, 0).fixes_center());
        assert!(!h3(1, 1, 0, 1).fixes_center());
        assert_eq!(h3(1, 1, 0, 1).norm_sq(), Scalar::int(3));
    }

    #[test]
    fn points_reject_nonpositive_height() {
        assert!(PointUH::h3(0.0, 0.0, 0.0).is_err());
        assert!(PointUH::h3(0.0, 0.0, -1.0).is_err());
        assert!(PointUH::h2(0.0, f64::NAN).is_err());
    }
}
