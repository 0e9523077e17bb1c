//! Geodesic hyperplanes of ℍ² and ℍ³: hemispheres and vertical planes.
//!
//! Every geodesic hyperplane is the zero set of a Hermitian form
//!
//! ```text
//!     Q(P) = α(|z|² + r²) − 2·Re(v̄·z) + β ,       P = z + r·j
//! ```
//!
//! with `α, β` real and `|v|² − αβ > 0`. When `α ≠ 0` the surface is the sphere
//! of center `v/α` and squared radius `(|v|² − αβ)/α²`; when `α = 0` it is the
//! vertical plane `Re(v̄·z) = β/2`. A half-space is `{Q ≥ 0}`.
//!
//! Writing `H(P) = (1/r)·[[|z|²+r², z], [z̄, 1]]`, the form is `Q(P)/r = tr(M·H(P))`
//! for `M = [[α, −v], [−v̄, β]]`, and `H(g·P) = g·H(P)·g*`. Images of surfaces
//! under `g` are therefore the exact congruence `M ↦ g⁻*·M·g⁻¹`.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, IncomparableReason, Result};
use crate::moebius::{Model, MoebiusElement, PointUH};
use crate::scalar::{Scalar, ScalarKind};

/// Hermitian form `α(|z|²+r²) − 2Re(v̄z) + β`.
#[derive(Clone, Debug)]
pub struct HermitianForm {
    pub alpha: Scalar,
    pub v: Scalar,
    pub beta: Scalar,
    pub model: Model,
}

impl HermitianForm {
    pub fn new(model: Model, alpha: Scalar, v: Scalar, beta: Scalar) -> Self {
        HermitianForm { alpha, v, beta, model }
    }

    pub fn is_exact(&self) -> bool {
        self.alpha.is_exact() && self.v.is_exact() && self.beta.is_exact()
    }

    pub fn kind(&self) -> ScalarKind {
        self.alpha
            .kind()
            .join(self.v.kind())
            .and_then(|k| k.join(self.beta.kind()))
            .expect("form coefficients share a kind")
    }

    /// `|v|² − αβ`; positive for a genuine geodesic hyperplane.
    pub fn discriminant(&self) -> Scalar {
        &self.v.abs_sq() - &(&self.alpha * &self.beta)
    }

    /// `(α, β, v)` as floats.
    pub fn to_f64(&self) -> (f64, f64, Complex64) {
        (self.alpha.to_c64().re, self.beta.to_c64().re, self.v.to_c64())
    }

    /// `Q(P)`.
    pub fn eval(&self, p: &PointUH) -> f64 {
        let (al, be, v) = self.to_f64();
        al * (p.z.norm_sqr() + p.r * p.r) - 2.0 * (v.conj() * p.z).re + be
    }

    /// Exact evaluation at a point given by its exact boundary part and `r²`.
    pub fn eval_exact(&self, z: &Scalar, r_sq: &BigRational) -> Scalar {
        let h = &z.abs_sq() + &Scalar::Rational(r_sq.clone());
        let re = (&self.v.conj() * z).re();
        &(&(&self.alpha * &h) - &(&Scalar::int(2) * &re)) + &self.beta
    }

    /// Euclidean coefficients `n` of the linear functional `n·x` on hyperboloid
    /// coordinates `x = (x0, x1, x2, x3)` that equals `Q(P)/r`.
    pub fn lorentz_coefficients(&self) -> [f64; 4] {
        let (al, be, v) = self.to_f64();
        [al + be, al - be, -2.0 * v.re, -2.0 * v.im]
    }

    /// The image `{g·P : Q(P) ≥ 0}` as a form: `g⁻*·M·g⁻¹`.
    pub fn transform(&self, g: &MoebiusElement) -> Result<HermitianForm> {
        if g.model != self.model {
            return Err(Error::ModelMismatch);
        }
        let kind = g.kind().join(self.kind())?;
        let g = if kind.is_exact() { g.clone() } else { g.to_float() };
        let m = if kind.is_exact() { self.clone() } else { self.to_float() };
        let inv = g.inverse();
        let (p, q, r, s) = (&inv.a, &inv.b, &inv.c, &inv.d);
        let (m11, m12, m22) = (&m.alpha, -&m.v, &m.beta);
        let m21 = m12.conj();
        // R = inv* · M · inv, with inv* = [[p̄, r̄], [q̄, s̄]]
        let x11 = &(m11 * p) + &(&m12 * r);
        let x12 = &(m11 * q) + &(&m12 * s);
        let x21 = &(&m21 * p) + &(m22 * r);
        let x22 = &(&m21 * q) + &(m22 * s);
        let alpha = &(&p.conj() * &x11) + &(&r.conj() * &x21);
        let r12 = &(&p.conj() * &x12) + &(&r.conj() * &x22);
        let beta = &(&q.conj() * &x12) + &(&s.conj() * &x22);
        let mut out = HermitianForm::new(self.model, alpha.re(), -&r12, beta.re());
        if self.model == Model::H2 {
            out.v = out.v.re();
        }
        Ok(out)
    }

    pub fn to_float(&self) -> HermitianForm {
        HermitianForm::new(self.model, self.alpha.to_float(), self.v.to_float(), self.beta.to_float())
    }

    /// Exact rational coordinates `(α, Re v, Im-coefficient of v, β)` and the
    /// discriminant parameter of `v` (0 when `v` is rational).
    fn exact_coords(&self) -> Option<([BigRational; 4], u64)> {
        let (al, _, _) = self.alpha.exact_parts()?;
        let (be, _, _) = self.beta.exact_parts()?;
        let (vr, vi, d) = self.v.exact_parts()?;
        let d = if vi.is_zero() { 0 } else { d };
        Some(([al, vr, vi, be], d))
    }

    /// Scale by a positive (oriented) or arbitrary nonzero (unoriented) factor to
    /// a canonical representative.
    fn normalized(&self, oriented: bool) -> HermitianForm {
        if let Some((coords, _)) = self.exact_coords() {
            let lead = coords.iter().find(|x| !x.is_zero()).cloned();
            let Some(lead) = lead else { return self.clone() };
            let scale = if oriented { lead.abs() } else { lead };
            let s = Scalar::Rational(scale.recip());
            return HermitianForm::new(
                self.model,
                &self.alpha * &s,
                &self.v * &s,
                &self.beta * &s,
            );
        }
        let f = self.to_float();
        let disc = f.discriminant().to_c64().re;
        let mut scale = if disc > 0.0 { disc.sqrt() } else { 1.0 };
        if !oriented {
            let (al, be, v) = f.to_f64();
            let lead = [al, v.re, v.im, be].into_iter().find(|x| x.abs() > 1e-12).unwrap_or(1.0);
            if lead < 0.0 {
                scale = -scale;
            }
        }
        let s = Scalar::float(1.0 / scale, 0.0);
        HermitianForm::new(self.model, &f.alpha * &s, &f.v * &s, &f.beta * &s)
    }

    fn same_as(&self, other: &HermitianForm, tol: f64) -> bool {
        if self.model != other.model {
            return false;
        }
        match (self.exact_coords(), other.exact_coords()) {
            (Some((x, dx)), Some((y, dy))) => x == y && (dx == dy || dx == 0 || dy == 0) && {
                // v's imaginary coefficients agree, so if both are nonzero the fields agree
                !(dx != dy && !x[2].is_zero())
            },
            _ => {
                let (a1, b1, v1) = self.to_f64();
                let (a2, b2, v2) = other.to_f64();
                (a1 - a2).abs() <= tol && (b1 - b2).abs() <= tol && (v1 - v2).norm() <= tol
            }
        }
    }

    fn key(&self) -> String {
        match self.exact_coords() {
            Some((c, d)) => format!(
                "{}|{}|{}|{}|{}",
                c[0], c[1], c[2], c[3], d
            ),
            None => {
                let (a, b, v) = self.to_f64();
                format!("{:.12e}|{:.12e}|{:.12e}|{:.12e}", a, v.re, v.im, b)
            }
        }
    }
}

/// The two shapes a geodesic hyperplane can take.
#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceShape {
    /// Hemisphere (semicircle in ℍ²) orthogonal to the boundary.
    Sphere { center: Scalar, radius_sq: Scalar },
    /// Vertical plane `Re(n̄·z) = offset`. The normal is not unit length for
    /// exact surfaces (unit normals are generally irrational); see
    /// [`GeodesicSurface::unit_plane`].
    Plane { normal: Scalar, offset: Scalar },
}

/// A geodesic hyperplane, stored as a normalized Hermitian form.
#[derive(Clone, Debug)]
pub struct GeodesicSurface {
    form: HermitianForm,
}

impl GeodesicSurface {
    pub fn from_form(form: HermitianForm) -> Result<Self> {
        let disc = form.discriminant();
        let ok = if disc.is_exact() {
            disc.re_sign() == Ordering::Greater
        } else {
            disc.to_c64().re > 1e-14
        };
        if !ok {
            return Err(Error::DegenerateImage);
        }
        Ok(GeodesicSurface { form: form.normalized(false) })
    }

    /// Sphere with the given center and squared radius.
    pub fn sphere(model: Model, center: Scalar, radius_sq: Scalar) -> Result<Self> {
        // α = 1, v = center, β = |center|² − R²
        let beta = &center.abs_sq() - &radius_sq;
        Self::from_form(HermitianForm::new(model, Scalar::one(), center, beta))
    }

    /// Vertical plane `Re(n̄·z) = offset`.
    pub fn plane(model: Model, normal: Scalar, offset: Scalar) -> Result<Self> {
        let beta = &Scalar::int(2) * &offset;
        let zero = if normal.is_exact() { Scalar::zero() } else { Scalar::float(0.0, 0.0) };
        Self::from_form(HermitianForm::new(model, zero, normal, beta))
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn model(&self) -> Model {
        self.form.model
    }

    pub fn is_exact(&self) -> bool {
        self.form.is_exact()
    }

    pub fn is_plane(&self) -> bool {
        self.form.alpha.is_zero_tol(1e-12)
    }

    pub fn shape(&self) -> SurfaceShape {
        let f = &self.form;
        if self.is_plane() {
            SurfaceShape::Plane { normal: f.v.clone(), offset: &f.beta / &Scalar::int(2) }
        } else {
            let center = &f.v / &f.alpha;
            let radius_sq = &f.discriminant() / &f.alpha.abs_sq();
            SurfaceShape::Sphere { center, radius_sq: radius_sq.re() }
        }
    }

    /// Unit normal and offset of a plane, normalized so that the offset is
    /// nonnegative and, for a zero offset, the normal's first nonzero
    /// component is positive.
    pub fn unit_plane(&self) -> Option<(Complex64, f64)> {
        if !self.is_plane() {
            return None;
        }
        let (_, be, v) = self.form.to_f64();
        let len = v.norm();
        let (mut n, mut off) = (v / len, be / (2.0 * len));
        let flip = if off.abs() > 1e-14 {
            off < 0.0
        } else if n.re.abs() > 1e-14 {
            n.re < 0.0
        } else {
            n.im < 0.0
        };
        if flip {
            n = -n;
            off = -off;
        }
        Some((n, off))
    }

    /// Center and radius as floats (spheres only).
    pub fn sphere_f64(&self) -> Option<(Complex64, f64)> {
        match self.shape() {
            SurfaceShape::Sphere { center, radius_sq } => {
                Some((center.to_c64(), radius_sq.to_c64().re.sqrt()))
            }
            SurfaceShape::Plane { .. } => None,
        }
    }

    /// Equality: exact after normalization when both are exact, otherwise
    /// componentwise within `1e-9`.
    pub fn same_as(&self, other: &GeodesicSurface) -> bool {
        if self.is_exact() && other.is_exact() {
            self.form.same_as(&other.form, 0.0)
        } else {
            self.form.to_float().normalized(false).same_as(&other.form.to_float().normalized(false), 1e-9)
        }
    }

    /// Deterministic sort key.
    pub fn key(&self) -> String {
        self.form.key()
    }

    /// Reflection (hyperbolic) in this surface.
    pub fn reflect(&self, p: &PointUH) -> PointUH {
        let mut out = match self.sphere_f64() {
            Some((c, rad)) => {
                let dz = p.z - c;
                let q = dz.norm_sqr() + p.r * p.r;
                let k = rad * rad / q;
                PointUH { z: c + dz * k, r: p.r * k }
            }
            None => {
                let (_, be, v) = self.form.to_f64();
                let t = ((v.conj() * p.z).re - be / 2.0) / v.norm_sqr();
                PointUH { z: p.z - v * (2.0 * t), r: p.r }
            }
        };
        if self.model() == Model::H2 {
            out.z.im = 0.0;
        }
        out
    }

    /// Samples a point on the surface from two parameters in `[0, 1)`.
    /// In ℍ² only the first parameter is used.
    pub fn sample_point(&self, s: f64, t: f64) -> PointUH {
        let h3 = self.model() == Model::H3;
        match self.sphere_f64() {
            Some((c, rad)) => {
                let polar = 0.05 + 0.9 * s * std::f64::consts::FRAC_PI_2;
                if h3 {
                    let az = t * std::f64::consts::TAU;
                    let z = c + Complex64::from_polar(rad * polar.cos(), az);
                    PointUH { z, r: rad * polar.sin() }
                } else {
                    let ang = 0.02 + s * (std::f64::consts::PI - 0.04);
                    PointUH { z: Complex64::new(c.re + rad * ang.cos(), 0.0), r: rad * ang.sin() }
                }
            }
            None => {
                let (n, off) = self.unit_plane().unwrap();
                let along = Complex64::new(-n.im, n.re);
                let base = n * off;
                let z = if h3 { base + along * (4.0 * t - 2.0) } else { Complex64::new(base.re, 0.0) };
                PointUH { z, r: 0.05 + 3.0 * s }
            }
        }
    }

    /// Image under `g`.
    pub fn map(&self, g: &MoebiusElement) -> Result<GeodesicSurface> {
        GeodesicSurface::from_form(self.form.transform(g)?)
    }
}

/// Which side of its surface a half-space lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Outside,
    Inside,
    /// `Re(n̄z) ≥ offset` for the surface's normalized unit normal.
    Positive,
    Negative,
}

/// Closed half-space `{Q ≥ 0}` bounded by a geodesic hyperplane.
#[derive(Clone, Debug)]
pub struct HalfSpace {
    form: HermitianForm,
}

impl HalfSpace {
    pub fn from_form(form: HermitianForm) -> Result<Self> {
        GeodesicSurface::from_form(form.clone())?;
        Ok(HalfSpace { form: form.normalized(true) })
    }

    /// The half-space of `surface` on the side containing `p`.
    pub fn containing(surface: &GeodesicSurface, p: &PointUH) -> HalfSpace {
        let form = surface.form.clone();
        let form = if form.eval(p) >= 0.0 { form } else { negate(&form) };
        HalfSpace { form: form.normalized(true) }
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn surface(&self) -> GeodesicSurface {
        GeodesicSurface { form: self.form.normalized(false) }
    }

    pub fn complement(&self) -> HalfSpace {
        HalfSpace { form: negate(&self.form).normalized(true) }
    }

    pub fn side(&self) -> Side {
        let (al, be, v) = self.form.to_f64();
        if al.abs() > 1e-12 {
            if al > 0.0 { Side::Outside } else { Side::Inside }
        } else {
            let (n, _) = self.surface().unit_plane().unwrap();
            // Q = −2Re(v̄z) + β ≥ 0; positive side when v points against n
            let _ = be;
            if (v.conj() * n).re < 0.0 { Side::Positive } else { Side::Negative }
        }
    }

    /// Signed value `Q(P)/r` normalized so the functional has unit Lorentz norm:
    /// equal to `sinh` of the signed hyperbolic distance from `P` to the surface.
    pub fn signed_sinh_distance(&self, p: &PointUH) -> f64 {
        let f = self.form.to_float().normalized(true);
        f.eval(p) / p.r
    }

    /// Closed membership with tolerance `tol` on the signed distance.
    pub fn contains(&self, p: &PointUH, tol: f64) -> bool {
        self.signed_sinh_distance(p) >= -tol
    }

    /// Exact closed membership for an exact point `z + r·j` given `r²`.
    pub fn contains_exact(&self, z: &Scalar, r_sq: &BigRational) -> Option<bool> {
        if !self.form.is_exact() || !z.is_exact() {
            return None;
        }
        Some(self.form.eval_exact(z, r_sq).re_sign() != Ordering::Less)
    }

    pub fn map(&self, g: &MoebiusElement) -> Result<HalfSpace> {
        HalfSpace::from_form(self.form.transform(g)?)
    }

    /// Equality of oriented half-spaces.
    pub fn same_as(&self, other: &HalfSpace) -> bool {
        if self.form.is_exact() && other.form.is_exact() {
            self.form.same_as(&other.form, 0.0)
        } else {
            self.form
                .to_float()
                .normalized(true)
                .same_as(&other.form.to_float().normalized(true), 1e-9)
        }
    }

    pub fn key(&self) -> String {
        self.form.key()
    }
}

fn negate(f: &HermitianForm) -> HermitianForm {
    HermitianForm::new(f.model, -&f.alpha, -&f.v, -&f.beta)
}

/// `D_γ(P₀) = {u : ρ(u, P₀) ≤ ρ(u, γ(P₀))}` as the form `γ⁻*γ⁻¹ − I`.
pub fn dirichlet_form(g: &MoebiusElement) -> HermitianForm {
    let alpha = &(&g.c.abs_sq() + &g.d.abs_sq()) - &Scalar::one();
    let v = &(&g.d.conj() * &g.b) + &(&g.c.conj() * &g.a);
    let beta = &(&g.a.abs_sq() + &g.b.abs_sq()) - &Scalar::one();
    HermitianForm::new(g.model, alpha.re(), v, beta.re())
}

/// Dirichlet half-space `D_γ(P₀)`; undefined when `γ` fixes `P₀`.
pub fn dirichlet_halfspace(g: &MoebiusElement) -> Result<HalfSpace> {
    if g.fixes_center() {
        return Err(Error::CenterStabilized);
    }
    HalfSpace::from_form(dirichlet_form(g))
}

/// Dirichlet half-space `{ρ(u, q) ≤ ρ(u, g(q))}` for a general center `q`,
/// given by its matrix `H(q)`'s adjugate entries. Used for stabilizer cells.
pub(crate) fn dirichlet_form_at(g: &MoebiusElement, q_form: &HermitianForm) -> HermitianForm {
    // ρ(u, q) ≤ ρ(u, g q)  ⇔  tr(H(u)·(adj H(gq) − adj H(q))) ≥ 0,
    // and adj H(gq) = g⁻*·adj H(q)·g⁻¹, which is `transform`.
    let moved = q_form.transform(g).expect("kinds checked by caller");
    HermitianForm::new(
        q_form.model,
        &moved.alpha - &q_form.alpha,
        &moved.v - &q_form.v,
        &moved.beta - &q_form.beta,
    )
}

/// Form of `adj H(q)` for the point `q = z + r·j` given exactly via `r² `:
/// `adj H(q) = (1/r)·[[1, −z], [−z̄, |z|²+r²]]`, scaled by `r > 0`.
pub(crate) fn center_form(model: Model, z: &Scalar, r_sq: &Scalar) -> HermitianForm {
    // [[α, −v], [−v̄, β]] = [[1, −z], [−z̄, |z|² + r²]]
    HermitianForm::new(model, Scalar::one(), z.clone(), &z.abs_sq() + r_sq)
}

/// Poincaré bisector `Σ_γ` of `P₀` and `γ⁻¹(P₀)`.
pub fn poincare_bisector(g: &MoebiusElement) -> Result<GeodesicSurface> {
    if g.fixes_center() {
        return Err(Error::CenterStabilized);
    }
    GeodesicSurface::from_form(dirichlet_form(&g.inverse()))
}

/// Isometric sphere `|cP + d| = 1`.
pub fn isometric_sphere(g: &MoebiusElement) -> Result<GeodesicSurface> {
    if g.c.is_zero() {
        return Err(Error::NoIsometricSphere);
    }
    GeodesicSurface::from_form(isometric_form(g))
}

fn isometric_form(g: &MoebiusElement) -> HermitianForm {
    // |cz + d|² + |c|²r² − 1 = |c|²(|z|²+r²) + 2Re(c z d̄) + |d|² − 1
    let alpha = g.c.abs_sq();
    let v = -&(&g.c.conj() * &g.d);
    let beta = &g.d.abs_sq() - &Scalar::one();
    HermitianForm::new(g.model, alpha.re(), v, beta.re())
}

/// `ISO_γ^≥ = {|cP + d|² ≥ 1}`.
pub fn isometric_exterior(g: &MoebiusElement) -> Result<HalfSpace> {
    if g.c.is_zero() {
        return Err(Error::NoIsometricSphere);
    }
    HalfSpace::from_form(isometric_form(g))
}

fn bisector_iso_preconditions(g: &MoebiusElement) -> Result<Scalar> {
    if g.c.is_zero() {
        return Err(Error::IncomparableSurfaces(IncomparableReason::NoIsometricSphere));
    }
    let s = &(&g.a.abs_sq() + &g.c.abs_sq()) - &Scalar::one();
    if s.is_zero() {
        return Err(Error::IncomparableSurfaces(IncomparableReason::BisectorIsPlane));
    }
    if g.fixes_center() {
        return Err(Error::CenterStabilized);
    }
    Ok(s)
}

/// Squared Euclidean distance between the centers of `ISO_γ` and `Σ_γ`, exact
/// for exact entries.
pub fn bisector_iso_gap_sq(g: &MoebiusElement) -> Result<Scalar> {
    let s = bisector_iso_preconditions(g)?;
    let iso_center = -&(&g.d / &g.c);
    let sigma_center = -&(&(&g.a.conj() * &g.b) + &(&g.c.conj() * &g.d)) / s;
    Ok((&iso_center - &sigma_center).abs_sq())
}

/// Euclidean distance between the centers of `ISO_γ` and `Σ_γ`.
pub fn bisector_iso_gap(g: &MoebiusElement) -> Result<f64> {
    Ok(bisector_iso_gap_sq(g)?.to_c64().re.max(0.0).sqrt())
}

/// The closed form `|d − ā|² / (|c|²·(|a|²+|c|²−1)²)` for the squared gap.
pub fn gap_closed_form_sq(g: &MoebiusElement) -> Result<Scalar> {
    let s = bisector_iso_preconditions(g)?;
    let num = (&g.d - &g.a.conj()).abs_sq();
    Ok(&num / &(&g.c.abs_sq() * &s.abs_sq()))
}

/// Outcome of the `d = ā` test with its diagnostics.
#[derive(Clone, Debug)]
pub struct PairingDiagnostics {
    pub holds: bool,
    /// `|d − ā|`.
    pub defect: f64,
    pub trace: Scalar,
    pub trace_real: bool,
    /// `λ` with `c = λ·b̄`, when `b ≠ 0`.
    pub lambda: Option<Scalar>,
    pub lambda_real: Option<bool>,
}

/// Whether `d = ā` (exact for exact entries, `|d − ā| < 1e-9` otherwise).
pub fn d_equals_conj_a(g: &MoebiusElement) -> bool {
    let diff = &g.d - &g.a.conj();
    if diff.is_exact() {
        diff.is_zero()
    } else {
        diff.to_c64().norm() < 1e-9
    }
}

/// The DF criterion `d = ā` on a side pairing, with trace and proportionality
/// diagnostics.
pub fn is_df_pairing(g: &MoebiusElement) -> Result<PairingDiagnostics> {
    if g.fixes_center() {
        return Err(Error::CenterStabilized);
    }
    Ok(pairing_diagnostics(g))
}

pub(crate) fn pairing_diagnostics(g: &MoebiusElement) -> PairingDiagnostics {
    let holds = d_equals_conj_a(g);
    let trace = g.trace();
    let trace_real = trace.is_real() || (!trace.is_exact() && trace.to_c64().im.abs() < 1e-9);
    let (lambda, lambda_real) = if g.b.is_zero() {
        (None, None)
    } else {
        let l = &g.c / &g.b.conj();
        let real = l.is_real() || (!l.is_exact() && l.to_c64().im.abs() < 1e-9);
        (Some(l), Some(real))
    };
    PairingDiagnostics {
        holds,
        defect: (&g.d - &g.a.conj()).to_c64().norm(),
        trace,
        trace_real,
        lambda,
        lambda_real,
    }
}

/// `reflect(s, P)`.
pub fn reflect(s: &GeodesicSurface, p: &PointUH) -> PointUH {
    s.reflect(p)
}

/// `halfspace_contains(h, P, tol)`.
pub fn halfspace_contains(h: &HalfSpace, p: &PointUH, tol: f64) -> bool {
    h.contains(p, tol)
}

/// `map_surface(γ, s)`.
pub fn map_surface(g: &MoebiusElement, s: &GeodesicSurface) -> Result<GeodesicSurface> {
    s.map(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::hyperbolic_distance;
    use crate::scalar::{rat, ratio};

    fn h2(a: i64, b: i64, c: i64, d: i64) -> MoebiusElement {
        MoebiusElement::int(Model::H2, a, b, c, d).unwrap()
    }
    fn h3(a: i64, b: i64, c: i64, d: i64) -> MoebiusElement {
        MoebiusElement::int(Model::H3, a, b, c, d).unwrap()
    }

    #[test]
    fn translation_bisector_is_vertical_line() {
        let s = poincare_bisector(&h2(1, 1, 0, 1)).unwrap();
        let (n, off) = s.unit_plane().unwrap();
        // x = −1/2  ⇔  Re(−z) = 1/2
        assert!((n - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((off - 0.5).abs() < 1e-15);
    }

    #[test]
    fn scaling_bisector_is_sphere_of_radius_half() {
        let g = MoebiusElement::new(
            Model::H2,
            Scalar::int(2),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::Rational(ratio(1, 2)),
        )
        .unwrap();
        let s = poincare_bisector(&g).unwrap();
        assert_eq!(
            s.shape(),
            SurfaceShape::Sphere { center: Scalar::zero(), radius_sq: Scalar::Rational(ratio(1, 4)) }
        );
        // oracle: sampled points are equidistant from i and γ⁻¹(i) = i/4
        let p0 = Model::H2.center();
        let q = g.inverse().act(&p0);
        assert!((q.r - 0.25).abs() < 1e-15);
        for k in 0..50 {
            let u = s.sample_point(k as f64 / 50.0, 0.0);
            assert!((hyperbolic_distance(&u, &p0) - hyperbolic_distance(&u, &q)).abs() < 1e-12);
        }
    }

    #[test]
    fn stabilizer_has_no_bisector() {
        assert!(matches!(poincare_bisector(&h3(0, 1, -1, 0)), Err(Error::CenterStabilized)));
    }

    #[test]
    fn isometric_sphere_examples() {
        let s = isometric_sphere(&h3(2, 1, 1, 1)).unwrap();
        assert_eq!(s.shape(), SurfaceShape::Sphere { center: Scalar::int(-1), radius_sq: Scalar::int(1) });
        assert!(matches!(isometric_sphere(&h3(1, 1, 0, 1)), Err(Error::NoIsometricSphere)));
        let s = isometric_sphere(&h3(0, 1, -1, 0)).unwrap();
        assert_eq!(s.shape(), SurfaceShape::Sphere { center: Scalar::zero(), radius_sq: Scalar::int(1) });
    }

    #[test]
    fn gap_examples() {
        // ISO center −1, Σ center −(2·1 + 1·1)/(4+1−1) = −3/4
        let g = h3(2, 1, 1, 1);
        assert_eq!(bisector_iso_gap_sq(&g).unwrap(), Scalar::Rational(ratio(1, 16)));
        assert!((bisector_iso_gap(&g).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(bisector_iso_gap_sq(&h3(2, 3, 1, 2)).unwrap(), Scalar::zero());
        assert_eq!(bisector_iso_gap_sq(&h3(1, 0, 1, 1)).unwrap(), Scalar::zero());
        assert!(matches!(
            bisector_iso_gap(&h3(1, 1, 0, 1)),
            Err(Error::IncomparableSurfaces(IncomparableReason::NoIsometricSphere))
        ));
        assert!(matches!(
            bisector_iso_gap(&h3(0, -1, 1, 3)),
            Err(Error::IncomparableSurfaces(IncomparableReason::BisectorIsPlane))
        ));
    }

    #[test]
    fn df_pairing_examples() {
        let d = is_df_pairing(&h3(2, 3, 1, 2)).unwrap();
        assert!(d.holds && d.trace_real);
        assert_eq!(d.trace, Scalar::int(4));
        assert_eq!(d.lambda, Some(Scalar::Rational(ratio(1, 3))));
        assert_eq!(d.lambda_real, Some(true));
        assert!(!is_df_pairing(&h3(1, 1, 1, 2)).unwrap().holds);
        let w = Scalar::quad(rat(1), rat(1), 2);
        let t = MoebiusElement::translation(Model::H3, w).unwrap();
        assert!(is_df_pairing(&t).unwrap().holds);
        assert!(matches!(is_df_pairing(&h3(0, 1, -1, 0)), Err(Error::CenterStabilized)));
    }

    #[test]
    fn reflections() {
        let unit = GeodesicSurface::sphere(Model::H3, Scalar::zero(), Scalar::one()).unwrap();
        let p = unit.reflect(&PointUH::h3(0.0, 0.0, 2.0).unwrap());
        assert!(p.z.norm() < 1e-15 && (p.r - 0.5).abs() < 1e-15);
        let x0 = GeodesicSurface::plane(Model::H3, Scalar::one(), Scalar::zero()).unwrap();
        let y0 = GeodesicSurface::plane(Model::H3, Scalar::sqrt_neg(1), Scalar::zero()).unwrap();
        let q = PointUH::h3(0.3, 0.7, 1.1).unwrap();
        let qx = x0.reflect(&q);
        let qy = y0.reflect(&q);
        assert!((qx.z - Complex64::new(-0.3, 0.7)).norm() < 1e-15 && qx.r == q.r);
        assert!((qy.z - Complex64::new(0.3, -0.7)).norm() < 1e-15 && qy.r == q.r);
        let back = unit.reflect(&unit.reflect(&q));
        assert!(back.euclid_dist_sq(&q) < 1e-24);
    }

    #[test]
    fn containment_examples() {
        let outside = isometric_exterior(&h3(0, 1, -1, 0)).unwrap();
        assert!(outside.contains(&PointUH::h3(0.0, 0.0, 2.0).unwrap(), 0.0));
        assert_eq!(outside.contains_exact(&Scalar::zero(), &rat(1)), Some(true));
        assert!(outside.contains(&PointUH::h3(0.0, 0.0, 1.0).unwrap(), 1e-12));
        assert_eq!(outside.side(), Side::Outside);
        // x ≤ 1/2
        let plane = GeodesicSurface::plane(Model::H3, Scalar::one(), Scalar::frac(1, 2)).unwrap();
        let h = HalfSpace::containing(&plane, &PointUH::h3(0.0, 0.0, 1.0).unwrap());
        assert!(!h.contains(&PointUH::h3(1.0, 0.0, 1.0).unwrap(), 1e-12));
        assert_eq!(h.contains_exact(&Scalar::int(1), &rat(1)), Some(false));
        assert_eq!(h.side(), Side::Negative);
        assert_eq!(h.complement().side(), Side::Positive);
    }

    #[test]
    fn map_surface_examples() {
        let g = h3(2, 3, 1, 2);
        let img = map_surface(&g, &poincare_bisector(&g).unwrap()).unwrap();
        assert!(img.same_as(&poincare_bisector(&g.inverse()).unwrap()));
        let s = GeodesicSurface::sphere(Model::H3, Scalar::int(-2), Scalar::one()).unwrap();
        assert!(map_surface(&MoebiusElement::identity(Model::H3), &s).unwrap().same_as(&s));
        let img = map_surface(&g, &s).unwrap();
        assert_eq!(img.shape(), SurfaceShape::Sphere { center: Scalar::int(2), radius_sq: Scalar::one() });
        assert!(img.same_as(&isometric_sphere(&h3(2, -3, -1, 2)).unwrap()));
        // oracle: push forward sampled points and check they land on the image
        for k in 0..20 {
            let p = s.sample_point(k as f64 / 20.0, 0.37 * k as f64 % 1.0);
            let q = g.act(&p);
            assert!(img.form().eval(&q).abs() < 1e-9);
        }
    }

    #[test]
    fn map_surface_turns_spheres_into_planes() {
        // S maps the sphere |z − 1| = 1 through 0 to a vertical plane
        let s = GeodesicSurface::sphere(Model::H2, Scalar::int(1), Scalar::one()).unwrap();
        let img = s.map(&h2(0, 1, -1, 0)).unwrap();
        assert!(img.is_plane());
        let (n, off) = img.unit_plane().unwrap();
        // −1/z on |z−1|=1 is the line x = −1/2
        assert!((n.re.abs() - 1.0).abs() < 1e-15 && (off - 0.5).abs() < 1e-15);
    }
}
