//! Dirichlet and Ford fundamental domains, side pairings and Poincaré-style
//! verification.

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::bianchi::{small_sl2, SmallMat};
use crate::error::{Error, Result};
use crate::hyperplanes::{
    center_form, dirichlet_form_at, dirichlet_halfspace, isometric_exterior, HalfSpace, HermitianForm,
};
use crate::moebius::{canonical_cmp, Model, MoebiusElement, PointUH};
use crate::polytope::{dihedral_angle, klein_from_uh, klein_map, uh_from_klein, Cut, Polytope, UhLocation};
use crate::scalar::{Scalar, ScalarKind};

/// Knobs of the reduction loop.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionOptions {
    pub norm_bound_initial: f64,
    pub norm_bound_max: f64,
    pub tol: f64,
    pub max_rounds: usize,
    /// Factor between successive bounds.
    pub growth: f64,
    /// Prefix norms in the word ball may reach `slack × bound`.
    pub slack: f64,
    /// Candidate-set cap.
    pub cap: usize,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            norm_bound_initial: 12.0,
            norm_bound_max: 200.0,
            tol: 1e-9,
            max_rounds: 32,
            growth: 1.5,
            slack: 4.0,
            cap: 1_000_000,
        }
    }
}

impl ReductionOptions {
    /// Defaults for the Bianchi survey: non-DF discriminants need pairings of
    /// norm well beyond 200.
    pub fn survey() -> Self {
        ReductionOptions { norm_bound_max: 4096.0, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config("tol must be positive".into()));
        }
        if !(self.norm_bound_initial >= 2.0) || self.norm_bound_max < self.norm_bound_initial {
            return Err(Error::Config("need 2 <= bound-init <= bound-max".into()));
        }
        if !(self.growth > 1.0) {
            return Err(Error::Config("growth must exceed 1".into()));
        }
        if self.max_rounds == 0 {
            return Err(Error::Config("max_rounds must be positive".into()));
        }
        Ok(())
    }
}

/// A finitely generated group together with its cusp and center stabilizers.
#[derive(Clone, Debug)]
pub struct GroupInput {
    pub model: Model,
    pub generators: Vec<MoebiusElement>,
    /// Generators of `Γ_∞`.
    pub cusp_generators: Vec<MoebiusElement>,
    /// Generators of `Γ_{P₀}`.
    pub center_stabilizer: Vec<MoebiusElement>,
    pub origin: String,
    /// For PSL₂(O_d): enumerate exhaustively instead of by word balls.
    pub bianchi_d: Option<u64>,
}

impl GroupInput {
    pub fn new(
        model: Model,
        generators: Vec<MoebiusElement>,
        cusp_generators: Vec<MoebiusElement>,
        center_stabilizer: Vec<MoebiusElement>,
        origin: impl Into<String>,
    ) -> Result<Self> {
        let all = generators.iter().chain(&cusp_generators).chain(&center_stabilizer);
        let mut kind: Option<ScalarKind> = None;
        for g in all {
            if g.model != model {
                return Err(Error::ModelMismatch);
            }
            kind = Some(match kind {
                None => g.kind(),
                Some(k) => k.join(g.kind())?,
            });
        }
        for (index, g) in cusp_generators.iter().enumerate() {
            if !g.fixes_infinity() {
                return Err(Error::NotACuspGroup { index });
            }
        }
        for (index, g) in center_stabilizer.iter().enumerate() {
            if !g.fixes_center() {
                return Err(Error::NotStabilizing { index });
            }
        }
        Ok(GroupInput { model, generators, cusp_generators, center_stabilizer, origin: origin.into(), bianchi_d: None })
    }

    /// PSL₂(ℤ) acting on ℍ², generated by `T = (1,1;0,1)` and `S = (0,1;−1,0)`.
    pub fn psl2z() -> Self {
        let t = MoebiusElement::int(Model::H2, 1, 1, 0, 1).unwrap();
        let s = MoebiusElement::int(Model::H2, 0, 1, -1, 0).unwrap();
        GroupInput::new(Model::H2, vec![t.clone(), s.clone()], vec![t], vec![s], "PSL2(Z)").unwrap()
    }

    fn kind(&self) -> ScalarKind {
        self.generators
            .iter()
            .chain(&self.cusp_generators)
            .chain(&self.center_stabilizer)
            .map(|g| g.kind())
            .try_fold(ScalarKind::Rational, |k, x| k.join(x))
            .unwrap_or(ScalarKind::Float)
    }

    /// The group conjugated by `z ↦ t·z`, so that the point `t·P₀` becomes `P₀`.
    /// Declared stabilizer elements that no longer fix `P₀` are dropped.
    pub fn rescaled(&self, t: &BigRational) -> Result<GroupInput> {
        if !t.is_positive() {
            return Err(Error::Config("scaling factor must be positive".into()));
        }
        let f = |g: &MoebiusElement| scale_element(g, t);
        let generators = self.generators.iter().map(f).collect();
        let cusp = self.cusp_generators.iter().map(f).collect();
        let stab = self.center_stabilizer.iter().map(f).filter(|g: &MoebiusElement| g.fixes_center()).collect();
        let mut out = GroupInput::new(self.model, generators, cusp, stab, format!("{} rescaled by {}", self.origin, t))?;
        out.bianchi_d = None;
        Ok(out)
    }
}

/// `h⁻¹·g·h` for `h: z ↦ s·z`, i.e. `(a, b/s; c·s, d)`.
fn scale_element(g: &MoebiusElement, s: &BigRational) -> MoebiusElement {
    let k = g.kind();
    let s = Scalar::Rational(s.clone()).promote(k);
    MoebiusElement::from_entries_unchecked(g.model, g.a.clone(), &g.b / &s, &g.c * &s, g.d.clone())
}

/// Where a face came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceSource {
    Bisector,
    IsometricSphere,
    StabilizerCell,
    CuspCell,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub halfspace: HalfSpace,
    /// Maps this face onto its partner; `None` when no pairing was found.
    pub pairing: Option<MoebiusElement>,
    pub partner: Option<usize>,
    pub vertical: bool,
    pub source: FaceSource,
    /// Indices into the polyhedron's vertex list.
    pub vertices: Vec<usize>,
}

/// Position of a polyhedron vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VertexLocation {
    Finite(PointUH),
    Ideal(Complex64),
    Infinity,
    /// Outside the closed model (only for infinite-volume polyhedra).
    Beyond,
}

#[derive(Clone, Debug)]
pub struct PolyVertex {
    pub klein: [f64; 3],
    pub location: VertexLocation,
}

impl PolyVertex {
    fn in_model(&self) -> bool {
        !matches!(self.location, VertexLocation::Beyond)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DomainKind {
    Dirichlet { center: PointUH },
    Ford,
}

/// A ridge cycle (vertex cycle in ℍ², edge cycle in ℍ³).
#[derive(Clone, Debug, Serialize)]
pub struct EdgeCycle {
    /// `(face, face)` pairs of the ridges visited, in order.
    pub ridges: Vec<(usize, usize)>,
    pub angle_sum: f64,
    /// `2π / angle_sum` rounded; `None` for cusp cycles (angle sum 0).
    pub order: Option<u32>,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PoincareReport {
    pub pairing_closure: bool,
    pub unpaired: Vec<usize>,
    pub cycles_ok: bool,
    pub finite_volume: bool,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct FundamentalPolyhedron {
    pub model: Model,
    pub kind: DomainKind,
    pub origin: String,
    pub faces: Vec<Face>,
    pub vertices: Vec<PolyVertex>,
    pub edge_cycles: Vec<EdgeCycle>,
    /// Hyperbolic area or volume; `None` when infinite.
    pub volume_estimate: Option<f64>,
    pub report: PoincareReport,
    /// Norm bound at which the face set was accepted.
    pub bound: f64,
    pub rounds: usize,
    /// The full finite group `Γ_{P₀}` (Dirichlet only).
    pub stabilizer: Vec<MoebiusElement>,
}

impl FundamentalPolyhedron {
    /// Cuts of all faces in Klein coordinates.
    pub fn cuts(&self) -> Vec<Cut> {
        self.faces.iter().map(|f| Cut::from_form(f.halfspace.form())).collect()
    }

    /// Closed membership of a point with tolerance on the signed distance.
    pub fn contains(&self, p: &PointUH, tol: f64) -> bool {
        self.faces.iter().all(|f| f.halfspace.contains(p, tol))
    }

    /// Image of the polyhedron under `z ↦ t·z`; pairings are conjugated.
    pub fn rescale(&self, t: &BigRational) -> FundamentalPolyhedron {
        let tf = num_traits::ToPrimitive::to_f64(t).unwrap();
        let mut out = self.clone();
        for f in &mut out.faces {
            let form = f.halfspace.form();
            let k = form.kind();
            let ts = Scalar::Rational(t.clone()).promote(k);
            let t2 = &ts * &ts;
            let scaled = HermitianForm::new(form.model, form.alpha.clone(), &form.v * &ts, &form.beta * &t2);
            f.halfspace = HalfSpace::from_form(scaled).expect("scaling keeps surfaces");
            f.pairing = f.pairing.as_ref().map(|g| scale_element(g, &t.recip()));
        }
        for v in &mut out.vertices {
            v.location = match v.location {
                VertexLocation::Finite(p) => VertexLocation::Finite(PointUH { z: p.z * tf, r: p.r * tf }),
                VertexLocation::Ideal(z) => VertexLocation::Ideal(z * tf),
                other => other,
            };
            v.klein = match v.location {
                VertexLocation::Finite(p) => klein_from_uh(p.z, p.r),
                VertexLocation::Ideal(z) => klein_from_uh(z, 0.0),
                VertexLocation::Infinity => [1.0, 0.0, 0.0],
                VertexLocation::Beyond => v.klein,
            };
        }
        if let DomainKind::Dirichlet { center } = out.kind {
            out.kind = DomainKind::Dirichlet { center: PointUH { z: center.z * tf, r: center.r * tf } };
        }
        out.stabilizer = out.stabilizer.iter().map(|g| scale_element(g, &t.recip())).collect();
        if let Some(v) = out.volume_estimate {
            out.volume_estimate = Some(v);
        }
        out
    }

    pub fn center(&self) -> Option<PointUH> {
        match self.kind {
            DomainKind::Dirichlet { center } => Some(center),
            DomainKind::Ford => None,
        }
    }

    /// Sorted exact keys of the face half-spaces.
    pub fn face_keys(&self) -> Vec<String> {
        let mut k: Vec<String> = self.faces.iter().map(|f| f.halfspace.key()).collect();
        k.sort();
        k
    }
}

/// Closed word ball over the generators, their inverses, cusp and stabilizer
/// generators, pruned at `slack × bound`, filtered to `‖γ‖² ≤ bound`.
pub fn enumerate_group(input: &GroupInput, bound: f64) -> Result<Vec<MoebiusElement>> {
    let o = ReductionOptions::default();
    enumerate_group_with(input, bound, o.slack, o.cap)
}

pub fn enumerate_group_with(input: &GroupInput, bound: f64, slack: f64, cap: usize) -> Result<Vec<MoebiusElement>> {
    let mut gens: Vec<MoebiusElement> = Vec::new();
    let mut seen_gen = HashSet::new();
    for g in input.generators.iter().chain(&input.cusp_generators).chain(&input.center_stabilizer) {
        for h in [g.clone(), g.inverse()] {
            if seen_gen.insert(h.key()) {
                gens.push(h);
            }
        }
    }
    let limit = slack.max(1.0) * bound + 1e-9;
    let id = MoebiusElement::identity(input.model);
    let id = if input.kind().is_exact() { id.promote_to(input.kind()) } else { id.to_float() };
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(id.key());
    let mut all = vec![id.clone()];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let p = w.mul_unchecked(g);
                if p.norm_sq_f64() > limit {
                    continue;
                }
                if seen.insert(p.key()) {
                    if seen.len() > cap {
                        return Err(Error::ExplosionGuard { cap });
                    }
                    next.push(p.clone());
                    all.push(p);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<MoebiusElement> = all.into_iter().filter(|g| g.norm_sq_f64() <= bound + 1e-9).collect();
    out.sort_by(canonical_cmp);
    Ok(out)
}

impl MoebiusElement {
    pub(crate) fn promote_to(&self, k: ScalarKind) -> MoebiusElement {
        MoebiusElement::from_entries_unchecked(
            self.model,
            self.a.promote(k),
            self.b.promote(k),
            self.c.promote(k),
            self.d.promote(k),
        )
    }
}

/// The finite group generated by `gens`.
pub fn close_group(model: Model, gens: &[MoebiusElement], cap: usize) -> Result<Vec<MoebiusElement>> {
    let kind = gens.iter().map(|g| g.kind()).try_fold(ScalarKind::Rational, |k, x| k.join(x))?;
    let id = MoebiusElement::identity(model);
    let id = if kind.is_exact() { id.promote_to(kind) } else { id.to_float() };
    let mut out = vec![id];
    let mut keys: Vec<MoebiusElement> = out.clone();
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let p = out[i].mul_unchecked(g);
            let known = if kind.is_exact() {
                keys.iter().any(|k| *k == p)
            } else {
                keys.iter().any(|k| k.approx_eq(&p, 1e-9))
            };
            if !known {
                if out.len() >= cap {
                    return Err(Error::ExplosionGuard { cap });
                }
                keys.push(p.clone());
                out.push(p);
            }
        }
        i += 1;
    }
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// Cusp cell with the candidate pairings of each wall.
fn cusp_cell_seeds(input: &GroupInput) -> Result<Vec<(HalfSpace, Vec<MoebiusElement>)>> {
    if input.cusp_generators.is_empty() {
        return Err(Error::NotACuspGroup { index: 0 });
    }
    for (index, g) in input.cusp_generators.iter().enumerate() {
        if !g.fixes_infinity() {
            return Err(Error::NotACuspGroup { index });
        }
    }
    let model = input.model;
    let kind = input.cusp_generators.iter().map(|g| g.kind()).try_fold(ScalarKind::Rational, |k, x| k.join(x))?;
    let rotations = input.cusp_generators.iter().any(|g| !(&g.a - &g.d).is_zero() || !g.a.is_real());
    let base = if !rotations {
        Scalar::zero().promote(kind)
    } else {
        let im = match kind {
            ScalarKind::Quad(d) => Scalar::sqrt_neg(d),
            ScalarKind::Float => Scalar::float(0.0, 1.0),
            ScalarKind::Rational => Scalar::zero(),
        };
        &Scalar::frac(1, 7).promote(kind) + &(&Scalar::frac(1, 11).promote(kind) * &im)
    };
    // Γ_∞ window: word ball until translation lengths exceed a few generator lengths
    let reach: f64 = input
        .cusp_generators
        .iter()
        .map(|g| (g.b.to_c64() / g.d.to_c64()).norm_sqr())
        .sum::<f64>()
        * 4.0
        + 4.0;
    let mut gens: Vec<MoebiusElement> = Vec::new();
    for g in &input.cusp_generators {
        gens.push(g.clone());
        gens.push(g.inverse());
    }
    let id = MoebiusElement::identity(model).promote_to(kind);
    let mut seen: HashSet<String> = HashSet::from([id.key()]);
    let mut frontier = vec![id];
    let mut window = Vec::new();
    let base_f = base.to_c64();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let p = w.mul_unchecked(g);
                let img = p.act_boundary_f64(Some(base_f)).unwrap();
                if (img - base_f).norm_sqr() > reach || seen.len() > 10_000 {
                    continue;
                }
                if seen.insert(p.key()) {
                    next.push(p.clone());
                    window.push(p);
                }
            }
        }
        frontier = next;
    }
    window.sort_by(canonical_cmp);
    let mut seeds: Vec<(HalfSpace, Vec<MoebiusElement>, [f64; 2], f64)> = Vec::new();
    for t in &window {
        let q = match t.act_boundary(&crate::moebius::BoundaryPoint::Finite(base.clone())) {
            crate::moebius::BoundaryPoint::Finite(q) => q,
            _ => continue,
        };
        if (&q - &base).is_zero() {
            continue;
        }
        let form = euclidean_bisector(model, &base, &q);
        let h = HalfSpace::from_form(form)?;
        let v = (&q - &base).to_c64();
        let beta = (&q.abs_sq() - &base.abs_sq()).to_c64().re;
        seeds.push((h, vec![t.inverse(), t.clone()], [v.re, v.im], beta));
    }
    // clip a large square by 2·Re(v̄z) ≤ β and keep the walls that survive
    let n = 64.0;
    let mut poly: Vec<([f64; 2], Option<usize>)> =
        vec![([-n, -n], None), ([n, -n], None), ([n, n], None), ([-n, n], None)];
    for (k, s) in seeds.iter().enumerate() {
        poly = clip(&poly, s.2, s.3 / 2.0, k);
    }
    let used: BTreeSet<usize> = poly.iter().filter_map(|(_, l)| *l).collect();
    Ok(used.into_iter().map(|k| (seeds[k].0.clone(), seeds[k].1.clone())).collect())
}

/// `{|z − p|² ≤ |z − q|²}` as a vertical half-space.
fn euclidean_bisector(model: Model, p: &Scalar, q: &Scalar) -> HermitianForm {
    let v = q - p;
    let beta = &q.abs_sq() - &p.abs_sq();
    let zero = Scalar::zero().promote(beta.kind());
    let mut v = v;
    if model == Model::H2 {
        v = v.re();
    }
    HermitianForm::new(model, zero, v, beta.re())
}

/// Sutherland–Hodgman step for `n·p ≤ off` with edge labels.
fn clip(poly: &[([f64; 2], Option<usize>)], n: [f64; 2], off: f64, label: usize) -> Vec<([f64; 2], Option<usize>)> {
    let inside = |p: &[f64; 2]| n[0] * p[0] + n[1] * p[1] <= off + 1e-12;
    let cross = |p: &[f64; 2], q: &[f64; 2]| {
        let fp = n[0] * p[0] + n[1] * p[1] - off;
        let fq = n[0] * q[0] + n[1] * q[1] - off;
        let t = fp / (fp - fq);
        [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
    };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, lab) = poly[i];
        let q = poly[(i + 1) % poly.len()].0;
        match (inside(&p), inside(&q)) {
            (true, true) => out.push((p, lab)),
            (true, false) => {
                out.push((p, lab));
                out.push((cross(&p, &q), Some(label)));
            }
            (false, true) => out.push((cross(&p, &q), lab)),
            (false, false) => {}
        }
    }
    out
}

/// Vertical half-spaces forming a fundamental domain of `Γ_∞` on the boundary
/// (the Euclidean Dirichlet cell of 0, or of a generic point when `Γ_∞`
/// contains rotations).
pub fn cusp_cell(input: &GroupInput) -> Result<Vec<HalfSpace>> {
    Ok(cusp_cell_seeds(input)?.into_iter().map(|s| s.0).collect())
}

/// A cone of half-spaces through `P₀` forming a fundamental domain for the
/// finite group generated by `stab`.
pub fn stabilizer_cell(stab: &[MoebiusElement], model: Model) -> Result<Vec<HalfSpace>> {
    for (index, g) in stab.iter().enumerate() {
        if !g.fixes_center() {
            return Err(Error::NotStabilizing { index });
        }
    }
    let group = close_group(model, stab, 1000)?;
    Ok(stabilizer_cell_of_group(&group, model)?.into_iter().map(|s| s.0).collect())
}

fn stabilizer_cell_of_group(group: &[MoebiusElement], model: Model) -> Result<Vec<(HalfSpace, Vec<MoebiusElement>)>> {
    if group.len() <= 1 {
        return Ok(Vec::new());
    }
    let kind = group[0].kind();
    let rot: Vec<&MoebiusElement> = group.iter().filter(|g| g.c.is_zero() && !g.is_identity()).collect();
    let others: Vec<&MoebiusElement> = group.iter().filter(|g| !g.c.is_zero()).collect();
    let all: Vec<MoebiusElement> = group.iter().filter(|g| !g.is_identity()).cloned().collect();
    if others.iter().all(|g| g.a.is_zero() && g.d.is_zero()) {
        let mut out = Vec::new();
        if !others.is_empty() {
            let unit = HermitianForm::new(model, Scalar::one().promote(kind), Scalar::zero().promote(kind), (-Scalar::one()).promote(kind));
            out.push((HalfSpace::from_form(unit)?, others.iter().map(|g| (*g).clone()).collect()));
        }
        if !rot.is_empty() {
            let base = match kind {
                ScalarKind::Quad(d) => Scalar::sqrt_neg(d),
                _ => Scalar::float(0.0, 1.0),
            };
            for g in &rot {
                let q = match g.act_boundary(&crate::moebius::BoundaryPoint::Finite(base.clone())) {
                    crate::moebius::BoundaryPoint::Finite(q) => q,
                    _ => unreachable!(),
                };
                let form = euclidean_bisector(model, &base, &q);
                out.push((HalfSpace::from_form(form)?, all.clone()));
            }
        }
        return Ok(out);
    }
    // generic: Dirichlet cell of the group at a point off every axis
    let (z, r_sq) = match kind {
        ScalarKind::Quad(d) => (&Scalar::frac(1, 5).promote(kind) + &(&Scalar::frac(1, 7).promote(kind) * &Scalar::sqrt_neg(d)), Scalar::frac(3, 2)),
        ScalarKind::Float => (Scalar::float(0.2, if model == Model::H3 { 0.14 } else { 0.0 }), Scalar::float(1.5, 0.0)),
        ScalarKind::Rational => (Scalar::frac(1, 5), Scalar::frac(3, 2)),
    };
    let q = center_form(model, &z, &r_sq.promote(kind));
    let mut out = Vec::new();
    for g in &all {
        let form = dirichlet_form_at(g, &q);
        out.push((HalfSpace::from_form(form)?, all.clone()));
    }
    Ok(out)
}

/// A candidate element contributing a half-space.
#[derive(Clone, Debug)]
enum CandElem {
    Exact(MoebiusElement),
    Small(SmallMat),
}

impl CandElem {
    fn element(&self) -> MoebiusElement {
        match self {
            CandElem::Exact(g) => g.clone(),
            CandElem::Small(m) => m.to_moebius(),
        }
    }

    fn c64(&self) -> [Complex64; 4] {
        match self {
            CandElem::Exact(g) => g.to_c64(),
            CandElem::Small(m) => m.to_c64(),
        }
    }
}

#[derive(Clone, Debug)]
struct Cand {
    cut: Cut,
    elem: CandElem,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Dirichlet,
    Ford,
}

fn float_form(mode: Mode, e: &[Complex64; 4], model: Model) -> HermitianForm {
    let [a, b, c, d] = *e;
    let (alpha, v, beta) = match mode {
        Mode::Dirichlet => (c.norm_sqr() + d.norm_sqr() - 1.0, d.conj() * b + c.conj() * a, a.norm_sqr() + b.norm_sqr() - 1.0),
        Mode::Ford => (c.norm_sqr(), -(c.conj() * d), d.norm_sqr() - 1.0),
    };
    let v = if model == Model::H2 { Complex64::new(v.re, 0.0) } else { v };
    HermitianForm::new(model, Scalar::float(alpha, 0.0), Scalar::float(v.re, v.im), Scalar::float(beta, 0.0))
}

fn same_cut(p: &Cut, q: &Cut) -> bool {
    (p.c0 - q.c0).abs() + (p.c[0] - q.c[0]).abs() + (p.c[1] - q.c[1]).abs() + (p.c[2] - q.c[2]).abs() < 1e-9
}

fn candidates(input: &GroupInput, bound: f64, opts: &ReductionOptions, mode: Mode) -> Result<Vec<Cand>> {
    let elems: Vec<CandElem> = match input.bianchi_d {
        Some(d) => small_sl2(d, bound, opts.cap)?.into_iter().map(CandElem::Small).collect(),
        None => enumerate_group_with(input, bound, opts.slack, opts.cap)?.into_iter().map(CandElem::Exact).collect(),
    };
    Ok(elems
        .into_iter()
        .map(|e| {
            let cut = Cut::from_form(&float_form(mode, &e.c64(), input.model));
            Cand { cut, elem: e }
        })
        .collect())
}

enum SeedOrigin {
    Fixed(HalfSpace, Vec<MoebiusElement>, FaceSource),
    Cand(usize),
}

struct Seed {
    cut: Cut,
    origin: SeedOrigin,
}

/// Builds the polyhedron cut out by the seeds, in order, and pairs its faces.
fn assemble(model: Model, kind: DomainKind, seeds: &[Seed], cands: &[Cand], mode: Mode, tol: f64) -> Result<FundamentalPolyhedron> {
    let mut poly = Polytope::new(model.dim());
    let mut origin_of: Vec<Option<usize>> = vec![None; poly.cuts.len()];
    for (i, s) in seeds.iter().enumerate() {
        if poly.add(s.cut).is_some() {
            origin_of.push(Some(i));
        }
    }
    let facet_cuts: Vec<usize> = poly.facets().into_iter().filter(|&k| origin_of[k].is_some()).collect();
    let vertex_tol = 1e-9;
    let vertices: Vec<PolyVertex> = poly
        .vertices
        .iter()
        .map(|v| {
            let n = v.norm();
            let location = if n > 1.0 + 1e-7 {
                VertexLocation::Beyond
            } else {
                match uh_from_klein(&v.y, 1e-7) {
                    UhLocation::Interior(p) => VertexLocation::Finite(p),
                    UhLocation::Ideal(z) => VertexLocation::Ideal(z),
                    UhLocation::Infinity => VertexLocation::Infinity,
                }
            };
            PolyVertex { klein: v.y, location }
        })
        .collect();
    let _ = vertex_tol;
    struct Pending {
        halfspace: HalfSpace,
        source: FaceSource,
        vertices: Vec<usize>,
    }
    let mut pending: Vec<Pending> = Vec::new();
    for &k in &facet_cuts {
        let seed = &seeds[origin_of[k].expect("facet comes from a seed")];
        let (halfspace, _, source) = match &seed.origin {
            SeedOrigin::Fixed(h, c, s) => (h.clone(), c.clone(), *s),
            SeedOrigin::Cand(i) => {
                let g = cands[*i].elem.element();
                let (h, source) = match mode {
                    Mode::Dirichlet => (dirichlet_halfspace(&g)?, FaceSource::Bisector),
                    Mode::Ford => (isometric_exterior(&g)?, FaceSource::IsometricSphere),
                };
                let same: Vec<MoebiusElement> = cands
                    .iter()
                    .filter(|c| same_cut(&c.cut, &seed.cut))
                    .map(|c| {
                        let e = c.elem.element();
                        if mode == Mode::Dirichlet {
                            e.inverse()
                        } else {
                            e
                        }
                    })
                    .collect();
                (h, same, source)
            }
        };
        pending.push(Pending { halfspace, source, vertices: poly.vertices_on(k) });
    }
    pending.sort_by_key(|p| p.halfspace.key());
    let mut faces: Vec<Face> = pending
        .into_iter()
        .map(|p| {
            let vertical = p.halfspace.form().alpha.is_zero_tol(1e-12);
            Face { halfspace: p.halfspace, pairing: None, partner: None, vertical, source: p.source, vertices: p.vertices }
        })
        .collect();
    // each candidate list is tried in order; the first consistent pairing wins
    let in_model: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| f.vertices.iter().copied().filter(|&v| vertices[v].in_model()).collect())
        .collect();
    let cand_lists: Vec<Vec<MoebiusElement>> = facet_pairing_candidates(&faces, seeds, &origin_of, &facet_cuts, cands, mode);
    for i in 0..faces.len() {
        'cands: for g in &cand_lists[i] {
            let mapped: Vec<[f64; 3]> = in_model[i].iter().map(|&v| klein_map(g, &vertices[v].klein)).collect();
            for p in 0..faces.len() {
                if in_model[p].len() != mapped.len() {
                    continue;
                }
                let matches = mapped.iter().all(|y| {
                    in_model[p].iter().any(|&w| dist(&vertices[w].klein, y) < 1e-7)
                });
                if !matches {
                    continue;
                }
                let Ok(img) = faces[i].halfspace.map(g) else { continue };
                if img.same_as(&faces[p].halfspace.complement()) {
                    faces[i].pairing = Some(g.clone());
                    faces[i].partner = Some(p);
                    break 'cands;
                }
            }
        }
    }
    let _ = tol;
    Ok(FundamentalPolyhedron {
        model,
        kind,
        origin: String::new(),
        faces,
        vertices,
        edge_cycles: Vec::new(),
        volume_estimate: None,
        report: PoincareReport::default(),
        bound: 0.0,
        rounds: 0,
        stabilizer: Vec::new(),
    })
}

/// Pairing candidates in face order (faces were sorted after extraction).
fn facet_pairing_candidates(
    faces: &[Face],
    seeds: &[Seed],
    origin_of: &[Option<usize>],
    facet_cuts: &[usize],
    cands: &[Cand],
    mode: Mode,
) -> Vec<Vec<MoebiusElement>> {
    let mut by_key: Vec<(String, Vec<MoebiusElement>)> = Vec::new();
    for &k in facet_cuts {
        let seed = &seeds[origin_of[k].unwrap()];
        let (key, list) = match &seed.origin {
            SeedOrigin::Fixed(h, c, _) => (h.key(), c.clone()),
            SeedOrigin::Cand(i) => {
                let g = cands[*i].elem.element();
                let h = match mode {
                    Mode::Dirichlet => dirichlet_halfspace(&g).unwrap(),
                    Mode::Ford => isometric_exterior(&g).unwrap(),
                };
                let list = cands
                    .iter()
                    .filter(|c| same_cut(&c.cut, &seed.cut))
                    .map(|c| {
                        let e = c.elem.element();
                        if mode == Mode::Dirichlet {
                            e.inverse()
                        } else {
                            e
                        }
                    })
                    .collect();
                (h.key(), list)
            }
        };
        by_key.push((key, list));
    }
    faces
        .iter()
        .map(|f| {
            let key = f.halfspace.key();
            by_key.iter().find(|(k, _)| *k == key).map(|(_, l)| l.clone()).unwrap_or_default()
        })
        .collect()
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Pairing closure, ridge cycles and finite volume.
pub fn verify_poincare(poly: &FundamentalPolyhedron, tol: f64) -> (PoincareReport, Vec<EdgeCycle>) {
    let mut rep = PoincareReport::default();
    rep.unpaired = (0..poly.faces.len()).filter(|&i| poly.faces[i].partner.is_none()).collect();
    for &i in &rep.unpaired {
        rep.failures.push(format!("face {i} is unpaired"));
    }
    // the pairing must carry the face's vertices onto the partner's
    for (i, f) in poly.faces.iter().enumerate() {
        let (Some(g), Some(p)) = (&f.pairing, f.partner) else { continue };
        let ok = f.vertices.iter().filter(|&&v| poly.vertices[v].in_model()).all(|&v| {
            let y = klein_map(g, &poly.vertices[v].klein);
            poly.faces[p].vertices.iter().any(|&w| dist(&poly.vertices[w].klein, &y) < 1e-7)
        });
        if !ok {
            rep.unpaired.push(i);
            rep.failures.push(format!("pairing of face {i} does not map it onto face {p}"));
        }
    }
    rep.pairing_closure = rep.unpaired.is_empty();
    rep.finite_volume = !poly.faces.is_empty() && poly.vertices.iter().all(|v| v.in_model()) && !poly.vertices.is_empty();
    if !rep.finite_volume {
        rep.failures.push("infinite volume".into());
    }
    let cycles = if rep.pairing_closure { ridge_cycles(poly, tol) } else { Vec::new() };
    rep.cycles_ok = rep.pairing_closure && cycles.iter().all(|c| c.pass);
    for (k, c) in cycles.iter().enumerate() {
        if !c.pass {
            rep.failures.push(format!("cycle {k} has angle sum {}", c.angle_sum));
        }
    }
    rep.passed = rep.pairing_closure && rep.cycles_ok && rep.finite_volume;
    (rep, cycles)
}

struct Ridge {
    faces: (usize, usize),
    verts: Vec<usize>,
    angle: f64,
}

fn ridges(poly: &FundamentalPolyhedron) -> Vec<Ridge> {
    let need = if poly.model == Model::H2 { 1 } else { 2 };
    let cuts = poly.cuts();
    let mut out = Vec::new();
    for i in 0..poly.faces.len() {
        for j in i + 1..poly.faces.len() {
            let common: Vec<usize> = poly.faces[i]
                .vertices
                .iter()
                .copied()
                .filter(|v| poly.faces[j].vertices.contains(v) && poly.vertices[*v].in_model())
                .collect();
            if common.len() >= need {
                let ideal_only = common.iter().all(|&v| !matches!(poly.vertices[v].location, VertexLocation::Finite(_)));
                let angle = if poly.model == Model::H2 && ideal_only { 0.0 } else { dihedral_angle(&cuts[i], &cuts[j]) };
                out.push(Ridge { faces: (i, j), verts: common, angle });
            }
        }
    }
    out
}

fn ridge_cycles(poly: &FundamentalPolyhedron, tol: f64) -> Vec<EdgeCycle> {
    let rs = ridges(poly);
    let mut visited = vec![false; rs.len()];
    let mut out = Vec::new();
    let find = |verts: &[[f64; 3]], face: usize| -> Option<usize> {
        rs.iter().position(|r| {
            (r.faces.0 == face || r.faces.1 == face)
                && r.verts.len() == verts.len()
                && verts.iter().all(|y| r.verts.iter().any(|&w| dist(&poly.vertices[w].klein, y) < 1e-7))
        })
    };
    for start in 0..rs.len() {
        if visited[start] {
            continue;
        }
        let mut state = (start, rs[start].faces.0);
        let mut cycle = Vec::new();
        let mut sum = 0.0;
        let mut ok = true;
        for _ in 0..4 * rs.len() + 4 {
            let (r, f) = state;
            visited[r] = true;
            cycle.push(rs[r].faces);
            sum += rs[r].angle;
            let face = &poly.faces[f];
            let (Some(g), Some(p)) = (&face.pairing, face.partner) else {
                ok = false;
                break;
            };
            let img: Vec<[f64; 3]> = rs[r].verts.iter().map(|&v| klein_map(g, &poly.vertices[v].klein)).collect();
            let Some(r2) = find(&img, p) else {
                ok = false;
                break;
            };
            let (a, b) = rs[r2].faces;
            let f2 = if a == p { b } else { a };
            state = (r2, f2);
            if state == (start, rs[start].faces.0) {
                break;
            }
        }
        if state != (start, rs[start].faces.0) {
            ok = false;
        }
        let (order, pass) = if sum < 1e-9 {
            (None, ok)
        } else {
            let m = 2.0 * PI / sum;
            let mr = m.round();
            (Some(mr.max(0.0) as u32), ok && mr >= 1.0 && (m - mr).abs() < 1e-6_f64.max(tol))
        };
        out.push(EdgeCycle { ridges: cycle, angle_sum: sum, order, pass });
    }
    out
}

/// Hyperbolic area (Gauss–Bonnet) or a quadrature estimate of the volume.
pub fn volume_estimate(poly: &FundamentalPolyhedron) -> Option<f64> {
    if !poly.report.finite_volume {
        return None;
    }
    match poly.model {
        Model::H2 => {
            let rs = ridges(poly);
            let n = rs.len() as f64;
            Some((n - 2.0) * PI - rs.iter().map(|r| r.angle).sum::<f64>())
        }
        Model::H3 => Some(volume_h3(poly, 240)),
    }
}

/// `∫ (1/2)(r_lo⁻² − r_hi⁻²) dA` over the projection to the boundary.
fn volume_h3(poly: &FundamentalPolyhedron, n: usize) -> f64 {
    let pts: Vec<Complex64> = poly
        .vertices
        .iter()
        .filter_map(|v| match v.location {
            VertexLocation::Finite(p) => Some(p.z),
            VertexLocation::Ideal(z) => Some(z),
            _ => None,
        })
        .collect();
    if pts.is_empty() {
        return 0.0;
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in &pts {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let forms: Vec<(f64, f64, Complex64)> = poly.faces.iter().map(|f| f.halfspace.form().to_f64()).collect();
    let (hx, hy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let z = Complex64::new(x0 + (i as f64 + 0.5) * hx, y0 + (j as f64 + 0.5) * hy);
            let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
            let mut empty = false;
            for &(al, be, v) in &forms {
                let g = al * z.norm_sqr() - 2.0 * (v.conj() * z).re + be;
                if al.abs() < 1e-14 {
                    if g < 0.0 {
                        empty = true;
                        break;
                    }
                } else if al > 0.0 {
                    lo = lo.max(-g / al);
                } else {
                    hi = hi.min(g / -al);
                }
            }
            if empty || lo >= hi || lo <= 0.0 {
                continue;
            }
            total += 0.5 * (1.0 / lo - 1.0 / hi);
        }
    }
    total * hx * hy
}

/// Dirichlet domain centered at `P₀`.
pub fn dirichlet_domain(input: &GroupInput, opts: &ReductionOptions) -> Result<FundamentalPolyhedron> {
    opts.validate()?;
    let model = input.model;
    for (index, g) in input.center_stabilizer.iter().enumerate() {
        if !g.fixes_center() {
            return Err(Error::NotStabilizing { index });
        }
    }
    let group = close_group(model, &input.center_stabilizer, 1000)?;
    let cell = stabilizer_cell_of_group(&group, model)?;
    let stab_keys: HashSet<String> = group.iter().map(|g| g.key()).collect();
    reduce(input, opts, Mode::Dirichlet, |cands| {
        let mut seeds: Vec<Seed> = cell
            .iter()
            .map(|(h, c)| Seed { cut: Cut::from_form(h.form()), origin: SeedOrigin::Fixed(h.clone(), c.clone(), FaceSource::StabilizerCell) })
            .collect();
        for (i, c) in cands.iter().enumerate() {
            let fixes = match &c.elem {
                CandElem::Small(m) => m.norm == 2,
                CandElem::Exact(g) => g.fixes_center(),
            };
            if fixes {
                let g = c.elem.element();
                let g = if input.kind().is_exact() { g } else { g.to_float() };
                let known = stab_keys.contains(&g.key()) || group.iter().any(|s| s.approx_eq(&g, 1e-9));
                if !known {
                    return Err(Error::CenterNotFree { element: g.key() });
                }
                continue;
            }
            seeds.push(Seed { cut: c.cut, origin: SeedOrigin::Cand(i) });
        }
        Ok(seeds)
    })
    .map(|mut p| {
        p.kind = DomainKind::Dirichlet { center: model.center() };
        p.stabilizer = group.clone();
        p
    })
}

/// Dirichlet domain centered at `t·P₀`, computed for the conjugated group and
/// mapped back.
pub fn dirichlet_domain_at_height(input: &GroupInput, t: &BigRational, opts: &ReductionOptions) -> Result<FundamentalPolyhedron> {
    if t.is_one() {
        return dirichlet_domain(input, opts);
    }
    let conj = input.rescaled(t)?;
    match dirichlet_domain(&conj, opts) {
        Ok(p) => {
            let mut p = p.rescale(t);
            p.origin = input.origin.clone();
            Ok(p)
        }
        Err(Error::BoundExhausted { bound, partial }) => Err(Error::BoundExhausted { bound, partial: Box::new(partial.rescale(t)) }),
        Err(e) => Err(e),
    }
}

/// Ford domain: cusp cell walls and exteriors of isometric spheres.
pub fn ford_domain(input: &GroupInput, opts: &ReductionOptions) -> Result<FundamentalPolyhedron> {
    opts.validate()?;
    let parabolic = input.cusp_generators.iter().any(|g| {
        let tr = g.trace();
        !g.is_identity() && (tr.approx_eq(&Scalar::int(2).promote(tr.kind()), 1e-12) || tr.approx_eq(&Scalar::int(-2).promote(tr.kind()), 1e-12))
    });
    let cell = cusp_cell_seeds(input)?;
    if !parabolic {
        return Err(Error::NotACuspGroup { index: 0 });
    }
    reduce(input, opts, Mode::Ford, |cands| {
        let mut seeds: Vec<Seed> = cell
            .iter()
            .map(|(h, c)| Seed { cut: Cut::from_form(h.form()), origin: SeedOrigin::Fixed(h.clone(), c.clone(), FaceSource::CuspCell) })
            .collect();
        for (i, c) in cands.iter().enumerate() {
            let c_zero = match &c.elem {
                CandElem::Small(m) => m.e[2].x == 0 && m.e[2].y == 0,
                CandElem::Exact(g) => g.c.is_zero(),
            };
            if !c_zero {
                seeds.push(Seed { cut: c.cut, origin: SeedOrigin::Cand(i) });
            }
        }
        Ok(seeds)
    })
}

fn reduce(
    input: &GroupInput,
    opts: &ReductionOptions,
    mode: Mode,
    make_seeds: impl Fn(&[Cand]) -> Result<Vec<Seed>>,
) -> Result<FundamentalPolyhedron> {
    let mut bound = opts.norm_bound_initial;
    let mut prev: Option<Vec<String>> = None;
    let mut last: Option<FundamentalPolyhedron> = None;
    for round in 1..=opts.max_rounds {
        let cands = candidates(input, bound, opts, mode)?;
        let seeds = make_seeds(&cands)?;
        let kind = match mode {
            Mode::Dirichlet => DomainKind::Dirichlet { center: input.model.center() },
            Mode::Ford => DomainKind::Ford,
        };
        let mut poly = assemble(input.model, kind, &seeds, &cands, mode, opts.tol)?;
        poly.origin = input.origin.clone();
        poly.bound = bound;
        poly.rounds = round;
        let (report, cycles) = verify_poincare(&poly, opts.tol);
        poly.report = report;
        poly.edge_cycles = cycles;
        poly.volume_estimate = volume_estimate(&poly);
        let keys = poly.face_keys();
        let stable = prev.as_ref() == Some(&keys);
        if stable && poly.report.passed {
            return Ok(poly);
        }
        prev = Some(keys);
        last = Some(poly);
        if bound >= opts.norm_bound_max {
            break;
        }
        bound = (bound * opts.growth).ceil().min(opts.norm_bound_max);
    }
    Err(Error::BoundExhausted { bound, partial: Box::new(last.expect("at least one round")) })
}

/// Rebuilds a polyhedron from face half-spaces and their pairings (as exported),
/// recomputing vertices, partners and the verification report.
pub fn rebuild(
    model: Model,
    kind: DomainKind,
    faces: Vec<(HalfSpace, Option<MoebiusElement>, FaceSource)>,
    tol: f64,
) -> Result<FundamentalPolyhedron> {
    let seeds: Vec<Seed> = faces
        .into_iter()
        .map(|(h, g, src)| Seed { cut: Cut::from_form(h.form()), origin: SeedOrigin::Fixed(h, g.into_iter().collect(), src) })
        .collect();
    let mut poly = assemble(model, kind, &seeds, &[], Mode::Dirichlet, tol)?;
    let (report, cycles) = verify_poincare(&poly, tol);
    poly.report = report;
    poly.edge_cycles = cycles;
    poly.volume_estimate = volume_estimate(&poly);
    Ok(poly)
}

/// Deduplicated side pairings: one per `{γ, γ⁻¹}` plus self-paired faces.
pub fn side_pairings(poly: &FundamentalPolyhedron) -> Result<Vec<MoebiusElement>> {
    let mut out: Vec<MoebiusElement> = Vec::new();
    for (face, f) in poly.faces.iter().enumerate() {
        let g = f.pairing.as_ref().ok_or(Error::UnpairedFace { face })?;
        let inv = g.inverse();
        if !out.iter().any(|h| h == g || *h == inv || (!g.is_exact() && (h.approx_eq(g, 1e-9) || h.approx_eq(&inv, 1e-9)))) {
            out.push(g.clone());
        }
    }
    out.sort_by(canonical_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bianchi::bianchi_input;

    fn psl2z_center_2i() -> FundamentalPolyhedron {
        dirichlet_domain_at_height(&GroupInput::psl2z(), &BigRational::from_integer(2.into()), &ReductionOptions::default()).unwrap()
    }

    fn finite_vertices(p: &FundamentalPolyhedron) -> Vec<PointUH> {
        p.vertices
            .iter()
            .filter_map(|v| match v.location {
                VertexLocation::Finite(p) => Some(p),
                _ => None,
            })
            .collect()
    }

    fn assert_modular_triangle(p: &FundamentalPolyhedron) {
        assert_eq!(p.faces.len(), 3);
        let fin = finite_vertices(p);
        assert_eq!(fin.len(), 2);
        for v in fin {
            assert!((v.z.re.abs() - 0.5).abs() < 1e-9 && (v.r - 3f64.sqrt() / 2.0).abs() < 1e-9);
        }
        assert!(p.vertices.iter().any(|v| v.location == VertexLocation::Infinity));
        assert!(p.report.passed, "{:?}", p.report);
    }

    #[test]
    fn psl2z_dirichlet_at_2i() {
        let p = psl2z_center_2i();
        assert_modular_triangle(&p);
        let pairs = side_pairings(&p).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.contains(&MoebiusElement::int(Model::H2, 0, 1, -1, 0).unwrap()));
        let area = p.volume_estimate.unwrap();
        assert!((area - PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn psl2z_ford() {
        let p = ford_domain(&GroupInput::psl2z(), &ReductionOptions::default()).unwrap();
        assert_modular_triangle(&p);
    }

    #[test]
    fn translation_strip_is_not_cofinite() {
        let t = MoebiusElement::int(Model::H2, 1, 1, 0, 1).unwrap();
        let input = GroupInput::new(Model::H2, vec![t.clone()], vec![t.clone()], vec![], "strip").unwrap();
        match dirichlet_domain(&input, &ReductionOptions::default()) {
            Err(Error::BoundExhausted { partial, .. }) => {
                assert!(!partial.report.finite_volume);
                assert_eq!(partial.faces.len(), 2);
                assert_eq!(side_pairings(&partial).unwrap(), vec![t]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ford_needs_cusp_group() {
        let s = MoebiusElement::int(Model::H2, 0, 1, -1, 0).unwrap();
        assert!(matches!(GroupInput::new(Model::H2, vec![s.clone()], vec![s], vec![], "S"), Err(Error::NotACuspGroup { index: 0 })));
    }

    #[test]
    fn enumerate_examples() {
        let input = GroupInput::psl2z();
        let four = enumerate_group(&input, 4.0).unwrap();
        assert!(four.iter().all(|g| g.norm_sq_f64() <= 4.0));
        for (a, b, c, d) in [(1, 0, 0, 1), (0, 1, -1, 0), (1, 1, 0, 1), (1, -1, 0, 1), (1, -1, 1, 0), (0, 1, -1, 1)] {
            assert!(four.contains(&MoebiusElement::int(Model::H2, a, b, c, d).unwrap()), "{a} {b} {c} {d}");
        }
        let two = enumerate_group(&input, 2.0).unwrap();
        assert_eq!(two.len(), 2);
        let empty = GroupInput::new(Model::H2, vec![], vec![], vec![], "trivial").unwrap();
        assert_eq!(enumerate_group(&empty, 10.0).unwrap().len(), 1);
    }

    #[test]
    fn cusp_cells() {
        let t = MoebiusElement::int(Model::H2, 1, 1, 0, 1).unwrap();
        let input = GroupInput::new(Model::H2, vec![t.clone()], vec![t], vec![], "T").unwrap();
        assert_eq!(cusp_cell(&input).unwrap().len(), 2);
        assert_eq!(cusp_cell(&bianchi_input(2).unwrap()).unwrap().len(), 4);
        assert_eq!(cusp_cell(&bianchi_input(7).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn stabilizer_cells() {
        assert!(stabilizer_cell(&[], Model::H3).unwrap().is_empty());
        let s = MoebiusElement::int(Model::H3, 0, 1, -1, 0).unwrap();
        assert_eq!(stabilizer_cell(&[s], Model::H3).unwrap().len(), 1);
        let one = bianchi_input(1).unwrap();
        assert_eq!(stabilizer_cell(&one.center_stabilizer, Model::H3).unwrap().len(), 2);
        let t = MoebiusElement::int(Model::H3, 1, 1, 0, 1).unwrap();
        assert!(matches!(stabilizer_cell(&[t], Model::H3), Err(Error::NotStabilizing { index: 0 })));
    }

    #[test]
    fn bianchi_two() {
        let p = dirichlet_domain(&bianchi_input(2).unwrap(), &ReductionOptions::default()).unwrap();
        assert!(p.report.passed);
        assert_eq!(p.faces.iter().filter(|f| f.vertical).count(), 4);
    }
}
