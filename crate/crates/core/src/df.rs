//! DF verdicts, double Dirichlet centers, trace/axis checks and the reflection
//! and Coxeter extensions built from DF domains.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domain::{close_group, FundamentalPolyhedron};
use crate::error::{Error, Result};
use crate::hyperplanes::{d_equals_conj_a, poincare_bisector, HalfSpace, HermitianForm};
use crate::moebius::{hyperbolic_distance, Model, MoebiusElement, PointUH};
use crate::polytope::{dihedral_angle, Cut, Polytope};
use crate::scalar::{rat, Scalar, ScalarKind};
use num_traits::Zero;

/// Per-face choice of pairing that satisfies `d = ā`.
#[derive(Clone, Debug)]
pub struct DfWitness {
    pub face: usize,
    pub pairing: MoebiusElement,
    /// The element actually tested (`s·γ` or `γ·s`), when it differs from the pairing.
    pub composite: Option<MoebiusElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DfFailure {
    pub face: usize,
    /// Smallest `|d − ā|` over all allowed composites.
    pub min_defect: f64,
}

#[derive(Clone, Debug)]
pub struct DfVerdict {
    pub is_df: bool,
    pub witnesses: Vec<DfWitness>,
    pub failures: Vec<DfFailure>,
    pub traces: Vec<Scalar>,
}

/// Composites `s·γ` and `γ·s` for `s` in the group generated by `stab`,
/// left composites first.
fn composites(g: &MoebiusElement, group: &[MoebiusElement]) -> Vec<MoebiusElement> {
    let mut out = vec![g.clone()];
    for s in group.iter().filter(|s| !s.is_identity()) {
        out.push(s.mul_unchecked(g));
    }
    for s in group.iter().filter(|s| !s.is_identity()) {
        out.push(g.mul_unchecked(s));
    }
    out
}

/// Whether every face pairing, adjusted by the center stabilizer, has `d = ā`.
pub fn df_check(poly: &FundamentalPolyhedron, stab: &[MoebiusElement]) -> DfVerdict {
    let group = close_group(poly.model, stab, 1000).unwrap_or_default();
    let mut verdict = DfVerdict { is_df: true, witnesses: Vec::new(), failures: Vec::new(), traces: Vec::new() };
    for (face, f) in poly.faces.iter().enumerate() {
        let Some(g) = &f.pairing else {
            verdict.failures.push(DfFailure { face, min_defect: f64::INFINITY });
            continue;
        };
        verdict.traces.push(g.trace());
        let comps = composites(g, &group);
        match comps.iter().find(|h| d_equals_conj_a(h)) {
            Some(h) => verdict.witnesses.push(DfWitness {
                face,
                pairing: g.clone(),
                composite: (h != g).then(|| h.clone()),
            }),
            None => {
                let min_defect = comps
                    .iter()
                    .map(|h| (&h.d - &h.a.conj()).to_c64().norm())
                    .fold(f64::INFINITY, f64::min);
                verdict.failures.push(DfFailure { face, min_defect });
            }
        }
    }
    verdict.is_df = verdict.failures.is_empty();
    verdict
}

/// Left witness composite `s·γ`: it has the same bisector as `γ`.
fn left_witness(g: &MoebiusElement, group: &[MoebiusElement]) -> Option<MoebiusElement> {
    std::iter::once(g.clone())
        .chain(group.iter().map(|s| s.mul_unchecked(g)))
        .find(d_equals_conj_a)
}

/// `max |cosh ρ(P, A) − cosh ρ(P, B)|` relative, over sample points of `Σ_γ`.
fn equidistance_defect(g: &MoebiusElement, a: &PointUH, b: &PointUH) -> Result<f64> {
    let s = poincare_bisector(g)?;
    let mut worst = 0.0f64;
    for k in 0..64 {
        let p = s.sample_point((k as f64 + 0.5) / 64.0, (k as f64 * 0.618_033_988_7).fract());
        let da = hyperbolic_distance(&p, a);
        let db = hyperbolic_distance(&p, b);
        worst = worst.max((da - db).abs() / da.max(1.0));
    }
    Ok(worst)
}

/// Whether `Σ_γ` is also the bisector of `t₀·i` and `γ⁻¹(t₀·i)`.
pub fn double_center_check(g: &MoebiusElement, t0: f64) -> Result<bool> {
    if g.model != Model::H2 {
        return Err(Error::ModelMismatch);
    }
    if !(t0 > 0.0) || (t0 - 1.0).abs() < 1e-15 {
        return Err(Error::Config("t0 must be positive and different from 1".into()));
    }
    if g.fixes_center() {
        return Err(Error::CenterStabilized);
    }
    let c = PointUH { z: Complex64::new(0.0, 0.0), r: t0 };
    let img = g.inverse().act(&c);
    Ok(equidistance_defect(g, &c, &img)? < 1e-9)
}

#[derive(Clone, Debug, Serialize)]
pub struct AxisFace {
    pub face: usize,
    pub a_equals_d: bool,
    /// `(t, pass)` for each tested height.
    pub heights: Vec<(f64, bool)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxisReport {
    pub pass: bool,
    pub faces: Vec<AxisFace>,
}

pub const AXIS_HEIGHTS: [f64; 3] = [0.5, 2.0, 5.0];

/// Whether every point of the vertical geodesic through the center is again a
/// Dirichlet center with the same faces.
pub fn axis_of_centers(poly: &FundamentalPolyhedron) -> AxisReport {
    let center = poly.center().unwrap_or_else(|| poly.model.center());
    let mut faces = Vec::new();
    for (i, f) in poly.faces.iter().enumerate() {
        let Some(g) = &f.pairing else {
            faces.push(AxisFace { face: i, a_equals_d: false, heights: Vec::new() });
            continue;
        };
        let a_eq_d = (&g.a - &g.d).is_zero_tol(1e-12);
        let heights = AXIS_HEIGHTS
            .iter()
            .map(|&t| {
                let p = PointUH { z: center.z, r: center.r * t };
                let q = g.inverse().act(&p);
                if q.euclid_dist_sq(&p) < 1e-24 {
                    return (t, true);
                }
                let surf = f.halfspace.surface();
                let mut ok = true;
                for k in 0..64 {
                    let x = surf.sample_point((k as f64 + 0.5) / 64.0, 0.0);
                    let da = hyperbolic_distance(&x, &p);
                    let db = hyperbolic_distance(&x, &q);
                    if (da - db).abs() > 1e-9 * da.max(1.0) {
                        ok = false;
                        break;
                    }
                }
                (t, ok)
            })
            .collect();
        faces.push(AxisFace { face: i, a_equals_d: a_eq_d, heights });
    }
    let pass = faces.iter().all(|f| f.a_equals_d && f.heights.iter().all(|h| h.1));
    AxisReport { pass, faces }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceAxisFace {
    pub face: usize,
    pub trace_real: bool,
    /// Distance from 0 to the perpendicular bisector of the two sphere centers;
    /// `None` for `c = 0`.
    pub axis_offset: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceAxisReport {
    pub pass: bool,
    pub faces: Vec<TraceAxisFace>,
}

/// Real traces and a common vertical axis for the bisecting planes.
pub fn trace_axis_check(poly: &FundamentalPolyhedron) -> Result<TraceAxisReport> {
    let group = close_group(poly.model, &poly.stabilizer, 1000)?;
    let verdict = df_check(poly, &group);
    if !verdict.is_df {
        return Err(Error::NotDF);
    }
    let mut faces = Vec::new();
    for w in &verdict.witnesses {
        let g = w.composite.as_ref().unwrap_or(&w.pairing);
        let tr = g.trace();
        let trace_real = tr.is_real() || (!tr.is_exact() && tr.to_c64().im.abs() < 1e-9);
        let axis_offset = if g.c.is_zero() {
            None
        } else {
            let [a, _, c, _] = g.to_c64();
            let p1 = -a.conj() / c;
            let p2 = a / c;
            let sep = (p2 - p1).norm();
            Some(if sep < 1e-12 { 0.0 } else { (p2.norm_sqr() - p1.norm_sqr()).abs() / (2.0 * sep) })
        };
        let pass = trace_real && axis_offset.map_or(true, |o| o < 1e-9);
        faces.push(TraceAxisFace { face: w.face, trace_real, axis_offset, pass });
    }
    Ok(TraceAxisReport { pass: faces.iter().all(|f| f.pass), faces })
}

/// An orientation-preserving or -reversing isometry `P ↦ M·conjᶜ(P)`, with
/// `M` taken up to scalars.
#[derive(Clone, Debug)]
pub struct ExtElement {
    pub m: [Scalar; 4],
    pub conj: bool,
}

impl ExtElement {
    pub fn from_moebius(g: &MoebiusElement) -> Self {
        ExtElement { m: [g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone()], conj: false }
    }

    /// Reflection in the surface of a form: `z ↦ (v z̄ − β)/(α z̄ − v̄)`.
    pub fn reflection(form: &HermitianForm) -> Self {
        ExtElement { m: [form.v.clone(), -&form.beta, form.alpha.clone(), -&form.v.conj()], conj: true }
    }

    /// `z ↦ −z̄`.
    pub fn sigma_x() -> Self {
        ExtElement { m: [Scalar::one(), Scalar::zero(), Scalar::zero(), -Scalar::one()], conj: true }
    }

    /// `z ↦ z̄`.
    pub fn sigma_y() -> Self {
        ExtElement { m: [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()], conj: true }
    }

    /// `self ∘ other`.
    pub fn then_apply(&self, other: &ExtElement) -> ExtElement {
        let o: Vec<Scalar> = other.m.iter().map(|x| if self.conj { x.conj() } else { x.clone() }).collect();
        let [a, b, c, d] = &self.m;
        ExtElement {
            m: [
                &(a * &o[0]) + &(b * &o[2]),
                &(a * &o[1]) + &(b * &o[3]),
                &(c * &o[0]) + &(d * &o[2]),
                &(c * &o[1]) + &(d * &o[3]),
            ],
            conj: self.conj ^ other.conj,
        }
    }

    /// Projective equality: all 2×2 minors of the stacked entries vanish.
    pub fn same_as(&self, other: &ExtElement, tol: f64) -> bool {
        if self.conj != other.conj {
            return false;
        }
        let exact = self.m.iter().chain(&other.m).all(|x| x.is_exact());
        if exact {
            for i in 0..4 {
                for j in i + 1..4 {
                    if !(&(&self.m[i] * &other.m[j]) - &(&self.m[j] * &other.m[i])).is_zero() {
                        return false;
                    }
                }
            }
            true
        } else {
            let x: Vec<Complex64> = self.m.iter().map(|s| s.to_c64()).collect();
            let y: Vec<Complex64> = other.m.iter().map(|s| s.to_c64()).collect();
            let nx = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let ny = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            (0..4).all(|i| (i + 1..4).all(|j| (x[i] * y[j] - x[j] * y[i]).norm() <= tol * nx * ny))
        }
    }

    pub fn is_identity(&self) -> bool {
        let one = ExtElement { m: [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()], conj: false };
        self.same_as(&one, 1e-9)
    }

    pub fn act(&self, p: &PointUH) -> PointUH {
        let z = if self.conj { p.z.conj() } else { p.z };
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| self.m[i].to_c64());
        let det = (a * d - b * c).norm();
        let r2 = p.r * p.r;
        let czd = c * z + d;
        let den = czd.norm_sqr() + c.norm_sqr() * r2;
        let num = (a * z + b) * czd.conj() + a * c.conj() * r2;
        PointUH { z: num / den, r: p.r * det / den }
    }
}

impl std::fmt::Display for ExtElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}; {}, {})", self.m[0], self.m[1], self.m[2], self.m[3])?;
        if self.conj {
            write!(f, "∘conj")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    ReflectionTilde,
    CoxeterHat,
    BianchiXy,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub word: String,
    /// `None` for "no relation found up to the cap".
    pub order: Option<u32>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub kind: ExtensionKind,
    pub generators: Vec<ExtElement>,
    pub generator_names: Vec<String>,
    pub relation_checks: Vec<RelationCheck>,
    pub index_claim: u32,
    /// Walls of the reflection cell.
    pub polygon: Vec<HalfSpace>,
    pub angles: Vec<f64>,
    /// Coxeter exponents `m_ij`, `None` meaning ∞.
    pub coxeter_matrix: Option<Vec<Vec<Option<u32>>>>,
    pub passed: bool,
}

pub const ORDER_CAP: u32 = 64;
const SAMPLES: usize = 100;

/// `π/α` is an integer, or `α` is 0.
pub fn is_submultiple_of_pi(alpha: f64, tol: f64) -> bool {
    if alpha < 1e-9 {
        return true;
    }
    let q = PI / alpha;
    (q - q.round()).abs() < tol && q.round() >= 1.0
}

fn sample_points(model: Model, n: usize, seed: u64) -> Vec<PointUH> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x = rng.gen_range(-2.0..2.0);
            let y = if model == Model::H3 { rng.gen_range(-2.0..2.0) } else { 0.0 };
            PointUH { z: Complex64::new(x, y), r: rng.gen_range(0.1..3.0) }
        })
        .collect()
}

fn same_point(p: &PointUH, q: &PointUH, tol: f64) -> bool {
    let scale = 1.0 + p.z.norm() + p.r;
    (p.z - q.z).norm() <= tol * scale && (p.r - q.r).abs() <= tol * scale
}

/// Pointwise agreement on the sample set.
fn agree(f: &ExtElement, g: &ExtElement, pts: &[PointUH]) -> bool {
    pts.iter().all(|p| same_point(&f.act(p), &g.act(p), 1e-9))
}

/// Facets of a cut polytope and the dihedral angles at its ridges.
fn cell_angles(cuts: &[Cut], dim: usize) -> (Vec<usize>, Vec<f64>, Polytope) {
    let mut poly = Polytope::new(dim);
    let base = poly.cuts.len();
    let mut idx = vec![usize::MAX; base];
    for (i, c) in cuts.iter().enumerate() {
        if poly.add(*c).is_some() {
            idx.push(i);
        }
    }
    let facets: Vec<usize> = poly.facets().into_iter().filter(|&k| k >= base).collect();
    let mut angles = Vec::new();
    for (x, &i) in facets.iter().enumerate() {
        for &j in &facets[x + 1..] {
            if let Some(common) = poly.ridge(i, j) {
                if common.iter().any(|&v| poly.vertices[v].norm() < 1.0 - 1e-9) {
                    angles.push(dihedral_angle(&poly.cuts[i], &poly.cuts[j]));
                }
            }
        }
    }
    let facet_origin = facets.iter().map(|&k| idx[k]).collect();
    (facet_origin, angles, poly)
}

fn require_a_equals_d(poly: &FundamentalPolyhedron) -> Result<Vec<MoebiusElement>> {
    let mut out = Vec::new();
    for (face, f) in poly.faces.iter().enumerate() {
        let g = f.pairing.as_ref().ok_or(Error::UnpairedFace { face })?;
        if !(&g.a - &g.d).is_zero_tol(1e-12) {
            return Err(Error::NotReflective { element: g.key() });
        }
        out.push(g.clone());
    }
    Ok(out)
}

fn vertical_form(model: Model, v: Scalar, beta: Scalar) -> HermitianForm {
    let zero = Scalar::zero().promote(v.kind().join(beta.kind()).unwrap_or(ScalarKind::Float));
    HermitianForm::new(model, zero, v, beta)
}

/// `Γ̃ = ⟨σ, Γ⟩` for a Fuchsian DF polygon, with `σ` the reflection in the
/// imaginary axis.
pub fn reflection_extension(poly: &FundamentalPolyhedron) -> Result<ExtensionReport> {
    if poly.model != Model::H2 {
        return Err(Error::ModelMismatch);
    }
    let pairings = require_a_equals_d(poly)?;
    // x ≥ 0
    let half = HalfSpace::from_form(vertical_form(Model::H2, -Scalar::one(), Scalar::zero()))?;
    let mut spaces: Vec<HalfSpace> = poly.faces.iter().map(|f| f.halfspace.clone()).collect();
    spaces.push(half.clone());
    let cuts: Vec<Cut> = spaces.iter().map(|h| Cut::from_form(h.form())).collect();
    let (walls, angles, _) = cell_angles(&cuts, 2);
    let sigma = ExtElement::sigma_x();
    let mut generators = vec![sigma.clone()];
    let mut names = vec!["sigma".to_string()];
    let mut polygon = Vec::new();
    for &w in &walls {
        polygon.push(spaces[w].clone());
        if w + 1 == spaces.len() {
            continue;
        }
        generators.push(ExtElement::reflection(spaces[w].form()));
        names.push(format!("sigma_{w}"));
    }
    let pts = sample_points(Model::H2, SAMPLES, 7);
    let mut checks = Vec::new();
    for (g, n) in generators.iter().zip(&names) {
        let sq = g.then_apply(g);
        checks.push(RelationCheck { word: format!("{n}^2"), order: Some(2), pass: sq.is_identity() });
    }
    for (face, g) in pairings.iter().enumerate() {
        let refl = ExtElement::reflection(poly.faces[face].halfspace.form());
        let comp = sigma.then_apply(&refl);
        let ok = agree(&comp, &ExtElement::from_moebius(g), &pts);
        checks.push(RelationCheck { word: format!("sigma*sigma_face{face} = gamma_{face}"), order: None, pass: ok });
    }
    let angles_ok = angles.iter().all(|&a| is_submultiple_of_pi(a, 1e-6));
    let passed = angles_ok && checks.iter().all(|c| c.pass);
    Ok(ExtensionReport {
        kind: ExtensionKind::ReflectionTilde,
        generators,
        generator_names: names,
        relation_checks: checks,
        index_claim: 2,
        polygon,
        angles,
        coxeter_matrix: None,
        passed,
    })
}

fn h3_over_gaussian(g: &MoebiusElement) -> MoebiusElement {
    let k = ScalarKind::Quad(1);
    let (a, b, c, d) = if g.is_exact() {
        (g.a.promote(k), g.b.promote(k), g.c.promote(k), g.d.promote(k))
    } else {
        (g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone())
    };
    MoebiusElement::from_entries_unchecked(Model::H3, a, b, c, d)
}

/// Smallest `n ≤ cap` with `gⁿ = 1`.
fn element_order(g: &MoebiusElement, cap: u32) -> Option<u32> {
    let mut acc = g.clone();
    for n in 1..=cap {
        if acc.is_identity() {
            return Some(n);
        }
        acc = acc.mul_unchecked(g);
    }
    None
}

/// `Γ̂ = ⟨τ, Γ⟩` with `τ = (i, 0; 0, −i)`.
pub fn coxeter_extension(poly: &FundamentalPolyhedron) -> Result<ExtensionReport> {
    if poly.model != Model::H2 {
        return Err(Error::ModelMismatch);
    }
    let pairings = require_a_equals_d(poly)?;
    let pairings = crate::domain::side_pairings(poly)?
        .into_iter()
        .filter(|g| pairings.contains(g) || pairings.contains(&g.inverse()))
        .collect::<Vec<_>>();
    let i = if pairings.iter().all(|g| g.is_exact()) { Scalar::sqrt_neg(1) } else { Scalar::float(0.0, 1.0) };
    let tau = MoebiusElement::from_entries_unchecked(Model::H3, i.clone(), Scalar::zero(), Scalar::zero(), -&i);
    let mut gens = vec![tau.clone()];
    let mut names = vec!["tau".to_string()];
    for (k, g) in pairings.iter().enumerate() {
        gens.push(tau.mul_unchecked(&h3_over_gaussian(g)));
        names.push(format!("tau*g{k}"));
    }
    let mut checks = Vec::new();
    for (g, n) in gens.iter().zip(&names) {
        let ok = g.mul_unchecked(g).is_identity();
        checks.push(RelationCheck { word: format!("({n})^2"), order: Some(2), pass: ok });
    }
    let m: Vec<Vec<Option<u32>>> = gens
        .iter()
        .map(|x| gens.iter().map(|y| element_order(&x.mul_unchecked(y), ORDER_CAP)).collect())
        .collect();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            checks.push(RelationCheck {
                word: format!("({}*{})^m", names[a], names[b]),
                order: m[a][b],
                pass: m[a][b].map_or(true, |o| o >= 2),
            });
        }
    }
    let passed = checks.iter().all(|c| c.pass);
    Ok(ExtensionReport {
        kind: ExtensionKind::CoxeterHat,
        generators: gens.iter().map(ExtElement::from_moebius).collect(),
        generator_names: names,
        relation_checks: checks,
        index_claim: 2,
        polygon: Vec::new(),
        angles: Vec::new(),
        coxeter_matrix: Some(m),
        passed,
    })
}

/// Whether `s ∈ O_d` for an exact scalar.
fn in_ring(d: u64, s: &Scalar) -> bool {
    let Some((re, im, _)) = s.exact_parts() else { return false };
    if d % 4 == 3 {
        let (x, y) = (&re * rat(2), &im * rat(2));
        x.is_integer() && y.is_integer() && ((x.to_integer() - y.to_integer()) % num_bigint::BigInt::from(2)).is_zero()
    } else {
        re.is_integer() && im.is_integer()
    }
}

/// Whether an orientation-reversing `g` equals `σᵧ∘h` with `h ∈ PSL₂(O_d)`,
/// tested on all products `hᵢhⱼ/det h`.
fn in_extended_group(d: u64, g: &ExtElement) -> bool {
    if !g.conj || !g.m.iter().all(|x| x.is_exact()) {
        return false;
    }
    let h = ExtElement::sigma_y().then_apply(g);
    let det = &(&h.m[0] * &h.m[3]) - &(&h.m[1] * &h.m[2]);
    if det.is_zero() {
        return false;
    }
    (0..4).all(|i| (i..4).all(|j| in_ring(d, &(&(&h.m[i] * &h.m[j]) / &det))))
}

/// `⟨Γ, σₓ, σᵧ⟩` for a Bianchi DF domain.
pub fn bianchi_reflection_extension(d: u64, poly: &FundamentalPolyhedron) -> Result<ExtensionReport> {
    if d == 1 || d == 3 {
        return Err(Error::ExcludedDiscriminant(d));
    }
    let ring = crate::bianchi::ring(d)?;
    let group = close_group(poly.model, &poly.stabilizer, 1000)?;
    if !df_check(poly, &group).is_df {
        return Err(Error::NotDF);
    }
    let sx = ExtElement::sigma_x();
    let sy = ExtElement::sigma_y();
    let pts = sample_points(Model::H3, SAMPLES, 11);
    let mut checks = Vec::new();
    for (face, f) in poly.faces.iter().enumerate() {
        let g = f.pairing.as_ref().ok_or(Error::UnpairedFace { face })?;
        let w = left_witness(g, &group).unwrap_or_else(|| g.clone());
        if !(w.c.is_real() || w.c.is_imaginary()) {
            return Err(Error::BadLowerLeft { element: w.key() });
        }
        // oblique cusp translations are replaced by θ in the rectangle cell
        if w.c.is_zero() && !(w.b.is_real() || w.b.is_imaginary()) {
            continue;
        }
        let refl = ExtElement::reflection(f.halfspace.form());
        let comp = ExtElement::from_moebius(&w).then_apply(&refl);
        let real = if w.c.is_zero() { w.b.is_real() } else { w.c.is_real() };
        let (target, name) = if real { (&sx, "sigma_x") } else { (&sy, "sigma_y") };
        let ok = comp.same_as(target, 1e-9) && agree(&comp, target, &pts);
        checks.push(RelationCheck { word: format!("gamma_{face}*sigma_face{face} = {name}"), order: None, pass: ok });
    }
    // the cell: a quarter rectangle under all nearby lattice translates of the
    // hemispherical faces
    let k = ScalarKind::Quad(d);
    let sqrt = Scalar::sqrt_neg(d);
    let top_beta = if ring.half_integral() { Scalar::frac(d as i64 + 1, 2) } else { Scalar::int(d as i64) };
    let mut spaces: Vec<HalfSpace> = vec![
        HalfSpace::from_form(vertical_form(Model::H3, (-Scalar::one()).promote(k), Scalar::zero().promote(k)))?,
        HalfSpace::from_form(vertical_form(Model::H3, Scalar::one().promote(k), Scalar::one().promote(k)))?,
        HalfSpace::from_form(vertical_form(Model::H3, -&sqrt, Scalar::zero().promote(k)))?,
        HalfSpace::from_form(vertical_form(Model::H3, sqrt.clone(), top_beta.promote(k)))?,
    ];
    let omega = ring.omega();
    for f in poly.faces.iter().filter(|f| !f.vertical) {
        for m in -2i64..=2 {
            for n in -2i64..=2 {
                let w = &Scalar::int(m).promote(k) + &(&omega * &Scalar::int(n));
                let t = MoebiusElement::translation(Model::H3, w)?;
                let h = f.halfspace.map(&t)?;
                if !spaces.iter().any(|s| s.same_as(&h)) {
                    spaces.push(h);
                }
            }
        }
    }
    let cuts: Vec<Cut> = spaces.iter().map(|h| Cut::from_form(h.form())).collect();
    let (walls, angles, cell) = cell_angles(&cuts, 3);
    let finite = cell.in_closed_ball(1e-7);
    let mut generators = vec![sx.clone(), sy.clone()];
    let mut names = vec!["sigma_x".to_string(), "sigma_y".to_string()];
    let mut polygon = Vec::new();
    for &w in &walls {
        polygon.push(spaces[w].clone());
        generators.push(ExtElement::reflection(spaces[w].form()));
        names.push(format!("mirror_{}", polygon.len() - 1));
    }
    for (g, n) in generators.iter().zip(&names) {
        checks.push(RelationCheck { word: format!("{n}^2"), order: Some(2), pass: g.then_apply(g).is_identity() });
    }
    for (g, n) in generators.iter().zip(&names).skip(2) {
        let ok = in_extended_group(d, g);
        checks.push(RelationCheck { word: format!("{n} in <Gamma, sigma_x, sigma_y>"), order: None, pass: ok });
    }
    let angles_ok = angles.iter().all(|&a| is_submultiple_of_pi(a, 1e-6));
    checks.push(RelationCheck { word: "cell has finite volume".into(), order: None, pass: finite });
    let passed = angles_ok && checks.iter().all(|c| c.pass);
    Ok(ExtensionReport {
        kind: ExtensionKind::BianchiXy,
        generators,
        generator_names: names,
        relation_checks: checks,
        index_claim: 4,
        polygon,
        angles,
        coxeter_matrix: None,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> MoebiusElement {
        MoebiusElement::int(Model::H2, a, b, c, d).unwrap()
    }

    #[test]
    fn double_centers() {
        assert!(double_center_check(&m(2, 3, 1, 2), 2.0).unwrap());
        assert!(!double_center_check(&m(1, 1, 1, 2), 2.0).unwrap());
        for t in [0.3, 2.0, 7.0] {
            assert!(double_center_check(&m(1, 1, 0, 1), t).unwrap());
        }
        assert!(matches!(double_center_check(&m(0, 1, -1, 0), 2.0), Err(Error::CenterStabilized)));
    }

    #[test]
    fn reflections_compose() {
        let f = HermitianForm::new(Model::H2, Scalar::zero(), Scalar::int(1), Scalar::int(1));
        let r = ExtElement::reflection(&f);
        let p = PointUH::h2(0.2, 0.7).unwrap();
        let q = r.act(&p);
        assert!((q.z.re - 0.8).abs() < 1e-12 && (q.r - 0.7).abs() < 1e-12);
        assert!(r.then_apply(&r).is_identity());
        let t = ExtElement::sigma_x().then_apply(&ExtElement::reflection(&HermitianForm::new(
            Model::H2,
            Scalar::zero(),
            Scalar::int(-1),
            Scalar::int(1),
        )));
        assert!(t.same_as(&ExtElement::from_moebius(&m(1, 1, 0, 1)), 0.0));
    }

    #[test]
    fn submultiples() {
        assert!(is_submultiple_of_pi(PI / 3.0, 1e-6));
        assert!(is_submultiple_of_pi(0.0, 1e-6));
        assert!(!is_submultiple_of_pi(2.0 * PI / 3.0, 1e-6));
    }

    #[test]
    fn orders() {
        assert_eq!(element_order(&m(0, 1, -1, 1), 64), Some(3));
        assert_eq!(element_order(&m(1, 1, 0, 1), 64), None);
    }
}
