//! Rings of integers of imaginary quadratic fields, Bianchi groups PSL₂(O),
//! and the DF survey over them.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{dirichlet_domain, GroupInput, ReductionOptions};
use crate::error::{Error, Result};
use crate::moebius::{Model, MoebiusElement};
use crate::scalar::Scalar;

/// The ring of integers of ℚ(√−d), with integral basis `{1, ω}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadIntRing {
    pub d: u64,
}

/// `ring(d)`.
pub fn ring(d: u64) -> Result<QuadIntRing> {
    QuadIntRing::new(d)
}

pub fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadIntRing {
    pub fn new(d: u64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(QuadIntRing { d })
    }

    /// Whether `ω = (1 + √−d)/2` (`d ≡ 3 mod 4`) rather than `√−d`.
    pub fn half_integral(&self) -> bool {
        self.d % 4 == 3
    }

    /// `ω` as an exact scalar.
    pub fn omega(&self) -> Scalar {
        if self.half_integral() {
            Scalar::quad(half(1), half(1), self.d)
        } else {
            Scalar::sqrt_neg(self.d)
        }
    }

    pub fn omega_c64(&self) -> Complex64 {
        self.omega().to_c64()
    }

    pub fn element(&self, x: i64, y: i64) -> QuadInt {
        QuadInt { x: BigInt::from(x), y: BigInt::from(y), ring: *self }
    }

    /// Units of the ring.
    pub fn units(&self) -> Vec<QuadInt> {
        match self.d {
            1 => vec![self.element(1, 0), self.element(0, 1), self.element(-1, 0), self.element(0, -1)],
            3 => vec![
                self.element(1, 0),
                self.element(0, 1),
                self.element(-1, 1),
                self.element(-1, 0),
                self.element(0, -1),
                self.element(1, -1),
            ],
            _ => vec![self.element(1, 0), self.element(-1, 0)],
        }
    }
}

fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

/// `x + y·ω` in a ring of integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub x: BigInt,
    pub y: BigInt,
    pub ring: QuadIntRing,
}

impl QuadInt {
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &QuadInt) -> QuadInt {
        QuadInt { x: &self.x + &o.x, y: &self.y + &o.y, ring: self.ring }
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt { x: -&self.x, y: -&self.y, ring: self.ring }
    }

    pub fn mul(&self, o: &QuadInt) -> QuadInt {
        let d = BigInt::from(self.ring.d);
        let xx = &self.x * &o.x;
        let cross = &self.x * &o.y + &o.x * &self.y;
        let yy = &self.y * &o.y;
        if self.ring.half_integral() {
            // ω² = ω − (1 + d)/4
            let k = (d + 1) / 4;
            QuadInt { x: xx - k * &yy, y: cross + yy, ring: self.ring }
        } else {
            QuadInt { x: xx - d * yy, y: cross, ring: self.ring }
        }
    }

    pub fn conj(&self) -> QuadInt {
        if self.ring.half_integral() {
            QuadInt { x: &self.x + &self.y, y: -&self.y, ring: self.ring }
        } else {
            QuadInt { x: self.x.clone(), y: -&self.y, ring: self.ring }
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        let d = self.ring.d;
        if self.ring.half_integral() {
            let y2 = BigRational::new(self.y.clone(), BigInt::from(2));
            Scalar::quad(BigRational::from_integer(self.x.clone()) + &y2, y2, d)
        } else {
            Scalar::quad(BigRational::from_integer(self.x.clone()), BigRational::from_integer(self.y.clone()), d)
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        self.to_scalar().to_c64()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.x, self.y)
    }
}

/// `|α|²`, exactly.
pub fn qnorm(a: &QuadInt) -> BigRational {
    let (x, y) = (&a.x, &a.y);
    let d = BigInt::from(a.ring.d);
    let n = if a.ring.half_integral() {
        x * x + x * y + (d + 1) / 4 * y * y
    } else {
        x * x + d * y * y
    };
    BigRational::from_integer(n)
}

/// Machine-integer ring element used by the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct SmallQ {
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SmallRing {
    pub d: i64,
    half: bool,
}

impl SmallRing {
    pub fn new(d: u64) -> Self {
        SmallRing { d: d as i64, half: d % 4 == 3 }
    }

    fn k(&self) -> i64 {
        (1 + self.d) / 4
    }

    pub fn mul(&self, a: SmallQ, b: SmallQ) -> SmallQ {
        let xx = a.x * b.x;
        let cross = a.x * b.y + b.x * a.y;
        let yy = a.y * b.y;
        if self.half {
            SmallQ { x: xx - self.k() * yy, y: cross + yy }
        } else {
            SmallQ { x: xx - self.d * yy, y: cross }
        }
    }

    pub fn conj(&self, a: SmallQ) -> SmallQ {
        if self.half {
            SmallQ { x: a.x + a.y, y: -a.y }
        } else {
            SmallQ { x: a.x, y: -a.y }
        }
    }

    pub fn norm(&self, a: SmallQ) -> i64 {
        if self.half {
            a.x * a.x + a.x * a.y + self.k() * a.y * a.y
        } else {
            a.x * a.x + self.d * a.y * a.y
        }
    }

    /// `a / b` when it lies in the ring.
    pub fn div(&self, a: SmallQ, b: SmallQ) -> Option<SmallQ> {
        let n = self.norm(b);
        let m = self.mul(a, self.conj(b));
        (m.x % n == 0 && m.y % n == 0).then(|| SmallQ { x: m.x / n, y: m.y / n })
    }

    pub fn to_c64(&self, a: SmallQ) -> Complex64 {
        let s = (self.d as f64).sqrt();
        if self.half {
            Complex64::new(a.x as f64 + a.y as f64 / 2.0, a.y as f64 * s / 2.0)
        } else {
            Complex64::new(a.x as f64, a.y as f64 * s)
        }
    }

    /// Sign used by the canonical-sign rule: real part first, then imaginary.
    fn sign(&self, a: SmallQ) -> i64 {
        let re = if self.half { 2 * a.x + a.y } else { a.x };
        if re != 0 {
            re.signum()
        } else {
            a.y.signum()
        }
    }

    /// All elements of norm at most `bound`, sorted by norm.
    fn ball(&self, bound: i64) -> Vec<(i64, SmallQ)> {
        let ymax = ((4 * bound) as f64 / self.d as f64).sqrt() as i64 + 1;
        let xmax = (bound as f64).sqrt() as i64 + ymax + 1;
        let mut out = Vec::new();
        for y in -ymax..=ymax {
            for x in -xmax..=xmax {
                let q = SmallQ { x, y };
                let n = self.norm(q);
                if n <= bound {
                    out.push((n, q));
                }
            }
        }
        out.sort();
        out
    }
}

/// An element of PSL₂(O) with machine-integer entries, in canonical sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SmallMat {
    pub d: u64,
    pub e: [SmallQ; 4],
    pub norm: i64,
}

impl SmallMat {
    pub fn to_moebius(&self) -> MoebiusElement {
        let r = QuadIntRing { d: self.d };
        let [a, b, c, d] = self.e.map(|q| r.element(q.x, q.y).to_scalar());
        MoebiusElement::from_entries_unchecked(Model::H3, a, b, c, d)
    }

    pub fn to_c64(&self) -> [Complex64; 4] {
        let r = SmallRing::new(self.d);
        self.e.map(|q| r.to_c64(q))
    }

    pub fn sort_key(&self) -> (i64, [i64; 8]) {
        let [a, b, c, d] = self.e;
        (self.norm, [c.x, c.y, d.x, d.y, a.x, a.y, b.x, b.y])
    }
}

/// Every element of PSL₂(O_d) with `‖γ‖² ≤ bound`, by exhaustive search.
pub(crate) fn small_sl2(d: u64, bound: f64, cap: usize) -> Result<Vec<SmallMat>> {
    let r = SmallRing::new(d);
    let b = bound.floor() as i64;
    let ball = r.ball(b);
    let zero = SmallQ { x: 0, y: 0 };
    let one = SmallQ { x: 1, y: 0 };
    let mut out = Vec::new();
    let push = |e: [SmallQ; 4], n: i64, out: &mut Vec<SmallMat>| -> Result<()> {
        let lead = e[2..].iter().chain(&e[..2]).find(|q| **q != zero).copied().unwrap_or(zero);
        if r.sign(lead) > 0 {
            out.push(SmallMat { d, e, norm: n });
            if out.len() > cap {
                return Err(Error::ExplosionGuard { cap });
            }
        }
        Ok(())
    };
    for &(na, a) in &ball {
        for &(nc, c) in &ball {
            if na + nc > b {
                break;
            }
            if a == zero {
                // −bc = 1: c is a unit and b = −c⁻¹
                if nc != 1 {
                    continue;
                }
                let bb = r.div(SmallQ { x: -1, y: 0 }, c).expect("unit");
                for &(nd, dd) in &ball {
                    if na + nc + 1 + nd > b {
                        break;
                    }
                    push([a, bb, c, dd], 1 + nc + nd, &mut out)?;
                }
                continue;
            }
            for &(nb, bb) in &ball {
                if na + nb + nc > b {
                    break;
                }
                let num = r.mul(bb, c);
                let num = SmallQ { x: num.x + one.x, y: num.y };
                let Some(dd) = r.div(num, a) else { continue };
                let n = na + nb + nc + r.norm(dd);
                if n <= b {
                    push([a, bb, c, dd], n, &mut out)?;
                }
            }
        }
    }
    out.sort_by_key(|m| m.sort_key());
    Ok(out)
}

/// All canonical `γ ∈ PSL₂(O)` with `‖γ‖² ≤ bound`.
pub fn sl2_elements(ring: &QuadIntRing, bound: f64) -> Result<Vec<MoebiusElement>> {
    Ok(small_sl2(ring.d, bound, 1_000_000)?.iter().map(|m| m.to_moebius()).collect())
}

/// Default norm bound for the generator list of [`bianchi_input`].
pub const GENERATOR_BOUND: f64 = 6.0;

/// The Bianchi group PSL₂(O_d) as a group input.
pub fn bianchi_input(d: u64) -> Result<GroupInput> {
    let ring = QuadIntRing::new(d)?;
    let generators = sl2_elements(&ring, GENERATOR_BOUND)?;
    let mut cusp = vec![
        MoebiusElement::translation(Model::H3, Scalar::one().promote(ring.omega().kind()))?,
        MoebiusElement::translation(Model::H3, ring.omega())?,
    ];
    if d == 1 || d == 3 {
        // rotation diag(u, u⁻¹) by a generating unit
        let u = ring.element(0, 1).to_scalar();
        cusp.push(MoebiusElement::new(Model::H3, u.clone(), Scalar::zero().promote(u.kind()), Scalar::zero().promote(u.kind()), u.recip())?);
    }
    let stab = sl2_elements(&ring, 2.0)?;
    Ok(GroupInput {
        model: Model::H3,
        generators,
        cusp_generators: cusp,
        center_stabilizer: stab,
        origin: format!("Bianchi d={d}"),
        bianchi_d: Some(d),
    })
}

/// Squarefree `d` in `1..=dmax`.
pub fn squarefree_up_to(dmax: u64) -> Vec<u64> {
    (1..=dmax).filter(|&d| is_squarefree(d)).collect()
}

/// One row of the DF survey.
#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub d: u64,
    /// `None` when the domain could not be built.
    pub df: Option<bool>,
    pub faces: Option<usize>,
    pub bound: Option<f64>,
    pub reflection: String,
    pub walls: String,
    pub error: Option<String>,
    pub seconds: f64,
}

/// DF survey over the given discriminants; rows run in parallel and failures
/// are recorded per row.
pub fn df_survey(ds: &[u64], opts: &ReductionOptions) -> Vec<SurveyRow> {
    ds.par_iter().map(|&d| survey_row(d, opts)).collect()
}

fn survey_row(d: u64, opts: &ReductionOptions) -> SurveyRow {
    let start = std::time::Instant::now();
    let mut row = SurveyRow {
        d,
        df: None,
        faces: None,
        bound: None,
        reflection: String::new(),
        walls: String::new(),
        error: None,
        seconds: 0.0,
    };
    let result = (|| -> Result<()> {
        let input = bianchi_input(d)?;
        let poly = match dirichlet_domain(&input, opts) {
            Ok(p) => p,
            Err(Error::BoundExhausted { bound, partial }) => {
                row.bound = Some(bound);
                row.faces = Some(partial.faces.len());
                return Err(Error::BoundExhausted { bound, partial });
            }
            Err(e) => return Err(e),
        };
        row.faces = Some(poly.faces.len());
        row.bound = Some(poly.bound);
        row.walls = wall_summary(&poly);
        let verdict = crate::df::df_check(&poly, &poly.stabilizer);
        row.df = Some(verdict.is_df);
        row.reflection = if d == 1 || d == 3 {
            "excluded".to_string()
        } else if !verdict.is_df {
            "not_df".to_string()
        } else {
            match crate::df::bianchi_reflection_extension(d, &poly) {
                Ok(rep) if rep.passed => "pass".to_string(),
                Ok(_) => "fail".to_string(),
                Err(e) => e.code().to_string(),
            }
        };
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.code().to_string());
    }
    row.seconds = start.elapsed().as_secs_f64();
    row
}

/// Vertical faces as `Re(n̄z) = offset` strings, sorted.
fn wall_summary(poly: &crate::domain::FundamentalPolyhedron) -> String {
    let mut walls: Vec<String> = poly
        .faces
        .iter()
        .filter(|f| f.vertical)
        .map(|f| {
            let s = f.halfspace.surface();
            match s.shape() {
                crate::hyperplanes::SurfaceShape::Plane { normal, offset } => format!("Re(conj({normal})z)={offset}"),
                _ => unreachable!(),
            }
        })
        .collect();
    walls.sort();
    walls.join(";")
}

/// CSV rendering of survey rows.
pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from("d,df,faces,bound,reflection,walls,error\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},\"{}\",{}\n",
            r.d,
            r.df.map(|b| b.to_string()).unwrap_or_default(),
            r.faces.map(|b| b.to_string()).unwrap_or_default(),
            r.bound.map(crate::scalar::fmt_f64).unwrap_or_default(),
            r.reflection,
            r.walls,
            r.error.clone().unwrap_or_default(),
        ));
    }
    out
}

/// JSON rendering of survey rows (timings omitted so output is reproducible).
pub fn survey_json(rows: &[SurveyRow]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "d": r.d,
                "df": r.df,
                "faces": r.faces,
                "bound": r.bound.map_or(serde_json::Value::Null, crate::io::num),
                "reflection": r.reflection,
                "walls": r.walls,
                "error": r.error,
            })
        })
        .collect();
    serde_json::json!({ "schema": "hypdomain.survey/1", "rows": rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    #[test]
    fn rings() {
        assert_eq!(ring(2).unwrap().omega(), Scalar::sqrt_neg(2));
        assert_eq!(ring(7).unwrap().omega(), Scalar::quad(half(1), half(1), 7));
        assert!(matches!(ring(12), Err(Error::NotSquarefree(12))));
    }

    #[test]
    fn norms() {
        let r2 = ring(2).unwrap();
        assert_eq!(qnorm(&r2.element(1, 1)), BigRational::from_integer(3.into()));
        assert_eq!(qnorm(&ring(7).unwrap().element(0, 1)), BigRational::from_integer(2.into()));
        assert!(qnorm(&r2.element(0, 0)).is_zero());
    }

    #[test]
    fn small_bounds() {
        let r2 = ring(2).unwrap();
        let two = sl2_elements(&r2, 2.0).unwrap();
        assert_eq!(two.len(), 2);
        let three = sl2_elements(&r2, 3.0).unwrap();
        assert!(three.iter().all(|g| g.norm_sq().to_c64().re <= 3.0));
        assert!(three.contains(&MoebiusElement::int(Model::H3, 1, 1, 0, 1).unwrap()));
        assert!(three.contains(&MoebiusElement::int(Model::H3, 0, 1, -1, 1).unwrap()));
        let four = sl2_elements(&r2, 4.0).unwrap();
        let t = MoebiusElement::translation(Model::H3, Scalar::sqrt_neg(2)).unwrap();
        assert!(four.contains(&t));
    }

    fn brute_force(d: u64, bound: i64, range: i64) -> HashSet<[SmallQ; 4]> {
        let r = SmallRing::new(d);
        let mut elems = Vec::new();
        for x in -range..=range {
            for y in -range..=range {
                elems.push(SmallQ { x, y });
            }
        }
        let mut out = HashSet::new();
        for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    for &dd in &elems {
                        let n = r.norm(a) + r.norm(b) + r.norm(c) + r.norm(dd);
                        if n > bound {
                            continue;
                        }
                        let ad = r.mul(a, dd);
                        let bc = r.mul(b, c);
                        if ad.x - bc.x == 1 && ad.y - bc.y == 0 {
                            let e = [a, b, c, dd];
                            let zero = SmallQ { x: 0, y: 0 };
                            let lead = e[2..].iter().chain(&e[..2]).find(|q| **q != zero).copied().unwrap();
                            if r.sign(lead) > 0 {
                                out.insert(e);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_is_complete_for_d2() {
        let got: HashSet<[SmallQ; 4]> = small_sl2(2, 6.0, 1 << 20).unwrap().into_iter().map(|m| m.e).collect();
        assert_eq!(got, brute_force(2, 6, 2));
    }

    #[test]
    fn enumeration_is_complete_for_d7() {
        let got: HashSet<[SmallQ; 4]> = small_sl2(7, 5.0, 1 << 20).unwrap().into_iter().map(|m| m.e).collect();
        assert_eq!(got, brute_force(7, 5, 3));
    }

    #[test]
    fn stabilizers() {
        assert_eq!(bianchi_input(2).unwrap().center_stabilizer.len(), 2);
        assert_eq!(bianchi_input(1).unwrap().center_stabilizer.len(), 4);
        assert_eq!(bianchi_input(3).unwrap().center_stabilizer.len(), 6);
        let seven = bianchi_input(7).unwrap();
        assert_eq!(seven.cusp_generators[1].b, ring(7).unwrap().omega());
    }

    #[test]
    fn embedding_consistency() {
        let r = ring(11).unwrap();
        for (x, y) in [(1, 2), (-3, 1), (0, -2)] {
            let a = r.element(x, y);
            let z = a.to_c64();
            assert!((z.norm_sqr() - qnorm(&a).to_f64().unwrap()).abs() < 1e-12);
            assert!((a.conj().to_c64() - z.conj()).norm() < 1e-12);
        }
    }
}
