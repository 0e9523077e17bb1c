//! Scalar tower used for matrix entries and surface data.
//!
//! Three kinds of numbers coexist:
//!
//! * [`Scalar::Rational`]: an arbitrary-precision rational, compatible with
//!   every quadratic field;
//! * [`Scalar::Quad`]: an element `x + y·√−d` of ℚ(√−d), with `d` fixed per value;
//! * [`Scalar::Float`]: an IEEE double complex number.
//!
//! Arithmetic between a rational and a quadratic number promotes the rational.
//! Mixing two different discriminants is a programming error and panics in
//! the operator impls. An exact operand meeting a float is evaluated as a
//! float, so exact constants can appear in float formulas. The fallible entry
//! point [`ScalarKind::join`] still rejects mixed input up front.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact element `re + im·√−d` of the imaginary quadratic field ℚ(√−d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    pub re: BigRational,
    pub im: BigRational,
    pub d: u64,
}

impl QuadNumber {
    pub fn new(re: BigRational, im: BigRational, d: u64) -> Self {
        assert!(d > 0, "discriminant parameter must be positive");
        QuadNumber { re, im, d }
    }

    pub fn conj(&self) -> Self {
        QuadNumber::new(self.re.clone(), -self.im.clone(), self.d)
    }

    /// `|x|² = re² + d·im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + BigRational::from_integer(BigInt::from(self.d)) * &self.im * &self.im
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im) * (self.d as f64).sqrt())
    }
}

/// What kind of number a [`Scalar`] is; used to validate inputs before doing arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarKind {
    Rational,
    Quad(u64),
    Float,
}

impl ScalarKind {
    /// The common kind two operands promote to, or an error if they cannot be mixed.
    pub fn join(self, other: ScalarKind) -> Result<ScalarKind> {
        use ScalarKind::*;
        match (self, other) {
            (Rational, Rational) => Ok(Rational),
            (Rational, Quad(d)) | (Quad(d), Rational) => Ok(Quad(d)),
            (Quad(a), Quad(b)) if a == b => Ok(Quad(a)),
            (Quad(a), Quad(b)) => Err(Error::DiscriminantMismatch(a, b)),
            (Float, Float) => Ok(Float),
            _ => Err(Error::ScalarKindMismatch),
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, ScalarKind::Float)
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quad(QuadNumber),
    Float(Complex64),
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // ratios of huge integers: scale down first
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(rat(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rational(ratio(n, d))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    /// `re + im·√−d`, collapsing to a rational when `im` is zero is *not* done:
    /// the discriminant is kept so that kind checks stay meaningful.
    pub fn quad(re: BigRational, im: BigRational, d: u64) -> Self {
        Scalar::Quad(QuadNumber::new(re, im, d))
    }

    /// `√−d` as an exact element.
    pub fn sqrt_neg(d: u64) -> Self {
        Scalar::quad(BigRational::zero(), BigRational::one(), d)
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Quad(q) => ScalarKind::Quad(q.d),
            Scalar::Float(_) => ScalarKind::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind().is_exact()
    }

    /// Explicit one-way conversion to a floating complex number.
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(rat_to_f64(r), 0.0),
            Scalar::Quad(q) => q.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_c64())
    }

    /// Lift into the given kind (rational → quadratic, anything exact → float).
    pub fn promote(&self, kind: ScalarKind) -> Scalar {
        match (self, kind) {
            (Scalar::Rational(r), ScalarKind::Quad(d)) => {
                Scalar::quad(r.clone(), BigRational::zero(), d)
            }
            (_, ScalarKind::Float) => self.to_float(),
            _ => self.clone(),
        }
    }

    /// Exact `(re, im_coefficient, d)` view; `d = 0` for rationals. `None` for floats.
    pub fn exact_parts(&self) -> Option<(BigRational, BigRational, u64)> {
        match self {
            Scalar::Rational(r) => Some((r.clone(), BigRational::zero(), 0)),
            Scalar::Quad(q) => Some((q.re.clone(), q.im.clone(), q.d)),
            Scalar::Float(_) => None,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone()),
            Scalar::Quad(q) => Scalar::Quad(q.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    /// `|x|²`, as a real scalar of the same exactness.
    pub fn abs_sq(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r * r),
            Scalar::Quad(q) => Scalar::Rational(q.norm()),
            Scalar::Float(z) => Scalar::float(z.norm_sqr(), 0.0),
        }
    }

    /// Real part as a real scalar.
    pub fn re(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone()),
            Scalar::Quad(q) => Scalar::Rational(q.re.clone()),
            Scalar::Float(z) => Scalar::float(z.re, 0.0),
        }
    }

    /// Exact zero test for exact scalars; `|x| < 1e-12` for floats.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad(q) => q.re.is_zero() && q.im.is_zero(),
            Scalar::Float(z) => z.norm() < 1e-12,
        }
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        match self {
            Scalar::Float(z) => z.norm() < tol,
            _ => self.is_zero(),
        }
    }

    /// True when the imaginary part vanishes (exactly, or within `1e-12`).
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Rational(_) => true,
            Scalar::Quad(q) => q.im.is_zero(),
            Scalar::Float(z) => z.im.abs() < 1e-12,
        }
    }

    pub fn is_imaginary(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad(q) => q.re.is_zero(),
            Scalar::Float(z) => z.re.abs() < 1e-12,
        }
    }

    /// Sign of the real part, exact when possible.
    pub fn re_sign(&self) -> Ordering {
        match self {
            Scalar::Rational(r) => r.cmp(&BigRational::zero()),
            Scalar::Quad(q) => q.re.cmp(&BigRational::zero()),
            Scalar::Float(z) => float_sign(z.re),
        }
    }

    /// Sign of the imaginary part, exact when possible.
    pub fn im_sign(&self) -> Ordering {
        match self {
            Scalar::Rational(_) => Ordering::Equal,
            Scalar::Quad(q) => q.im.cmp(&BigRational::zero()),
            Scalar::Float(z) => float_sign(z.im),
        }
    }

    /// Multiplicative inverse; panics on an exact zero.
    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quad(q) => {
                let n = q.norm();
                assert!(!n.is_zero(), "division by exact zero");
                Scalar::quad(&q.re / &n, -&q.im / &n, q.d)
            }
            Scalar::Float(z) => Scalar::Float(1.0 / *z),
        }
    }

    /// Whether two scalars are equal: exactly for exact values, within `tol` otherwise.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        if self.is_exact() && other.is_exact() {
            self == other
        } else {
            (self.to_c64() - other.to_c64()).norm() <= tol
        }
    }
}

fn float_sign(x: f64) -> Ordering {
    if x.abs() < 1e-14 {
        Ordering::Equal
    } else if x > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => false,
            _ => {
                let (ar, ai, ad) = self.exact_parts().unwrap();
                let (br, bi, bd) = other.exact_parts().unwrap();
                if ar != br || ai != bi {
                    return false;
                }
                ai.is_zero() || ad == bd
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

fn binop(
    a: &Scalar,
    b: &Scalar,
    rat_op: impl Fn(&BigRational, &BigRational) -> BigRational,
    quad_op: impl Fn(&QuadNumber, &QuadNumber) -> QuadNumber,
    float_op: impl Fn(Complex64, Complex64) -> Complex64,
) -> Scalar {
    if matches!(a, Scalar::Float(_)) || matches!(b, Scalar::Float(_)) {
        return Scalar::Float(float_op(a.to_c64(), b.to_c64()));
    }
    let kind = a
        .kind()
        .join(b.kind())
        .unwrap_or_else(|e| panic!("incompatible scalar operands: {e}"));
    match kind {
        ScalarKind::Rational => match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(rat_op(x, y)),
            _ => unreachable!(),
        },
        ScalarKind::Quad(_) => {
            let (Scalar::Quad(x), Scalar::Quad(y)) = (a.promote(kind), b.promote(kind)) else {
                unreachable!()
            };
            Scalar::Quad(quad_op(&x, &y))
        }
        ScalarKind::Float => Scalar::Float(float_op(a.to_c64(), b.to_c64())),
    }
}

fn quad_mul(x: &QuadNumber, y: &QuadNumber) -> QuadNumber {
    // (a + b√−d)(c + e√−d) = (ac − d·be) + (ae + bc)√−d
    let d = BigRational::from_integer(BigInt::from(x.d));
    QuadNumber::new(
        &x.re * &y.re - d * &x.im * &y.im,
        &x.re * &y.im + &x.im * &y.re,
        x.d,
    )
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        binop(
            self,
            rhs,
            |x, y| x + y,
            |x, y| QuadNumber::new(&x.re + &y.re, &x.im + &y.im, x.d),
            |x, y| x + y,
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        binop(
            self,
            rhs,
            |x, y| x - y,
            |x, y| QuadNumber::new(&x.re - &y.re, &x.im - &y.im, x.d),
            |x, y| x - y,
        )
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        binop(self, rhs, |x, y| x * y, quad_mul, |x, y| x * y)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad(q) => Scalar::quad(-&q.re, -&q.im, q.d),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Exact values print as `p/q` or `p/q+r/s*sqrt(-d)`; floats print with 17
    /// significant digits as `re+imi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Quad(q) => {
                if q.im.is_zero() {
                    return write!(f, "{}", fmt_rat(&q.re));
                }
                let sign = if q.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*sqrt(-{})", fmt_rat(&q.re), sign, fmt_rat(&q.im.abs()), q.d)
            }
            Scalar::Float(z) => write!(f, "{}", fmt_float_complex(*z)),
        }
    }
}

/// Fixed 17-significant-digit rendering of a float.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

fn fmt_float_complex(z: Complex64) -> String {
    format!("{}{}{}i", fmt_f64(z.re), if z.im < 0.0 { "" } else { "+" }, fmt_f64(z.im))
}

/// Parse an exact scalar from `p/q`, `p/q+r/s*sqrt(-d)`, `r/s*sqrt(-d)`, or a
/// float complex written `x+yi` (decimal point or exponent required for floats).
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if s.ends_with('i') && !s.contains("sqrt") {
        return parse_float_complex(&s);
    }
    if let Some(pos) = s.find("*sqrt(-") {
        let tail = &s[pos + 7..];
        let d: u64 = tail
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("bad sqrt term in {s:?}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad discriminant in {s:?}")))?;
        if d == 0 {
            return Err(Error::Parse("sqrt(-0) is not allowed".into()));
        }
        let head = &s[..pos];
        // split head into real part and signed coefficient at the last +/- that is not leading
        let bytes = head.as_bytes();
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !matches!(bytes[i - 1], b'+' | b'-'))
            .map(|(i, _)| i);
        let (re, im) = match split {
            Some(i) => {
                let coeff = &head[i..];
                let coeff = coeff.strip_prefix("+").filter(|c| c.starts_with('-')).unwrap_or(coeff);
                (parse_rational(&head[..i])?, parse_rational(coeff)?)
            }
            None => (BigRational::zero(), parse_rational(head)?),
        };
        return Ok(Scalar::quad(re, im, d));
    }
    if s.contains('.') || s.contains('e') || s.contains('E') {
        let x: f64 = s.parse().map_err(|_| Error::Parse(format!("bad float {s:?}")))?;
        return Ok(Scalar::float(x, 0.0));
    }
    Ok(Scalar::Rational(parse_rational(&s)?))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_float_complex(s: &str) -> Result<Scalar> {
    let body = &s[..s.len() - 1];
    let bad = || Error::Parse(format!("bad complex float {s:?}"));
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| {
            i > 0 && (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
        })
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (
            body[..i].parse::<f64>().map_err(|_| bad())?,
            body[i..].parse::<f64>().map_err(|_| bad())?,
        ),
        None => (0.0, body.parse::<f64>().map_err(|_| bad())?),
    };
    Ok(Scalar::float(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_multiplication_and_norm() {
        let d = 2;
        let x = Scalar::quad(rat(1), rat(1), d); // 1 + √−2
        assert_eq!(x.abs_sq(), Scalar::int(3));
        let y = &x * &x.conj();
        assert_eq!(y, Scalar::int(3));
        let inv = x.recip();
        assert_eq!(&x * &inv, Scalar::int(1));
    }

    #[test]
    fn rational_promotes_into_quad() {
        let x = Scalar::quad(rat(0), rat(1), 7);
        let s = &x + &Scalar::int(2);
        assert_eq!(s.kind(), ScalarKind::Quad(7));
        assert_eq!(s, Scalar::quad(rat(2), rat(1), 7));
    }

    #[test]
    fn mismatched_discriminants_are_rejected() {
        let k = ScalarKind::Quad(2).join(ScalarKind::Quad(3));
        assert!(matches!(k, Err(Error::DiscriminantMismatch(2, 3))));
        assert!(ScalarKind::Float.join(ScalarKind::Rational).is_err());
    }

    #[test]
    #[should_panic]
    fn mixing_discriminants_in_operators_panics() {
        let _ = Scalar::sqrt_neg(2) * Scalar::sqrt_neg(3);
    }

    #[test]
    fn rational_equals_quad_with_zero_imaginary_part() {
        assert_eq!(Scalar::quad(rat(5), rat(0), 3), Scalar::int(5));
        assert_ne!(Scalar::sqrt_neg(2), Scalar::sqrt_neg(3));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["3", "-1/2", "1/2+3/4*sqrt(-7)", "-1-2*sqrt(-2)", "0+1*sqrt(-19)"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&v.to_string()).unwrap(), v, "{s}");
        }
        assert_eq!(parse_scalar("1/2*sqrt(-3)").unwrap(), Scalar::quad(rat(0), ratio(1, 2), 3));
        let f = parse_scalar("1.5-2.25i").unwrap();
        assert_eq!(f.to_c64(), Complex64::new(1.5, -2.25));
        let g = parse_scalar("2.5e-1").unwrap();
        assert_eq!(g.to_c64().re, 0.25);
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn float_embedding_matches_exact_norm() {
        let x = Scalar::quad(ratio(3, 2), ratio(-5, 7), 11);
        let z = x.to_c64();
        let n = crate::scalar::rat_to_f64(&match x.abs_sq() {
            Scalar::Rational(r) => r,
            _ => unreachable!(),
        });
        assert!((z.norm_sqr() - n).abs() < 1e-12);
    }
}
