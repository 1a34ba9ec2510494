//! Exact arithmetic over ℚ and real quadratic extensions ℚ(√d).
//!
//! A [`FieldScalar`] stores a value `a + b·√d` as two arbitrary-precision
//! rationals in lowest terms.  Sign determination uses the positive-root real
//! embedding and is computed purely by rational comparisons of squares.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched field specs: {0} vs {1}")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("{0} is not a valid quadratic radicand (must be square-free and >= 2)")]
    BadRadicand(u64),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
    #[error("irrational part {0} supplied for a rational field")]
    IrrationalInRationalField(String),
}

/// The ground field: ℚ, or ℚ(√d) for a fixed square-free d ≥ 2.
///
/// One fixed radicand per spec; mixing scalars from different specs is an
/// error rather than an implicit field tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Quadratic { d: u64 },
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        match self {
            FieldSpec::Rational => map.serialize_entry("type", "rational")?,
            FieldSpec::Quadratic { d } => {
                map.serialize_entry("type", "quadratic")?;
                map.serialize_entry("d", d)?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(rename = "type")]
            kind: String,
            #[serde(default)]
            d: Option<u64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        match (raw.kind.as_str(), raw.d) {
            ("rational", None) => Ok(FieldSpec::Rational),
            ("rational", Some(_)) => {
                Err(serde::de::Error::custom("rational field takes no radicand"))
            }
            ("quadratic", Some(d)) => FieldSpec::quadratic(d).map_err(serde::de::Error::custom),
            ("quadratic", None) => Err(serde::de::Error::custom("quadratic field needs d")),
            (other, _) => Err(serde::de::Error::custom(format!(
                "unknown field type {other:?}"
            ))),
        }
    }
}

fn is_square_free(mut n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl FieldSpec {
    pub fn quadratic(d: u64) -> Result<Self, FieldError> {
        if is_square_free(d) {
            Ok(FieldSpec::Quadratic { d })
        } else {
            Err(FieldError::BadRadicand(d))
        }
    }

    pub fn radicand(&self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Quadratic { d } => Some(*d),
        }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, FieldSpec::Quadratic { .. })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Quadratic { d } => write!(f, "Q(sqrt {d})"),
        }
    }
}

/// An exact element `a + b·√d` of the field described by `spec`.
///
/// Rationals are kept in lowest terms with positive denominator (enforced by
/// `BigRational`), so equality and hashing are structural.  For
/// `FieldSpec::Rational` the irrational part `b` is identically zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    a: BigRational,
    b: BigRational,
    spec: FieldSpec,
}

impl FieldScalar {
    pub fn new(spec: FieldSpec, a: BigRational, b: BigRational) -> Result<Self, FieldError> {
        if spec == FieldSpec::Rational && !b.is_zero() {
            return Err(FieldError::IrrationalInRationalField(b.to_string()));
        }
        Ok(FieldScalar { a, b, spec })
    }

    /// The rational number `n` in the given field.
    pub fn from_int(spec: FieldSpec, n: i64) -> Self {
        FieldScalar {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
            spec,
        }
    }

    /// The rational number `p/q` in the given field.  Panics if `q == 0`.
    pub fn from_ratio(spec: FieldSpec, p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        FieldScalar {
            a: BigRational::new(BigInt::from(p), BigInt::from(q)),
            b: BigRational::zero(),
            spec,
        }
    }

    /// `(p + q·√d) / r` — convenience for quadratic-field constants.
    pub fn quad(spec: FieldSpec, p: i64, q: i64, r: i64) -> Result<Self, FieldError> {
        assert!(r != 0, "zero denominator");
        FieldScalar::new(
            spec,
            BigRational::new(BigInt::from(p), BigInt::from(r)),
            BigRational::new(BigInt::from(q), BigInt::from(r)),
        )
    }

    /// √d itself.
    pub fn sqrt_term(spec: FieldSpec) -> Result<Self, FieldError> {
        match spec {
            FieldSpec::Rational => Err(FieldError::IrrationalInRationalField("1".into())),
            FieldSpec::Quadratic { .. } => Ok(FieldScalar {
                a: BigRational::zero(),
                b: BigRational::one(),
                spec,
            }),
        }
    }

    pub fn zero(spec: FieldSpec) -> Self {
        FieldScalar::from_int(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> Self {
        FieldScalar::from_int(spec, 1)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check_spec(&self, other: &Self) {
        assert!(
            self.spec == other.spec,
            "mismatched field specs: {} vs {}",
            self.spec,
            other.spec
        );
    }

    fn d(&self) -> BigRational {
        match self.spec {
            FieldSpec::Rational => BigRational::zero(),
            FieldSpec::Quadratic { d } => BigRational::from_integer(BigInt::from(d)),
        }
    }

    /// Exact sign of the real value `a + b·√d` under the positive-root
    /// embedding: -1, 0 or +1.
    ///
    /// If `a` and `b` agree in sign (or one vanishes) the sign is immediate;
    /// otherwise `a²` is compared against `b²·d` and combined with `sign(a)`.
    /// `a² = b²·d` with `b ≠ 0` is impossible since d is square-free.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: |a| vs |b|√d  <=>  a² vs b²·d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * self.d();
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a² = b²·d contradicts square-free d"),
        }
    }

    /// The Galois conjugate `a - b·√d`; identity on rational elements.
    pub fn galois_conjugate(&self) -> Self {
        FieldScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            spec: self.spec,
        }
    }

    /// Field norm `a² - b²·d`, a rational number (as a scalar of the field).
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.d()
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // 1/(a+b√d) = (a-b√d)/(a²-b²d)
        let n = self.norm();
        Ok(FieldScalar {
            a: &self.a / &n,
            b: -(&self.b / &n),
            spec: self.spec,
        })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if self.spec != rhs.spec {
            return Err(FieldError::MixedFields(self.spec, rhs.spec));
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Approximate real value; used only at rendering boundaries.
    pub fn to_f64(&self) -> f64 {
        let ratf = |r: &BigRational| {
            let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        };
        match self.spec {
            FieldSpec::Rational => ratf(&self.a),
            FieldSpec::Quadratic { d } => ratf(&self.a) + ratf(&self.b) * (d as f64).sqrt(),
        }
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$x:ident, $y:ident| $body:expr) => {
        impl $trait for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                self.check_spec(rhs);
                let $x = self;
                let $y = rhs;
                $body
            }
        }
        impl $trait for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |x, y| FieldScalar {
    a: &x.a + &y.a,
    b: &x.b + &y.b,
    spec: x.spec,
});

binop!(Sub, sub, |x, y| FieldScalar {
    a: &x.a - &y.a,
    b: &x.b - &y.b,
    spec: x.spec,
});

binop!(Mul, mul, |x, y| {
    // (a1 + b1√d)(a2 + b2√d) = a1a2 + b1b2·d + (a1b2 + b1a2)√d
    FieldScalar {
        a: &x.a * &y.a + &x.b * &y.b * x.d(),
        b: &x.a * &y.b + &x.b * &y.a,
        spec: x.spec,
    }
});

binop!(Div, div, |x, y| x.try_div(y).expect("field division error"));

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            spec: self.spec,
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

/// Numeric order under the real embedding (same spec only; distinct specs
/// order structurally so sorting mixed collections stays total).
impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.spec != other.spec {
            return self.spec.cmp(&other.spec);
        }
        match (self - other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.spec.radicand().unwrap())
        } else {
            write!(
                f,
                "{}{}{}*sqrt({})",
                self.a,
                if self.b.is_negative() { "" } else { "+" },
                self.b,
                self.spec.radicand().unwrap()
            )
        }
    }
}

/// Wire form of a scalar: `"p/q"` (or `"n"`) for rationals, a two-element
/// array `["p/q","r/s"]` meaning `p/q + (r/s)·√d` for quadratic fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Rational(String),
    Quadratic([String; 2]),
}

fn parse_big_ratio(s: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::Parse(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

fn emit_big_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FieldScalar {
    pub fn encode(&self) -> ScalarRepr {
        match self.spec {
            FieldSpec::Rational => ScalarRepr::Rational(emit_big_ratio(&self.a)),
            FieldSpec::Quadratic { .. } => {
                ScalarRepr::Quadratic([emit_big_ratio(&self.a), emit_big_ratio(&self.b)])
            }
        }
    }

    pub fn decode(spec: FieldSpec, repr: &ScalarRepr) -> Result<Self, FieldError> {
        match repr {
            ScalarRepr::Rational(s) => {
                FieldScalar::new(spec, parse_big_ratio(s)?, BigRational::zero())
            }
            ScalarRepr::Quadratic([a, b]) => {
                FieldScalar::new(spec, parse_big_ratio(a)?, parse_big_ratio(b)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::quadratic(2).unwrap()
    }

    fn qs(p: i64, r: i64) -> FieldScalar {
        FieldScalar::quad(q(), p, r, 1).unwrap()
    }

    #[test]
    fn radicand_validation() {
        assert!(FieldSpec::quadratic(2).is_ok());
        assert!(FieldSpec::quadratic(5).is_ok());
        assert!(FieldSpec::quadratic(30).is_ok());
        assert!(FieldSpec::quadratic(4).is_err());
        assert!(FieldSpec::quadratic(12).is_err());
        assert!(FieldSpec::quadratic(1).is_err());
        assert!(FieldSpec::quadratic(0).is_err());
    }

    #[test]
    fn other_radicands_embed_correctly() {
        let q5 = FieldSpec::quadratic(5).unwrap();
        let r5 = FieldScalar::sqrt_term(q5).unwrap();
        assert_eq!(&r5 * &r5, FieldScalar::from_int(q5, 5));
        // 2 - sqrt(5) < 0 since 4 < 5; 9 - 4*sqrt(5) > 0 since 81 > 80
        let x = FieldScalar::from_int(q5, 2) - &r5;
        assert_eq!(x.sign(), -1);
        let y = FieldScalar::from_int(q5, 9) - FieldScalar::from_int(q5, 4) * &r5;
        assert_eq!(y.sign(), 1);
    }

    #[test]
    fn conjugate_norm_product() {
        // (1+√2)(1-√2) = -1
        let x = qs(1, 1);
        let y = x.galois_conjugate();
        assert_eq!(&x * &y, FieldScalar::from_int(q(), -1));
    }

    #[test]
    fn halves_sum_to_one() {
        let h = FieldScalar::from_ratio(FieldSpec::Rational, 1, 2);
        assert!((&h + &h).is_one());
    }

    #[test]
    fn sqrt_squares_to_radicand() {
        let r = FieldScalar::sqrt_term(q()).unwrap();
        assert_eq!(&r * &r, FieldScalar::from_int(q(), 2));
    }

    #[test]
    fn exact_signs() {
        assert_eq!(FieldScalar::zero(q()).sign(), 0);
        // 3 - 2√2 > 0 since 9 > 8
        assert_eq!(qs(3, -2).sign(), 1);
        // 1 - √2 < 0 since 1 < 2
        assert_eq!(qs(1, -1).sign(), -1);
        assert_eq!(qs(-3, 2).sign(), -1);
        assert_eq!(qs(0, -5).sign(), -1);
        assert_eq!(FieldScalar::from_int(q(), -7).sign(), -1);
    }

    #[test]
    fn conjugation_involution_and_fixed_field() {
        let x = qs(1, 3);
        assert_eq!(x.galois_conjugate().galois_conjugate(), x);
        let five = FieldScalar::from_int(q(), 5);
        assert_eq!(five.galois_conjugate(), five);
        let two_plus = qs(2, 1);
        assert_eq!(two_plus.galois_conjugate(), qs(2, -1));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let x = qs(3, -2);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(
            FieldScalar::zero(q()).inv().unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    #[should_panic(expected = "mismatched field specs")]
    fn mixed_specs_panic() {
        let x = FieldScalar::from_int(FieldSpec::Rational, 1);
        let y = FieldScalar::from_int(q(), 1);
        let _ = &x + &y;
    }

    #[test]
    fn mixed_specs_try_div() {
        let x = FieldScalar::from_int(FieldSpec::Rational, 1);
        let y = FieldScalar::from_int(q(), 1);
        assert!(matches!(x.try_div(&y), Err(FieldError::MixedFields(_, _))));
    }

    #[test]
    fn numeric_ordering() {
        // √2 < 3/2 since 2 < 9/4
        let r = FieldScalar::sqrt_term(q()).unwrap();
        let t = FieldScalar::from_ratio(q(), 3, 2);
        assert!(r < t);
        assert!(qs(3, -2) > FieldScalar::zero(q()));
    }

    #[test]
    fn encode_round_trip() {
        let samples = vec![
            FieldScalar::from_ratio(FieldSpec::Rational, -22, 7),
            FieldScalar::from_int(FieldSpec::Rational, 9),
            qs(0, 1),
            FieldScalar::quad(q(), 3, -5, 4).unwrap(),
        ];
        for x in samples {
            let repr = x.encode();
            let back = FieldScalar::decode(x.spec(), &repr).unwrap();
            assert_eq!(back, x);
            assert_eq!(back.encode(), repr);
        }
    }

    #[test]
    fn encode_shapes() {
        let x = FieldScalar::from_int(FieldSpec::Rational, 4);
        assert_eq!(x.encode(), ScalarRepr::Rational("4".into()));
        let y = FieldScalar::from_ratio(FieldSpec::Rational, 1, -2);
        assert_eq!(y.encode(), ScalarRepr::Rational("-1/2".into()));
        let z = FieldScalar::quad(q(), 1, -1, 2).unwrap();
        assert_eq!(
            z.encode(),
            ScalarRepr::Quadratic(["1/2".into(), "-1/2".into()])
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(
            FieldScalar::decode(FieldSpec::Rational, &ScalarRepr::Rational("1/0".into())).is_err()
        );
        assert!(
            FieldScalar::decode(FieldSpec::Rational, &ScalarRepr::Rational("x".into())).is_err()
        );
        assert!(FieldScalar::decode(
            FieldSpec::Rational,
            &ScalarRepr::Quadratic(["1".into(), "1".into()])
        )
        .is_err());
    }
}
