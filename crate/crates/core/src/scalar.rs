//! Scalar kinds.
//!
//! Every algebraic object is generic over [`Field`], implemented for exact
//! rationals ([`Rational`]) and `f64`. Mixing kinds inside one computation is
//! a type error. [`Scalar`] is the dynamically tagged value used at the
//! document and report boundary, where mixing is rejected at runtime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always stored reduced.
pub type Rational = BigRational;

/// Float coefficients with absolute value at or below this are dropped from
/// sparse storage.
pub const FLOAT_PRUNE: f64 = 1e-13;

/// Pivot threshold for float elimination.
pub const FLOAT_PIVOT: f64 = 1e-9;

/// Default tolerance for float zero tests in verdicts.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Exact,
    Float,
}

impl ScalarKind {
    pub fn name(self) -> &'static str {
        match self {
            ScalarKind::Exact => "exact",
            ScalarKind::Float => "float",
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Exact zero for rationals; `|x| <= FLOAT_PRUNE` for floats.
    fn is_zero(&self) -> bool;

    /// Exact zero for rationals; `|x| <= tol` for floats.
    fn near_zero(&self, tol: f64) -> bool;

    /// Zero test used when choosing elimination pivots.
    fn is_pivot_zero(&self) -> bool;

    fn inv(&self) -> Option<Self>;
    fn abs(&self) -> Self;
    fn is_positive(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Square root, exact only when the value is a rational square.
    fn sqrt(&self) -> Option<Self>;

    /// Real `n`-th root of a positive value, exact only for perfect powers.
    fn nth_root(&self, n: u32) -> Option<Self>;

    /// A pair `(x, y)` with `(x^2 + y^2) * norm_sq = 1`.
    fn circle_point(norm_sq: &Self) -> Option<(Self, Self)>;

    /// A quadruple `x` with `(x0^2 + x1^2 + x2^2 + x3^2) * norm_sq = 1`.
    fn sphere_point4(norm_sq: &Self) -> Option<[Self; 4]>;

    /// Best-effort rational reconstruction; identity for rationals.
    fn to_rational_approx(&self) -> Option<Rational>;

    fn to_scalar(&self) -> Scalar;
    fn from_scalar(s: &Scalar) -> Result<Self>;

    fn div(&self, d: &Self) -> Self {
        self.clone() * &d.inv().expect("division by zero")
    }

    fn checked_div(&self, d: &Self) -> Result<Self> {
        d.inv()
            .map(|i| self.clone() * &i)
            .ok_or(Error::DivisionByZero)
    }

    fn half(&self) -> Self {
        self.clone() * &Self::from_ratio(1, 2)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other).near_zero(tol)
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    rational_nth_root(q, 2)
}

fn rational_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return rational_nth_root(&-q.clone(), n).map(|r| -r);
    }
    let num = q.numer();
    let den = q.denom();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if num::pow(rn.clone(), n as usize) == *num && num::pow(rd.clone(), n as usize) == *den {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Search bound for the sum-of-squares representations.
const SQUARE_SEARCH_LIMIT: u128 = 1_000_000_000_000;

/// Integers `(x, y)` with `x^2 + y^2 = n`, by direct search.
pub(crate) fn two_squares(n: u128) -> Option<(u128, u128)> {
    if n > SQUARE_SEARCH_LIMIT {
        return None;
    }
    let top = isqrt_u128(n);
    let mut x = top;
    loop {
        let rem = n - x * x;
        let y = isqrt_u128(rem);
        if y * y == rem {
            return Some((x, y));
        }
        if x == 0 || x * x * 2 < n {
            return None;
        }
        x -= 1;
    }
}

/// Integers with `a^2 + b^2 + c^2 + d^2 = n`.
pub(crate) fn four_squares(n: u128) -> Option<[u128; 4]> {
    if n > SQUARE_SEARCH_LIMIT {
        return None;
    }
    let top = isqrt_u128(n);
    for a in (0..=top).rev().take(64) {
        let ra = n - a * a;
        let tb = isqrt_u128(ra);
        for b in (0..=tb).rev().take(64) {
            let rb = ra - b * b;
            if let Some((c, d)) = two_squares(rb) {
                return Some([a, b, c, d]);
            }
        }
    }
    None
}

fn rational_parts_u128(q: &Rational) -> Option<(u128, u128)> {
    if !Signed::is_positive(q) {
        return None;
    }
    Some((q.numer().to_u128()?, q.denom().to_u128()?))
}

impl Field for Rational {
    const KIND: ScalarKind = ScalarKind::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn near_zero(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn is_pivot_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        rational_nth_root(self, n)
    }
    fn circle_point(norm_sq: &Self) -> Option<(Self, Self)> {
        // (x^2 + y^2) p/q = 1  <=>  (xp)^2 + (yp)^2 = pq
        let (p, q) = rational_parts_u128(norm_sq)?;
        let (a, b) = two_squares(p.checked_mul(q)?)?;
        let pr = Rational::from_integer(BigInt::from(p));
        Some((
            Rational::from_integer(BigInt::from(a)) / &pr,
            Rational::from_integer(BigInt::from(b)) / &pr,
        ))
    }
    fn sphere_point4(norm_sq: &Self) -> Option<[Self; 4]> {
        let (p, q) = rational_parts_u128(norm_sq)?;
        let s = four_squares(p.checked_mul(q)?)?;
        let pr = Rational::from_integer(BigInt::from(p));
        Some(s.map(|v| Rational::from_integer(BigInt::from(v)) / &pr))
    }
    fn to_rational_approx(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Exact(q) => Ok(q.clone()),
            Scalar::Float(_) => Err(Error::KindMismatch("exact", "float")),
        }
    }
}

impl Field for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        f64::abs(*self) <= FLOAT_PRUNE
    }
    fn near_zero(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }
    fn is_pivot_zero(&self) -> bool {
        f64::abs(*self) <= FLOAT_PIVOT
    }
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        if *self < 0.0 {
            if n % 2 == 0 {
                None
            } else {
                Some(-(-self).powf(1.0 / n as f64))
            }
        } else {
            Some(self.powf(1.0 / n as f64))
        }
    }
    fn circle_point(norm_sq: &Self) -> Option<(Self, Self)> {
        if *norm_sq <= 0.0 {
            return None;
        }
        Some((1.0 / f64::sqrt(*norm_sq), 0.0))
    }
    fn sphere_point4(norm_sq: &Self) -> Option<[Self; 4]> {
        if *norm_sq <= 0.0 {
            return None;
        }
        Some([1.0 / f64::sqrt(*norm_sq), 0.0, 0.0, 0.0])
    }
    fn to_rational_approx(&self) -> Option<Rational> {
        rationalize(*self, 1_000_000, 1e-9)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Float(x) => Ok(*x),
            Scalar::Exact(_) => Err(Error::KindMismatch("float", "exact")),
        }
    }
}

/// Continued-fraction reconstruction of `x` with denominator at most `max_den`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 != 0 && ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
        Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
    } else {
        None
    }
}

/// Dynamically tagged scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Exact(_) => ScalarKind::Exact,
            Scalar::Float(_) => ScalarKind::Float,
        }
    }

    pub fn exact(n: i64, d: i64) -> Scalar {
        Scalar::Exact(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => Field::to_f64(q),
            Scalar::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => Zero::is_zero(q),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    fn combine(
        &self,
        other: &Scalar,
        fq: impl Fn(&Rational, &Rational) -> Result<Rational>,
        ff: impl Fn(f64, f64) -> Result<f64>,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => fq(a, b).map(Scalar::Exact),
            (Scalar::Float(a), Scalar::Float(b)) => ff(*a, *b).map(Scalar::Float),
            (a, b) => Err(Error::KindMismatch(a.kind().name(), b.kind().name())),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| Ok(a + b), |a, b| Ok(a + b))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| Ok(a - b), |a, b| Ok(a - b))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| Ok(a * b), |a, b| Ok(a * b))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(
            other,
            |a, b| {
                if Zero::is_zero(b) {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(a / b)
                }
            },
            |a, b| {
                if b == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(a / b)
                }
            },
        )
    }

    /// Parse a literal. Fractions and integers are exact, anything with a
    /// decimal point or exponent is a float.
    pub fn parse(text: &str) -> Result<Scalar> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        if is_float_literal(t) {
            return t
                .parse::<f64>()
                .map(Scalar::Float)
                .map_err(|_| Error::Parse(format!("bad decimal literal '{t}'")));
        }
        parse_rational(t).map(Scalar::Exact)
    }

    /// Parse into a required kind; exact literals are accepted in float mode.
    pub fn parse_as(text: &str, kind: ScalarKind) -> Result<Scalar> {
        let s = Scalar::parse(text)?;
        match (kind, s) {
            (ScalarKind::Exact, Scalar::Float(_)) => Err(Error::Parse(format!(
                "decimal literal '{}' in an exact document",
                text.trim()
            ))),
            (ScalarKind::Float, Scalar::Exact(q)) => Ok(Scalar::Float(Field::to_f64(&q))),
            (_, s) => Ok(s),
        }
    }
}

fn is_float_literal(t: &str) -> bool {
    let lower = t.to_ascii_lowercase();
    lower.contains('.') || lower.contains('e') || lower.contains("inf") || lower.contains("nan")
}

/// Parse `p`, `p/q`, `-p/q`.
pub fn parse_rational(t: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad fraction literal '{t}'"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.sign() == Sign::NoSign {
        return Err(Error::Parse(format!("zero denominator in '{t}'")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical rendering: reduced, sign on the numerator, integers without `/1`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => f.write_str(&format_rational(q)),
            Scalar::Float(x) => f.write_str(&format_float(*x)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
            Float(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => Scalar::parse(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Scalar::Exact(Rational::from_integer(BigInt::from(i)))),
            Raw::Float(x) => Ok(Scalar::Float(x)),
        }
    }
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
