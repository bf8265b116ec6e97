//! Exact rational scalars and fixed-dimension rational vectors.
//!
//! Every quantity in this crate (matrix entries, multipliers, bounds) is a
//! [`Rational`]; nothing is ever rounded. Values are kept in lowest terms
//! with a positive denominator so that equal numbers have equal
//! representations and serialized output is reproducible byte for byte.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::Error;

/// An arbitrary-precision rational in lowest terms, denominator > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_u64(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics if `den == 0`; use [`FromStr`] for
    /// untrusted input.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `floor` clamped into `u64`; `None` when negative or too large.
    pub fn floor_u64(&self) -> Option<u64> {
        use num::ToPrimitive;
        let f = self.floor_int();
        if f.is_negative() {
            return None;
        }
        f.to_u64()
    }

    /// True when in lowest terms with a positive denominator (or the
    /// canonical zero 0/1). Exercised by tests after every operation class.
    pub fn is_canonical(&self) -> bool {
        use num::Integer;
        let d = self.0.denom();
        if !d.is_positive() {
            return false;
        }
        self.0.numer().gcd(d).is_one()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"`, optionally signed, `q > 0` after reduction.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num = BigInt::from_str(num_str.trim())
            .map_err(|_| Error::BadRational(s.to_string()))?;
        let den = match den_str {
            Some(d) => {
                BigInt::from_str(d.trim()).map_err(|_| Error::BadRational(s.to_string()))?
            }
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational as \"p/q\", an integer string, or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(|e| E::custom(format!("{e}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_u64(v))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

/// A dense rational vector; the dimension is the length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    /// Standard basis vector `e_j`.
    pub fn unit(dim: usize, j: usize) -> Self {
        assert!(j < dim);
        let mut v = vec![Rational::zero(); dim];
        v[j] = Rational::one();
        QVector(v)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&n| Rational::from_int(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, j: usize) -> &Rational {
        &self.0[j]
    }

    pub fn set(&mut self, j: usize, v: Rational) {
        self.0[j] = v;
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|r| !r.is_negative())
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// Componentwise `max(entry, 0)`.
    pub fn positive_part(&self) -> QVector {
        QVector(
            self.0
                .iter()
                .map(|a| if a.is_negative() { Rational::zero() } else { a.clone() })
                .collect(),
        )
    }

    /// Extend by one trailing entry (used when homogenizing).
    pub fn with_appended(&self, last: Rational) -> QVector {
        let mut v = self.0.clone();
        v.push(last);
        QVector(v)
    }

    /// Drop the trailing entry.
    pub fn without_last(&self) -> QVector {
        let mut v = self.0.clone();
        v.pop();
        QVector(v)
    }

    /// Scale by the unique positive rational making the entries coprime
    /// integers. The zero vector is returned unchanged.
    pub fn primitive(&self) -> QVector {
        let scale = primitive_scale(&self.0);
        match scale {
            Some(s) => self.scale(&s),
            None => self.clone(),
        }
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The positive factor turning `entries` into a coprime integer vector,
/// or `None` for the zero vector.
pub(crate) fn primitive_scale(entries: &[Rational]) -> Option<Rational> {
    use num::Integer;
    let mut lcm = BigInt::one();
    let mut any = false;
    for r in entries {
        if !r.is_zero() {
            any = true;
            lcm = lcm.lcm(r.denom());
        }
    }
    if !any {
        return None;
    }
    let mut gcd = BigInt::zero();
    for r in entries {
        if !r.is_zero() {
            let scaled = r.numer() * (&lcm / r.denom());
            gcd = gcd.gcd(&scaled);
        }
    }
    Some(Rational::from_big(lcm, gcd).expect("gcd of nonzero entries is nonzero"))
}
