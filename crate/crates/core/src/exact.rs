//! Exact rational scalars.
//!
//! Every quantity in the crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. The text form
//! `"p/q"` (or `"p"` when `q = 1`) is the wire format used by every file and
//! command-line surface.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::UndefinedParameter("denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` for literal fractions. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("literal fraction with zero denominator")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// `max(|numerator|, denominator)` of the reduced fraction.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        if &n > self.denom() {
            n
        } else {
            self.denom().clone()
        }
    }

    /// True when `0 < self < 1`.
    pub fn in_unit_interval(&self) -> bool {
        self.is_positive() && self.numer() < self.denom()
    }

    /// Maps `|self|` into `(0, 1]` by taking the reciprocal when it exceeds one.
    /// `None` for zero.
    pub fn fold_unit(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let a = self.abs();
        if a.numer() > a.denom() {
            a.recip()
        } else {
            Some(a)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering of `self` rounded (half away from zero) to `digits`
    /// significant digits, in `d.ddde<exp>` form. Exact: no floating point.
    pub fn to_sig_digits(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let x = self.abs();
        let ten = Rational::integer(10);

        let mut exp = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
        while x < pow10(exp) {
            exp -= 1;
        }
        while x >= &pow10(exp) * &ten {
            exp += 1;
        }

        let limit = num_traits::pow(BigInt::from(10), digits as usize);
        let mantissa = loop {
            let scaled = &x * &pow10(digits as i64 - 1 - exp);
            let m = round_half_away(&scaled);
            if m >= limit {
                exp += 1;
                continue;
            }
            break m;
        };
        let m = mantissa.to_string();
        let (lead, rest) = m.split_at(1);
        if rest.is_empty() {
            format!("{sign}{lead}e{exp}")
        } else {
            format!("{sign}{lead}.{rest}e{exp}")
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

fn pow10(exp: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::integer(p)
    } else {
        Rational(BigRational::new(BigInt::one(), p))
    }
}

fn round_half_away(x: &Rational) -> BigInt {
    let (q, r) = x.numer().div_rem(x.denom());
    let twice: BigInt = &r * 2u32;
    if twice.magnitude() >= x.denom().magnitude() {
        q + x.numer().signum()
    } else {
        q
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
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

    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason| Error::ParseRational {
            text: text.to_string(),
            reason,
        };
        let t = text.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| bad("numerator is not an integer"))?;
        let denom: BigInt = d.parse().map_err(|_| bad("denominator is not an integer"))?;
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($Trait::$method(&self.0, &rhs.0))
            }
        }
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($Trait::$method(self.0, rhs.0))
            }
        }
        impl $Trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($Trait::$method(self.0, &rhs.0))
            }
        }
        impl $Trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($Trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division by zero panics, as for the underlying BigRational.
forward_binop!(Div, div);

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

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The nonnegative rational `r` with `r^2 = q`, when `q` is the square of a
/// rational. Negative input yields `None`.
pub fn rat_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    // reduced q is a square iff numerator and denominator both are
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational(BigRational::new_raw(n, d)))
}

/// All rational roots of `a t^2 + b t + c = 0`.
///
/// Two distinct roots are returned as `[(-b + sqrt D) / 2a, (-b - sqrt D) / 2a]`;
/// a double root once. With `a = 0` the equation is linear. Fails only for the
/// identity `0 = 0`.
pub fn solve_quadratic(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<Rational>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                Err(Error::DegenerateIdentity)
            } else {
                Ok(Vec::new())
            };
        }
        return Ok(vec![-(c / b)]);
    }
    let disc = b.square() - Rational::integer(4) * a * c;
    let Some(root) = rat_sqrt(&disc) else {
        return Ok(Vec::new());
    };
    let two_a = a * &Rational::integer(2);
    if root.is_zero() {
        return Ok(vec![-b / &two_a]);
    }
    Ok(vec![(-b + &root) / &two_a, (-b - root) / two_a])
}

/// Lexicographic comparison of rational slices, used for deterministic orderings.
pub fn cmp_slices(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter().cmp(b.iter())
}
