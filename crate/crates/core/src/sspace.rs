//! The s-parameter domain.
//!
//! An s-set `[s1, s2, s3, s4]` generates four rational Pythagorean triples
//! `u = (1 - s^2) / 2s`, `v = (1 + s^2) / 2s`; it describes a piped when the
//! face relation `2 u1^2 + 2 u2^2 = u3^2 + u4^2` holds. Cleared of
//! denominators that relation is the degree-10 governing polynomial evaluated
//! by [`governing_residual`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_sqrt, solve_quadratic, Rational};

const NAMES: [&str; 4] = ["s1", "s2", "s3", "s4"];

/// Quadruple `[s1, s2, s3, s4]`.
///
/// Any values may be stored; operations that need nonzero entries check for
/// themselves. Ordering is lexicographic on the entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SParams([Rational; 4]);

impl SParams {
    pub fn new(s1: Rational, s2: Rational, s3: Rational, s4: Rational) -> Self {
        SParams([s1, s2, s3, s4])
    }

    pub fn from_array(values: [Rational; 4]) -> Self {
        SParams(values)
    }

    pub fn s1(&self) -> &Rational {
        &self.0[0]
    }

    pub fn s2(&self) -> &Rational {
        &self.0[1]
    }

    pub fn s3(&self) -> &Rational {
        &self.0[2]
    }

    pub fn s4(&self) -> &Rational {
        &self.0[3]
    }

    pub fn as_array(&self) -> &[Rational; 4] {
        &self.0
    }

    pub fn into_array(self) -> [Rational; 4] {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }

    fn check_nonzero(&self) -> Result<()> {
        match self.0.iter().position(Rational::is_zero) {
            Some(i) => Err(Error::UndefinedParameter(NAMES[i])),
            None => Ok(()),
        }
    }

    /// No entry is zero or of absolute value one.
    pub fn is_nondegenerate(&self) -> bool {
        self.0.iter().all(|s| !s.is_zero() && !s.abs().is_one())
    }

    /// Largest height over the four entries.
    pub fn height(&self) -> BigInt {
        self.0.iter().map(Rational::height).max().unwrap()
    }

    /// `s3 - s4`, the closeness of the piped to a rectangular cuboid.
    pub fn closeness(&self) -> Rational {
        self.s3() - self.s4()
    }
}

impl fmt::Display for SParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Debug for SParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"s1,s2,s3,s4"`, optionally wrapped in brackets.
impl FromStr for SParams {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::ParseRational {
                text: text.to_string(),
                reason: "expected four comma-separated rationals",
            });
        }
        let mut values: [Rational; 4] = Default::default();
        for (slot, part) in values.iter_mut().zip(parts) {
            *slot = part.parse()?;
        }
        Ok(SParams(values))
    }
}

// Monomials of the governing polynomial as (coefficient, exponents of s_i^2).
const GOVERNING_TERMS: [(i64, [usize; 4]); 9] = [
    (1, [1, 1, 2, 1]),
    (1, [1, 1, 1, 2]),
    (-2, [2, 1, 1, 1]),
    (-2, [1, 2, 1, 1]),
    (4, [1, 1, 1, 1]),
    (-2, [1, 0, 1, 1]),
    (-2, [0, 1, 1, 1]),
    (1, [1, 1, 1, 0]),
    (1, [1, 1, 0, 1]),
];

/// Exact value of the governing polynomial
///
/// ```text
/// s1²s2²s3⁴s4² + s1²s2²s3²s4⁴ − 2s1⁴s2²s3²s4² − 2s1²s2⁴s3²s4² + 4s1²s2²s3²s4²
///   − 2s1²s3²s4² − 2s2²s3²s4² + s1²s2²s3² + s1²s2²s4²
/// ```
///
/// at `s`. Zero iff `s` solves the governing equation.
pub fn governing_residual(s: &SParams) -> Result<Rational> {
    s.check_nonzero()?;
    // s_i^2 = p_i / q_i; every monomial has degree <= 2 in each s_i^2, so
    // multiplying through by prod q_i^2 leaves an integer polynomial.
    let mut p_pow: [[BigInt; 3]; 4] = Default::default();
    let mut q_pow: [[BigInt; 3]; 4] = Default::default();
    for (i, v) in s.iter().enumerate() {
        let p = v.numer() * v.numer();
        let q = v.denom() * v.denom();
        p_pow[i] = [BigInt::from(1), p.clone(), &p * &p];
        q_pow[i] = [BigInt::from(1), q.clone(), &q * &q];
    }
    let mut total = BigInt::from(0);
    for (coef, exps) in GOVERNING_TERMS {
        let mut term = BigInt::from(coef);
        for i in 0..4 {
            term *= &p_pow[i][exps[i]];
            term *= &q_pow[i][2 - exps[i]];
        }
        total += term;
    }
    let denom: BigInt = q_pow.iter().map(|q| &q[2]).product();
    Rational::new(total, denom)
}

/// `s` solves the governing equation and no entry is in `{0, 1, -1}`.
pub fn is_solution(s: &SParams) -> bool {
    s.is_nondegenerate() && governing_residual(s).map(|r| r.is_zero()).unwrap_or(false)
}

/// Canonical representative under the symmetries of the governing equation:
/// per-coordinate `s -> 1/s` and `s -> -s`, `s1 <-> s2`, and `s3 <-> s4`.
/// Each entry is folded into `(0, 1]`, then each pair is sorted ascending.
pub fn normalize(s: &SParams) -> Result<SParams> {
    s.check_nonzero()?;
    let mut v: [Rational; 4] = Default::default();
    for (slot, x) in v.iter_mut().zip(s.iter()) {
        *slot = x.fold_unit().expect("nonzero");
    }
    if v[0] > v[1] {
        v.swap(0, 1);
    }
    if v[2] > v[3] {
        v.swap(2, 3);
    }
    Ok(SParams(v))
}

/// Same canonical form. Sets with a zero entry are never equivalent.
pub fn equivalent(a: &SParams, b: &SParams) -> bool {
    match (normalize(a), normalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

fn sharipov_cubic(s1: &Rational, s2: &Rational, t: &Rational) -> Rational {
    let s12 = s1 * s2;
    // s1 s2^2 t + s1^2 s2 t - s1 s2 t^2 + s1 s2 - s2 t - s1 t
    &s12 * &(s2 * t) + &s12 * &(s1 * t) - &s12 * &t.square() + &s12 - s2 * t - s1 * t
}

/// Sign conditions a solution must meet to describe an actual piped:
/// every `s_i` in `(0, 1)` and both cubics (in `s3` and in `s4`) negative.
pub fn sharipov_feasible(s: &SParams) -> bool {
    if !s.iter().all(Rational::in_unit_interval) {
        return false;
    }
    sharipov_cubic(s.s1(), s.s2(), s.s3()).is_negative()
        && sharipov_cubic(s.s1(), s.s2(), s.s4()).is_negative()
}

/// Every positive rational `s4` completing `[s1, s2, s3, s4]` to a solution
/// of the governing equation, ascending.
///
/// In `t = s4^2` the governing polynomial is `A t^2 + B t + A` with
/// `A = s1^2 s2^2 s3^2`, so rational roots come in reciprocal pairs and so
/// do the returned `s4`.
pub fn solve_for_s4(s1: &Rational, s2: &Rational, s3: &Rational) -> Result<Vec<Rational>> {
    for (v, name) in [(s1, "s1"), (s2, "s2"), (s3, "s3")] {
        if v.is_zero() {
            return Err(Error::UndefinedParameter(name));
        }
    }
    let (x, y, z) = (s1.square(), s2.square(), s3.square());
    let xy = &x * &y;
    let xyz = &xy * &z;
    let two = Rational::integer(2);
    let four = Rational::integer(4);
    // B = XYZ^2 - 2X^2YZ - 2XY^2Z + 4XYZ - 2XZ - 2YZ + XY
    let b = &xyz * &z - &two * &xyz * &x - &two * &xyz * &y + &four * &xyz
        - &two * &(&x * &z)
        - &two * &(&y * &z)
        + &xy;
    let mut out: Vec<Rational> = solve_quadratic(&xyz, &b, &xyz)?
        .into_iter()
        .filter(Rational::is_positive)
        .filter_map(|t| rat_sqrt(&t))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
