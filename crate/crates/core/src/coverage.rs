//! Inverting the closed-form families, and splitting datasets into sets a
//! family covers and anomalous ones.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{solve_quadratic, Rational};
use crate::families::{general_rat, pattern1_rat};
use crate::search::SolutionRecord;
use crate::sspace::{equivalent, governing_residual, SParams};

/// `s` used by the reference batch ranged over `m/n` with `n ≤ 500`.
pub const DEFAULT_S_HEIGHT_BOUND: u64 = 500;

fn require_solution(v: &SParams) -> Result<()> {
    if !v.is_nondegenerate() {
        return Err(Error::DegenerateParameter(format!("{v} has an entry in {{0, 1, -1}}")));
    }
    if !governing_residual(v)?.is_zero() {
        return Err(Error::GoverningViolated(v.clone()));
    }
    Ok(())
}

/// `x`, `−x`, `1/x`, `−1/x`.
fn orbit(x: &Rational) -> Vec<Rational> {
    let r = x.recip().expect("nonzero entry");
    let mut out = vec![x.clone(), -x, -&r, r];
    out.sort();
    out.dedup();
    out
}

/// Roots of `r² − 2kr − 1 = 0` for every `k = (a + b)/(a − b)` over the orbit
/// of the second pair, both orders.
fn r_candidates(v: &SParams) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    let one = Rational::one();
    let two = Rational::integer(2);
    for a in orbit(v.s3()) {
        for b in orbit(v.s4()) {
            if a == b {
                continue;
            }
            let k = (&a + &b) / (&a - &b);
            let linear = -(&two * &k);
            if let Ok(roots) = solve_quadratic(&one, &linear, &-&one) {
                out.extend(roots);
            }
        }
    }
    out
}

fn s_candidates(v: &SParams, bound: Option<&BigInt>) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for x in [v.s1(), v.s2()] {
        for s in orbit(x) {
            if bound.map_or(true, |b| s.height() <= *b) {
                out.insert(s);
            }
        }
    }
    out
}

/// Preference among valid `(s, r)`: `s` in `(0, 1)`, then `r` in `(0, 1)`,
/// then smaller `height(s)`, smaller `s`, smaller `r`.
fn general_rank(s: &Rational, r: &Rational) -> impl Ord {
    (
        !s.in_unit_interval(),
        !r.in_unit_interval(),
        s.height(),
        s.clone(),
        r.clone(),
    )
}

/// Every `(s, r)` with `general_rat(s, r)` equivalent to `v`, `height(s)`
/// limited by `s_height_bound` when given.
pub fn general_preimages(v: &SParams, s_height_bound: Option<&BigInt>) -> Result<Vec<(Rational, Rational)>> {
    require_solution(v)?;
    if v.s3().abs() == v.s4().abs() {
        return Ok(Vec::new());
    }
    let rs = r_candidates(v);
    let mut found = Vec::new();
    for s in s_candidates(v, s_height_bound) {
        for r in &rs {
            if let Ok(p) = general_rat(&s, r) {
                if equivalent(&p.sparams, v) {
                    found.push((s.clone(), r.clone()));
                }
            }
        }
    }
    found.sort_by_key(|(s, r)| general_rank(s, r));
    Ok(found)
}

/// A parameter pair `(s, r)` with `general_rat(s, r)` equivalent to `v`.
pub fn invert_general(v: &SParams) -> Result<Option<(Rational, Rational)>> {
    invert_general_bounded(v, None)
}

pub fn invert_general_bounded(
    v: &SParams,
    s_height_bound: Option<&BigInt>,
) -> Result<Option<(Rational, Rational)>> {
    Ok(general_preimages(v, s_height_bound)?.into_iter().next())
}

/// Every `q` with `pattern1_rat(q)` equivalent to `v`, preferred first:
/// `q > 1`, then smaller height, then smaller value.
pub fn pattern1_preimages(v: &SParams) -> Result<Vec<Rational>> {
    require_solution(v)?;
    let half = Rational::frac(1, 2);
    let two = Rational::integer(2);
    let has_half = [v.s1(), v.s2()]
        .iter()
        .any(|x| x.abs() == half || x.abs() == two);
    if !has_half {
        return Ok(Vec::new());
    }
    let one = Rational::one();
    let mut qs = BTreeSet::new();
    for x in [v.s3(), v.s4()] {
        for b in orbit(x) {
            // s4 = (q² + 2q − 1)/(2q² + 2)  ⇔  (2s4 − 1)q² − 2q + (2s4 + 1) = 0
            let a = &two * &b - &one;
            let c = &two * &b + &one;
            if let Ok(roots) = solve_quadratic(&a, &-&two, &c) {
                qs.extend(roots);
            }
        }
    }
    let mut found: Vec<Rational> = qs
        .into_iter()
        .filter(|q| matches!(pattern1_rat(q), Ok(p) if equivalent(&p.sparams, v)))
        .collect();
    found.sort_by_key(|q| (*q <= one, q.height(), q.clone()));
    Ok(found)
}

pub fn invert_pattern1(v: &SParams) -> Result<Option<Rational>> {
    Ok(pattern1_preimages(v)?.into_iter().next())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralParams {
    pub s: Rational,
    pub r: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pattern1Params {
    pub q: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub s: SParams,
    pub covered: bool,
    pub general: Option<GeneralParams>,
    pub pattern1: Option<Pattern1Params>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub total: usize,
    pub covered: usize,
    pub anomalous: usize,
    /// `None` when general inversion was unrestricted.
    pub s_height_bound: Option<u64>,
    pub records: Vec<Classified>,
}

/// Splits records into covered and anomalous. A record is covered when it
/// inverts under the pattern-1 form, or under the general form with
/// `height(s) ≤ s_height_bound`.
pub fn classify(records: &[SolutionRecord], s_height_bound: Option<u64>) -> Result<CoverageReport> {
    let bound = s_height_bound.map(BigInt::from);
    let classified = records
        .par_iter()
        .map(|rec| {
            let v = &rec.canonical;
            let general = invert_general_bounded(v, bound.as_ref())?
                .map(|(s, r)| GeneralParams { s, r });
            let pattern1 = invert_pattern1(v)?.map(|q| Pattern1Params { q });
            Ok(Classified {
                s: v.clone(),
                covered: general.is_some() || pattern1.is_some(),
                general,
                pattern1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let covered = classified.iter().filter(|c| c.covered).count();
    Ok(CoverageReport {
        total: classified.len(),
        covered,
        anomalous: classified.len() - covered,
        s_height_bound,
        records: classified,
    })
}

pub const PLOT_HEADER: &str = "x_exact,x_abs,y,family";

/// One CSV row per record: `x = s3 − s4` exactly and as a 12-digit decimal
/// magnitude, `y = |numerator(s2)|`, and the family tag, all taken from the
/// set as produced. `x_abs` is left empty when `x = 0` since it has no place
/// on a log axis.
pub fn emit_plot_points(records: &[SolutionRecord]) -> String {
    let mut out = String::from(PLOT_HEADER);
    out.push('\n');
    for rec in records {
        let s = rec.as_generated();
        let x = s.closeness();
        let x_abs = if x.is_zero() {
            String::new()
        } else {
            x.abs().to_sig_digits(12)
        };
        let y = s.s2().numer().magnitude().clone();
        let family = match &rec.family {
            Some(f) => f.clone(),
            None => serde_json::to_value(rec.provenance)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
        };
        writeln!(out, "{x},{x_abs},{y},{family}").expect("writing to a String");
    }
    out
}
