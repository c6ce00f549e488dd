//! Closed-form parametric families of s-parameter solutions.
//!
//! Each generator returns the quadruple exactly as its formula prints it,
//! unnormalized, wrapped in a [`FamilyPoint`] that has already been checked
//! against the governing equation. Outputs with an entry in `{0, 1, -1}` are
//! reported as [`Error::Degenerate`] carrying the produced set.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::sspace::{governing_residual, normalize, sharipov_feasible, SParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    P1Set1,
    P1Set2,
    P1Set3,
    P1Set4,
    P1Int,
    P1Rat,
    P2Int,
    P2Rat,
    GenInt,
    GenRat,
    Obtuse,
    Acute,
}

impl FamilyKind {
    pub fn tag(self) -> &'static str {
        match self {
            FamilyKind::P1Set1 => "P1_SET1",
            FamilyKind::P1Set2 => "P1_SET2",
            FamilyKind::P1Set3 => "P1_SET3",
            FamilyKind::P1Set4 => "P1_SET4",
            FamilyKind::P1Int => "P1_INT",
            FamilyKind::P1Rat => "P1_RAT",
            FamilyKind::P2Int => "P2_INT",
            FamilyKind::P2Rat => "P2_RAT",
            FamilyKind::GenInt => "GEN_INT",
            FamilyKind::GenRat => "GEN_RAT",
            FamilyKind::Obtuse => "OBTUSE",
            FamilyKind::Acute => "ACUTE",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for FamilyKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// A generated solution together with the family and inputs that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPoint {
    pub family: FamilyKind,
    pub params: Vec<Rational>,
    pub sparams: SParams,
}

impl FamilyPoint {
    /// Validates `sparams` against the governing equation.
    pub fn new(family: FamilyKind, params: Vec<Rational>, sparams: SParams) -> Result<Self> {
        let degenerate = || Error::Degenerate {
            family: family.tag(),
            params: join(&params),
            sparams: sparams.clone(),
        };
        if sparams.iter().any(Rational::is_zero) {
            return Err(degenerate());
        }
        // residual before the ±1 check, so a flagged set is still a solution
        if !governing_residual(&sparams)?.is_zero() {
            return Err(Error::GoverningViolated(sparams));
        }
        if !sparams.is_nondegenerate() {
            return Err(degenerate());
        }
        Ok(FamilyPoint {
            family,
            params,
            sparams,
        })
    }

    pub fn canonical(&self) -> SParams {
        normalize(&self.sparams).expect("family points have no zero entry")
    }

    pub fn feasible(&self) -> bool {
        sharipov_feasible(&self.canonical())
    }
}

#[derive(Serialize)]
struct FamilyPointLine<'a> {
    family: FamilyKind,
    params: &'a [Rational],
    s: &'a SParams,
    canonical: SParams,
    feasible: bool,
}

impl Serialize for FamilyPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyPointLine {
            family: self.family,
            params: &self.params,
            s: &self.sparams,
            canonical: self.canonical(),
            feasible: self.feasible(),
        }
        .serialize(serializer)
    }
}

fn join(params: &[Rational]) -> String {
    params
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn int(v: i64) -> Rational {
    Rational::integer(v)
}

fn ratio(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DegenerateParameter(format!("{what} has a zero denominator")));
    }
    Ok(num / den)
}

fn half() -> Rational {
    Rational::frac(1, 2)
}

/// `α = 2mn + m² − n²`, `β = 2mn + n² − m²`, `γ = m² + n²`, with `α² + β² = 2γ²`.
pub fn sum2squares_param(m: i64, n: i64) -> Result<(BigInt, BigInt, BigInt)> {
    if m == 0 && n == 0 {
        return Err(Error::DegenerateParameter("(m, n) = (0, 0)".into()));
    }
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    let two_mn = BigInt::from(2) * &m * &n;
    let (m2, n2) = (&m * &m, &n * &n);
    Ok((&two_mn + &m2 - &n2, &two_mn + &n2 - &m2, m2 + n2))
}

/// The four pattern-1 sets `[1/2, c/a, c/b, a/b]`, one per factor solution.
/// Each point's params are `[m, n, a, b, c]`.
pub fn pattern1_four_sets(m: i64, n: i64) -> Result<[FamilyPoint; 4]> {
    let (alpha, beta, gamma) = sum2squares_param(m, n)?;
    let (mr, nr) = (int(m), int(n));
    let (m2, n2) = (mr.square(), nr.square());
    let two = int(2);
    let mn = &mr * &nr;

    let p = |x: &BigInt| Rational::integer(x.clone());
    let (al, be, ga) = (p(&alpha), p(&beta), p(&gamma));
    let triples = [
        (al.clone(), &two * &ga, be.clone()),
        (be.clone(), &two * &ga, al.clone()),
        (&two * &be * &ga, &al * &be, &two * &al * &ga),
        (&two * &al * &ga, &al * &be, &two * &be * &ga),
    ];

    let what = "pattern-1 set";
    let sets = [
        [
            ratio(be.clone(), al.clone(), what)?,
            ratio(be.clone(), &two * &ga, what)?,
            ratio(al.clone(), &two * &ga, what)?,
        ],
        [
            ratio(al.clone(), be.clone(), what)?,
            ratio(al.clone(), &two * &ga, what)?,
            ratio(be.clone(), &two * &ga, what)?,
        ],
        [
            ratio(&m2 + &two * &mn - &n2, &n2 + &two * &mn - &m2, what)?,
            ratio(&two * &(&m2 + &n2), &n2 + &two * &mn - &m2, what)?,
            ratio(&two * &(&m2 + &n2), &m2 + &two * &mn - &n2, what)?,
        ],
        [
            ratio(&m2 - &two * &mn - &n2, &n2 - &two * &mn - &m2, what)?,
            ratio(&two * &(&m2 + &n2), &m2 + &two * &mn - &n2, what)?,
            ratio(&two * &(&m2 + &n2), &n2 + &two * &mn - &m2, what)?,
        ],
    ];
    let kinds = [
        FamilyKind::P1Set1,
        FamilyKind::P1Set2,
        FamilyKind::P1Set3,
        FamilyKind::P1Set4,
    ];

    let mut out = Vec::with_capacity(4);
    for ((kind, [s2, s3, s4]), (a, b, c)) in kinds.into_iter().zip(sets).zip(triples) {
        let params = vec![mr.clone(), nr.clone(), a, b, c];
        out.push(FamilyPoint::new(kind, params, SParams::new(half(), s2, s3, s4))?);
    }
    Ok(out.try_into().expect("four sets"))
}

/// Pattern 1 over integers:
/// `[1/2, (2mn+n²−m²)/(2mn+m²−n²), (2mn+n²−m²)/2(m²+n²), (2mn+m²−n²)/2(m²+n²)]`.
pub fn pattern1_int(m: i64, n: i64) -> Result<FamilyPoint> {
    let (alpha, beta, gamma) = sum2squares_param(m, n)?;
    let (al, be) = (Rational::integer(alpha), Rational::integer(beta));
    let two_ga = Rational::integer(gamma * 2);
    let what = "pattern-1";
    let s = SParams::new(
        half(),
        ratio(be.clone(), al.clone(), what)?,
        ratio(be, two_ga.clone(), what)?,
        ratio(al, two_ga, what)?,
    );
    FamilyPoint::new(FamilyKind::P1Int, vec![int(m), int(n)], s)
}

/// Pattern 1 at `m = q`, `n = 1`:
/// `[1/2, (−q²+2q+1)/(q²+2q−1), (−q²+2q+1)/(2q²+2), (q²+2q−1)/(2q²+2)]`.
pub fn pattern1_rat(q: &Rational) -> Result<FamilyPoint> {
    let q2 = q.square();
    let two = int(2);
    let top = -&q2 + &two * q + int(1);
    let bottom = &q2 + &two * q - int(1);
    let wide = &two * &q2 + &two;
    let what = "pattern-1 rational";
    let s = SParams::new(
        half(),
        ratio(top.clone(), bottom.clone(), what)?,
        ratio(top, wide.clone(), what)?,
        ratio(bottom, wide, what)?,
    );
    FamilyPoint::new(FamilyKind::P1Rat, vec![q.clone()], s)
}

/// `d = 8mn(m − n)(m + n)`, the common numerator of the pattern-2 set in
/// `[1/2, d/b, d/a, d/c]` form.
pub fn pattern2_d(m: i64, n: i64) -> BigInt {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    BigInt::from(8) * &m * &n * (&m - &n) * (&m + &n)
}

fn check_pair(m: &Rational, n: &Rational) -> Result<()> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::DegenerateParameter("m and n must be nonzero".into()));
    }
    if m.abs() == n.abs() {
        return Err(Error::DegenerateParameter(format!("m = ±n ({m}, {n})")));
    }
    Ok(())
}

/// Pattern 2 over integers, the printed reciprocal form:
/// `[1/2, (−3m⁴+18n²m²−3n⁴)/D, (3m⁴+6nm³+6n³m−3n⁴)/D, (3m⁴−6nm³−6n³m−3n⁴)/D]`
/// with `D = 8nm³ − 8n³m`.
pub fn pattern2_int(m: i64, n: i64) -> Result<FamilyPoint> {
    let (mr, nr) = (int(m), int(n));
    check_pair(&mr, &nr)?;
    let (m2, n2) = (mr.square(), nr.square());
    let (m4, n4) = (m2.square(), n2.square());
    let nm3 = &nr * &mr * &m2;
    let n3m = &nr * &n2 * &mr;
    let d = int(8) * &nm3 - int(8) * &n3m;
    let what = "pattern-2";
    let s = SParams::new(
        half(),
        ratio(int(-3) * &m4 + int(18) * &n2 * &m2 - int(3) * &n4, d.clone(), what)?,
        ratio(int(3) * &m4 + int(6) * &nm3 + int(6) * &n3m - int(3) * &n4, d.clone(), what)?,
        ratio(int(3) * &m4 - int(6) * &nm3 - int(6) * &n3m - int(3) * &n4, d, what)?,
    );
    FamilyPoint::new(FamilyKind::P2Int, vec![mr, nr], s)
}

/// Pattern 2 over rationals:
/// `[1/2, (−3q⁴+18q²−3)/D, (3q⁴+6q³+6q−3)/D, (3q⁴−6q³−6q−3)/D]`, `D = 8q³ − 8q`.
pub fn pattern2_rat(q: &Rational) -> Result<FamilyPoint> {
    check_pair(q, &Rational::one())?;
    let q2 = q.square();
    let q3 = &q2 * q;
    let q4 = q2.square();
    let d = int(8) * &q3 - int(8) * q;
    let what = "pattern-2 rational";
    let s = SParams::new(
        half(),
        ratio(int(-3) * &q4 + int(18) * &q2 - int(3), d.clone(), what)?,
        ratio(int(3) * &q4 + int(6) * &q3 + int(6) * q - int(3), d.clone(), what)?,
        ratio(int(3) * &q4 - int(6) * &q3 - int(6) * q - int(3), d, what)?,
    );
    FamilyPoint::new(FamilyKind::P2Rat, vec![q.clone()], s)
}

/// General parameterization over integers, `s1 = r/s`:
///
/// ```text
/// s2 = ((r²−s²)m⁴ + (−6r²+6s²)n²m² + (r²−s²)n⁴) / (4srnm³ − 4srn³m)
/// s3 = ((−r²+s²)m⁴ + (−2r²+2s²)nm³ + (−2r²+2s²)n³m + (r²−s²)n⁴) / (4srnm³ − 4srn³m)
/// s4 = ((r²−s²)m⁴ + (−2r²+2s²)nm³ + (−2r²+2s²)n³m + (−r²+s²)n⁴) / (4srn³m − 4srnm³)
/// ```
pub fn general_int(r: i64, s: i64, m: i64, n: i64) -> Result<FamilyPoint> {
    if r == 0 || s == 0 {
        return Err(Error::DegenerateParameter("r and s must be nonzero".into()));
    }
    let (rr, sr, mr, nr) = (int(r), int(s), int(m), int(n));
    check_pair(&mr, &nr)?;
    let k = rr.square() - sr.square();
    let (m2, n2) = (mr.square(), nr.square());
    let (m4, n4) = (m2.square(), n2.square());
    let nm3 = &nr * &mr * &m2;
    let n3m = &nr * &n2 * &mr;
    let sr4 = int(4) * &sr * &rr;
    let d = &sr4 * &nm3 - &sr4 * &n3m;
    let what = "general";
    let two_k = &int(2) * &k;
    let s_vec = SParams::new(
        ratio(rr.clone(), sr.clone(), what)?,
        ratio(&k * &m4 - int(6) * &k * &n2 * &m2 + &k * &n4, d.clone(), what)?,
        ratio(-&k * &m4 - &two_k * &nm3 - &two_k * &n3m + &k * &n4, d.clone(), what)?,
        ratio(&k * &m4 - &two_k * &nm3 - &two_k * &n3m - &k * &n4, -d, what)?,
    );
    FamilyPoint::new(FamilyKind::GenInt, vec![rr, sr, mr, nr], s_vec)
}

fn check_general(s: &Rational, r: &Rational) -> Result<()> {
    if s.is_zero() {
        return Err(Error::DegenerateParameter("s must be nonzero".into()));
    }
    if r.is_zero() || r.abs().is_one() {
        return Err(Error::DegenerateParameter(format!("r must avoid 0 and ±1 (r = {r})")));
    }
    Ok(())
}

/// General parameterization over rationals, `s1 = s`:
///
/// ```text
/// s2 = ((s²−1)r⁴ + (−6s²+6)r² + (s²−1)) / (4sr³ − 4sr)
/// s3 = ((−s²+1)r⁴ + (−2s²+2)r³ + (−2s²+2)r + (s²−1)) / (4sr³ − 4sr)
/// s4 = ((s²−1)r⁴ + (−2s²+2)r³ + (−2s²+2)r + (−s²+1)) / (4sr − 4sr³)
/// ```
pub fn general_rat(s: &Rational, r: &Rational) -> Result<FamilyPoint> {
    check_general(s, r)?;
    let k = s.square() - int(1);
    let two_k = &int(2) * &k;
    let r2 = r.square();
    let r3 = &r2 * r;
    let r4 = r2.square();
    let four_s = int(4) * s;
    let d = &four_s * &r3 - &four_s * r;
    let what = "general rational";
    let s_vec = SParams::new(
        s.clone(),
        ratio(&k * &r4 - int(6) * &k * &r2 + &k, d.clone(), what)?,
        ratio(-&k * &r4 - &two_k * &r3 - &two_k * r + &k, d.clone(), what)?,
        ratio(&k * &r4 - &two_k * &r3 - &two_k * r - &k, -d, what)?,
    );
    FamilyPoint::new(FamilyKind::GenRat, vec![s.clone(), r.clone()], s_vec)
}

/// `T(s, r) = ((−s²+1)r² + (−s²+1)) / (sr² − s)`, equal to `s3 − s4` of
/// [`general_rat`].
pub fn t_general(s: &Rational, r: &Rational) -> Result<Rational> {
    check_general(s, r)?;
    let k = int(1) - s.square();
    let r2 = r.square();
    Ok((&k * &r2 + &k) / (s * &r2 - s))
}

/// `T(r, s, m, n) = ((−r²+s²)m² + (−r²+s²)n²) / (srm² − srn²)`, equal to
/// `s3 − s4` of [`general_int`].
pub fn t_general_int(r: i64, s: i64, m: i64, n: i64) -> Result<Rational> {
    if r == 0 || s == 0 {
        return Err(Error::DegenerateParameter("r and s must be nonzero".into()));
    }
    let (rr, sr, mr, nr) = (int(r), int(s), int(m), int(n));
    check_pair(&mr, &nr)?;
    let k = sr.square() - rr.square();
    let (m2, n2) = (mr.square(), nr.square());
    let sr_ = &sr * &rr;
    Ok((&k * &m2 + &k * &n2) / (&sr_ * &m2 - &sr_ * &n2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sspace::equivalent;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SParams {
        s.parse().unwrap()
    }

    #[test]
    fn sum_of_two_squares_examples() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(sum2squares_param(2, 1).unwrap(), (b(7), b(1), b(5)));
        assert_eq!(sum2squares_param(1, 1).unwrap(), (b(2), b(2), b(2)));
        assert_eq!(sum2squares_param(3, 2).unwrap(), (b(17), b(7), b(13)));
        assert!(sum2squares_param(0, 0).is_err());
    }

    #[test]
    fn four_sets_at_2_1() {
        let sets = pattern1_four_sets(2, 1).unwrap();
        let got: Vec<SParams> = sets.iter().map(|p| p.sparams.clone()).collect();
        assert_eq!(
            got,
            vec![
                sp("1/2,1/7,1/10,7/10"),
                sp("1/2,7,7/10,1/10"),
                sp("1/2,7,10,10/7"),
                sp("1/2,1/7,10/7,10"),
            ]
        );
        for a in &got {
            for b in &got {
                assert!(equivalent(a, b));
            }
        }
        assert_eq!(sets[0].family.tag(), "P1_SET1");
        assert_eq!(sets[0].params, ["2", "1", "7", "10", "1"].map(q).to_vec());
    }

    #[test]
    fn four_sets_match_abc_triples() {
        for (m, n) in [(2, 1), (3, 2), (5, 2), (7, 3), (4, -1)] {
            for p in pattern1_four_sets(m, n).unwrap() {
                let (a, b, c) = (&p.params[2], &p.params[3], &p.params[4]);
                let from_abc = SParams::new(half(), c / a, c / b, a / b);
                assert_eq!(p.sparams, from_abc, "{} at ({m},{n})", p.family);
            }
        }
    }

    #[test]
    fn four_sets_degenerate_pair() {
        assert!(matches!(
            pattern1_four_sets(1, 1),
            Err(Error::Degenerate { .. })
        ));
        assert!(pattern1_four_sets(0, 0).is_err());
    }

    #[test]
    fn four_sets_at_3_2() {
        let sets = pattern1_four_sets(3, 2).unwrap();
        assert_eq!(sets[0].sparams, sp("1/2,7/17,7/26,17/26"));
        assert!(sets[0].feasible());
        assert!(!pattern1_four_sets(2, 1).unwrap()[0].feasible());
    }

    #[test]
    fn pattern1_rat_examples() {
        assert_eq!(pattern1_rat(&q("2")).unwrap().sparams, sp("1/2,1/7,1/10,7/10"));
        assert_eq!(pattern1_rat(&q("3/2")).unwrap().sparams, sp("1/2,7/17,7/26,17/26"));
        match pattern1_rat(&q("1")) {
            Err(Error::Degenerate { sparams, .. }) => assert_eq!(sparams.s2(), &q("1")),
            other => panic!("expected degenerate flag, got {other:?}"),
        }
    }

    #[test]
    fn pattern1_int_matches_first_set() {
        for (m, n) in [(2, 1), (3, 2), (9, 4)] {
            assert_eq!(
                pattern1_int(m, n).unwrap().sparams,
                pattern1_four_sets(m, n).unwrap()[0].sparams
            );
        }
    }

    #[test]
    fn pattern2_examples() {
        assert_eq!(pattern2_rat(&q("1/3")).unwrap().sparams, sp("1/2,7/16,5/16,35/16"));
        assert!(equivalent(
            &pattern2_rat(&q("1/3")).unwrap().sparams,
            &sp("1/2,16/7,16/5,16/35")
        ));
        assert!(equivalent(
            &pattern2_rat(&q("1/5")).unwrap().sparams,
            &sp("1/2,80/119,80/91,80/221")
        ));
        assert!(pattern2_int(1, 1).is_err());
        assert!(pattern2_int(0, 3).is_err());
        assert!(pattern2_rat(&q("-1")).is_err());
        assert_eq!(
            pattern2_int(1, 3).unwrap().sparams,
            pattern2_rat(&q("1/3")).unwrap().sparams
        );
    }

    #[test]
    fn pattern2_d_values() {
        // the first TABLE1 fixture has d = 16 at q = 1/3, i.e. (m, n) = (3, 1): 8*3*1*2*4 = 192 = 12 * 16
        assert_eq!(pattern2_d(3, 1), BigInt::from(192));
        assert_eq!(pattern2_d(2, 1), BigInt::from(48));
    }

    #[test]
    fn general_examples() {
        assert_eq!(
            general_rat(&q("1/2"), &q("1/3")).unwrap().sparams,
            sp("1/2,7/16,5/16,35/16")
        );
        assert!(general_rat(&q("1/2"), &q("1")).is_err());
        assert!(general_rat(&q("0"), &q("1/3")).is_err());
        let p = general_int(1, 2, 2, 1).unwrap();
        assert_eq!(p.sparams.s1(), &q("1/2"));
        assert_eq!(p.sparams, general_rat(&q("1/2"), &q("2")).unwrap().sparams);
        assert!(general_int(1, 2, 3, 3).is_err());
        assert!(matches!(general_int(2, 2, 3, 1), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn general_specializes_to_pattern2() {
        for r in ["1/3", "1/5", "2/7", "3/11", "5/13", "7/2", "-4/9"] {
            let r = q(r);
            assert_eq!(
                general_rat(&half(), &r).unwrap().sparams,
                pattern2_rat(&r).unwrap().sparams
            );
        }
    }

    #[test]
    fn t_general_examples() {
        assert_eq!(t_general(&q("1/2"), &q("1/3")).unwrap(), q("-15/8"));
        assert!(t_general(&q("1"), &q("1/3")).unwrap().is_zero());
        assert_eq!(t_general(&q("1/2"), &q("3")).unwrap(), q("15/8"));
        assert!(t_general(&q("1/2"), &q("-1")).is_err());
    }

    #[test]
    fn t_general_int_matches_closeness() {
        for (r, s, m, n) in [(1, 2, 3, 1), (2, 5, 3, 7), (3, 8, 1, 4)] {
            let p = general_int(r, s, m, n).unwrap();
            assert_eq!(t_general_int(r, s, m, n).unwrap(), p.sparams.closeness());
        }
    }

    #[test]
    fn family_point_json_line() {
        let p = pattern2_rat(&q("1/3")).unwrap();
        let line = serde_json::to_string(&p).unwrap();
        assert_eq!(
            line,
            r#"{"family":"P2_RAT","params":["1/3"],"s":["1/2","7/16","5/16","35/16"],"canonical":["7/16","1/2","5/16","16/35"],"feasible":true}"#
        );
    }
}
