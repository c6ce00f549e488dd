//! From s-parameters to pipeds.
//!
//! Lengths are normalized by the edge `x = 1`: `y = |u1|`, `z = |u2|`,
//! `a = v1`, `b = v2`, `c1 = |u3|`, `c2 = |u4|`, `d1 = v3`, `d2 = v4`, where
//! `(u_k, v_k)` is the rational Pythagorean pair generated by `s_k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_sqrt, Rational};
use crate::sspace::{is_solution, SParams};

/// Leg `u` and hypotenuse `v` of `1 + u^2 = v^2`, with `s = v - u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTriple {
    pub u: Rational,
    pub v: Rational,
    pub s: Rational,
}

/// `u = (1 - s^2) / 2s`, `v = (1 + s^2) / 2s`.
pub fn s_to_triple(s: &Rational) -> Result<RationalTriple> {
    if s.is_zero() {
        return Err(Error::UndefinedParameter("s"));
    }
    let two_s = s * &Rational::integer(2);
    let sq = s.square();
    Ok(RationalTriple {
        u: (Rational::one() - &sq) / &two_s,
        v: (Rational::one() + sq) / two_s,
        s: s.clone(),
    })
}

/// Inverse of [`s_to_triple`]: `s = v - u`.
pub fn recover_s(u: &Rational, v: &Rational) -> Result<Rational> {
    if Rational::one() + u.square() != v.square() {
        return Err(Error::NotPythagorean {
            u: u.clone(),
            v: v.clone(),
        });
    }
    Ok(v - u)
}

/// The nine lengths `x, y, z, a, b, c1, c2, d1, d2` of a piped.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPiped {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub d1: Rational,
    pub d2: Rational,
}

impl RationalPiped {
    pub fn from_lengths(l: [Rational; 9]) -> Self {
        let [x, y, z, a, b, c1, c2, d1, d2] = l;
        RationalPiped {
            x,
            y,
            z,
            a,
            b,
            c1,
            c2,
            d1,
            d2,
        }
    }

    pub fn lengths(&self) -> [&Rational; 9] {
        [
            &self.x, &self.y, &self.z, &self.a, &self.b, &self.c1, &self.c2, &self.d1, &self.d2,
        ]
    }

    /// The seven edge/diagonal relations:
    ///
    /// ```text
    /// x² + y² = a²        x² + z² = b²
    /// x² + c1² = d1²      x² + c2² = d2²
    /// 2y² + 2z² = c1² + c2²
    /// 2y² + 2b² = d1² + d2²      2a² + 2z² = d1² + d2²
    /// ```
    pub fn validate_algebraic(&self) -> bool {
        let [x, y, z, a, b, c1, c2, d1, d2] = self.lengths().map(Rational::square);
        let two = Rational::integer(2);
        let diag = &d1 + &d2;
        &x + &y == a
            && &x + &z == b
            && &x + &c1 == d1
            && &x + &c2 == d2
            && &two * &(&y + &z) == &c1 + &c2
            && &two * &(&y + &b) == diag
            && &two * &(&a + &z) == diag
    }

    /// Cosine of the monoclinic angle of the `(y, z)` face, `(c2² − c1²) / 4yz`.
    /// `c1` subtends the angle.
    pub fn cos_angle(&self) -> Result<Rational> {
        let yz = &self.y * &self.z;
        if yz.is_zero() {
            return Err(Error::GeometricallyInvalid("y * z = 0".into()));
        }
        Ok((self.c2.square() - self.c1.square()) / (Rational::integer(4) * yz))
    }

    /// All lengths positive and `|cos θ| < 1`, i.e. the face triangles
    /// `(y, z, c1)` and `(y, z, c2)` are strict.
    pub fn validate_geometric(&self) -> bool {
        if !self.lengths().iter().all(|l| l.is_positive()) {
            return false;
        }
        match self.cos_angle() {
            Ok(c) => c.abs() < Rational::one(),
            Err(_) => false,
        }
    }

    /// Whether the face area, the volume, and a rational-lattice embedding are
    /// rational. With `cos θ` rational all three reduce to `sin θ ∈ ℚ`.
    pub fn rational_area_volume_lattice(&self) -> Result<AreaVolumeLattice> {
        if !self.validate_geometric() {
            return Err(Error::GeometricallyInvalid(self.to_string()));
        }
        let cos = self.cos_angle()?;
        let sin_sq = Rational::one() - cos.square();
        let rational = rat_sqrt(&sin_sq).is_some();
        Ok(AreaVolumeLattice {
            area_rational: rational,
            volume_rational: rational,
            lattice_embeddable: rational,
        })
    }
}

impl fmt::Display for RationalPiped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths().iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for RationalPiped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPiped({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AreaVolumeLattice {
    pub area_rational: bool,
    pub volume_rational: bool,
    pub lattice_embeddable: bool,
}

/// Piped with integer lengths, serialized as `"x y z a b c1 c2 d1 d2"`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerPiped {
    pub lengths: [BigInt; 9],
    pub primitive: bool,
}

impl IntegerPiped {
    pub fn new(lengths: [BigInt; 9]) -> Self {
        let g = lengths.iter().fold(BigInt::zero(), |g, l| g.gcd(l));
        IntegerPiped {
            primitive: g.is_one(),
            lengths,
        }
    }

    pub fn to_rational(&self) -> RationalPiped {
        RationalPiped::from_lengths(self.lengths.clone().map(Rational::integer))
    }
}

impl fmt::Display for IntegerPiped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for IntegerPiped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPiped({self})")
    }
}

/// The piped of a solution, lengths normalized by `x = 1`.
pub fn reconstruct(s: &SParams) -> Result<RationalPiped> {
    if !is_solution(s) {
        return Err(Error::GoverningViolated(s.clone()));
    }
    let [t1, t2, t3, t4] = s.as_array().clone().map(|v| s_to_triple(&v).expect("nonzero"));
    Ok(RationalPiped {
        x: Rational::one(),
        y: t1.u.abs(),
        z: t2.u.abs(),
        a: t1.v,
        b: t2.v,
        c1: t3.u.abs(),
        c2: t4.u.abs(),
        d1: t3.v,
        d2: t4.v,
    })
}

/// Scales by the lcm of the denominators and divides out the gcd.
pub fn integerize(p: &RationalPiped) -> IntegerPiped {
    let lengths = p.lengths();
    let lcm = lengths.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let scaled: Vec<BigInt> = lengths
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let out: [BigInt; 9] = std::array::from_fn(|i| &scaled[i] / &g);
    IntegerPiped::new(out)
}

/// Face/body relations in leg form for a solution:
/// `2u1² + 2u2² = u3² + u4²`, `2u1² + 2v2² = v3² + v4²`, `2v1² + 2u2² = v3² + v4²`.
pub fn leg_identities_hold(s: &SParams) -> Result<bool> {
    let t: Vec<RationalTriple> = s.iter().map(s_to_triple).collect::<Result<_>>()?;
    let two = Rational::integer(2);
    let (u, v): (Vec<Rational>, Vec<Rational>) =
        t.into_iter().map(|t| (t.u.square(), t.v.square())).unzip();
    Ok(&two * &(&u[0] + &u[1]) == &u[2] + &u[3]
        && &two * &(&u[0] + &v[1]) == &v[2] + &v[3]
        && &two * &(&v[0] + &u[1]) == &v[2] + &v[3])
}

/// Reconstructs `s` and reports whether the resulting piped is geometrically valid.
pub fn is_geometric(s: &SParams) -> bool {
    reconstruct(s).map(|p| p.validate_geometric()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SParams {
        s.parse().unwrap()
    }

    fn ints(v: [i64; 9]) -> [BigInt; 9] {
        v.map(BigInt::from)
    }

    #[test]
    fn triple_examples() {
        let t = s_to_triple(&q("1/2")).unwrap();
        assert_eq!((t.u, t.v), (q("3/4"), q("5/4")));
        let t = s_to_triple(&q("1")).unwrap();
        assert_eq!((t.u, t.v), (q("0"), q("1")));
        let t = s_to_triple(&q("1/7")).unwrap();
        assert_eq!((t.u.clone(), t.v.clone()), (q("24/7"), q("25/7")));
        assert_eq!(recover_s(&t.u, &t.v).unwrap(), q("1/7"));
        assert!(s_to_triple(&q("0")).is_err());
    }

    #[test]
    fn recover_examples() {
        assert_eq!(recover_s(&q("3/4"), &q("5/4")).unwrap(), q("1/2"));
        assert_eq!(recover_s(&q("0"), &q("1")).unwrap(), q("1"));
        assert!(matches!(
            recover_s(&q("1"), &q("1")),
            Err(Error::NotPythagorean { .. })
        ));
    }

    #[test]
    fn reconstruct_table1_row1() {
        let p = reconstruct(&sp("1/2,7/16,5/16,16/35")).unwrap();
        assert_eq!(
            p.to_string(),
            "1 3/4 207/224 5/4 305/224 231/160 969/1120 281/160 1481/1120"
        );
        assert!(p.validate_algebraic());
        assert!(p.validate_geometric());
        assert_eq!(p.cos_angle().unwrap(), q("-3879/8050"));
    }

    #[test]
    fn reconstruct_invalid_geometry() {
        let p = reconstruct(&sp("1/2,1/7,1/10,7/10")).unwrap();
        assert_eq!(
            p.to_string(),
            "1 3/4 24/7 5/4 25/7 99/20 51/140 101/20 149/140"
        );
        assert!(p.validate_algebraic());
        assert!(!p.validate_geometric());
        assert!(p.cos_angle().unwrap().abs() > Rational::one());
        assert!(p.rational_area_volume_lattice().is_err());
    }

    #[test]
    fn reconstruct_rejects_degenerate() {
        assert!(matches!(
            reconstruct(&sp("1,1,1,1")),
            Err(Error::GoverningViolated(_))
        ));
    }

    #[test]
    fn integerize_examples() {
        let p = reconstruct(&sp("1/2,7/16,5/16,16/35")).unwrap();
        let ip = integerize(&p);
        assert_eq!(ip.to_string(), "1120 840 1035 1400 1525 1617 969 1967 1481");
        assert!(ip.primitive);
        assert!(ip.to_rational().validate_algebraic());

        let twelfths = RationalPiped::from_lengths(
            ["1", "3/4", "4/3", "5/4", "5/3", "1/12", "5/12", "7/12", "11/12"].map(q),
        );
        let ip = integerize(&twelfths);
        assert_eq!(ip.lengths, ints([12, 9, 16, 15, 20, 1, 5, 7, 11]));

        let already = IntegerPiped::new(ints([2240, 1680, 2070, 2800, 3050, 3234, 1938, 3934, 2962]));
        assert!(!already.primitive);
        assert_eq!(
            integerize(&already.to_rational()).to_string(),
            "1120 840 1035 1400 1525 1617 969 1967 1481"
        );
    }

    #[test]
    fn algebraic_examples() {
        let good = IntegerPiped::new(ints([1120, 840, 1035, 1400, 1525, 1617, 969, 1967, 1481]));
        assert!(good.to_rational().validate_algebraic());
        let ones = IntegerPiped::new(ints([1; 9]));
        assert!(!ones.to_rational().validate_algebraic());
    }

    #[test]
    fn cos_angle_examples() {
        let p = IntegerPiped::new(ints([1120, 840, 1035, 1400, 1525, 1617, 969, 1967, 1481]));
        assert_eq!(p.to_rational().cos_angle().unwrap(), q("-3879/8050"));

        let mut rect = p.to_rational();
        rect.c2 = rect.c1.clone();
        assert!(rect.cos_angle().unwrap().is_zero());

        let mut flat = p.to_rational();
        flat.y = q("0");
        assert!(flat.cos_angle().is_err());
    }

    #[test]
    fn cos_sign_flips_on_diagonal_exchange() {
        let mut p = reconstruct(&sp("1/2,7/16,5/16,16/35")).unwrap();
        let c = p.cos_angle().unwrap();
        std::mem::swap(&mut p.c1, &mut p.c2);
        assert_eq!(p.cos_angle().unwrap(), -c);
    }

    #[test]
    fn geometric_boundary() {
        // c1 = y + z: degenerate triangle, |cos| = 1
        let p = RationalPiped::from_lengths(["1", "3", "4", "1", "1", "7", "1", "1", "1"].map(q));
        assert!(p.cos_angle().unwrap().abs().is_one());
        assert!(!p.validate_geometric());
    }

    #[test]
    fn area_volume_lattice() {
        let p = reconstruct(&sp("1/2,7/16,5/16,16/35")).unwrap();
        let cos = p.cos_angle().unwrap();
        assert_eq!(Rational::one() - cos.square(), q("49755859/64802500"));
        let flags = p.rational_area_volume_lattice().unwrap();
        assert_eq!(
            flags,
            AreaVolumeLattice {
                area_rational: false,
                volume_rational: false,
                lattice_embeddable: false
            }
        );

        // cuboid face: c1 = c2, cos = 0, sin = 1
        let mut cuboid = p.clone();
        cuboid.c2 = cuboid.c1.clone();
        let flags = cuboid.rational_area_volume_lattice().unwrap();
        assert!(flags.area_rational && flags.volume_rational && flags.lattice_embeddable);
    }

    #[test]
    fn leg_identities_on_solution() {
        assert!(leg_identities_hold(&sp("1/2,16/7,16/5,16/35")).unwrap());
        assert!(!leg_identities_hold(&sp("1/2,1/2,1/2,1/2")).unwrap());
    }
}
