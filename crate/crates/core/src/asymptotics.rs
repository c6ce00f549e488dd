//! Sequences of solutions whose closeness `s3 − s4` tends to zero, so the
//! reconstructed piped tends towards a cuboid.

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::families::{FamilyKind, FamilyPoint};
use crate::sspace::SParams;

fn int(v: i64) -> Rational {
    Rational::integer(v)
}

fn require_at_least_two(name: &str, v: i64) -> Result<()> {
    if v < 2 {
        return Err(Error::DegenerateParameter(format!("{name} = {v}, need {name} >= 2")));
    }
    Ok(())
}

/// `[(n−1)/n, (4n⁴−8n³+4n−1)/D, (4n⁴−12n³+12n²−6n+1)/D, D/(4n⁴−4n³+2n−1)]`
/// with `D = 4n⁴−8n³+4n²`.
pub fn obtuse(n: i64) -> Result<FamilyPoint> {
    require_at_least_two("n", n)?;
    let nr = int(n);
    let n2 = nr.square();
    let n3 = &n2 * &nr;
    let n4 = n2.square();
    let d = int(4) * &n4 - int(8) * &n3 + int(4) * &n2;
    let s = SParams::new(
        (&nr - int(1)) / &nr,
        (int(4) * &n4 - int(8) * &n3 + int(4) * &nr - int(1)) / &d,
        (int(4) * &n4 - int(12) * &n3 + int(12) * &n2 - int(6) * &nr + int(1)) / &d,
        &d / (int(4) * &n4 - int(4) * &n3 + int(2) * &nr - int(1)),
    );
    FamilyPoint::new(FamilyKind::Obtuse, vec![nr], s)
}

/// `−(2n−1)⁴ / (4(n−1)²n²(2n²−1)(2n²−2n+1))`
pub fn obtuse_t(n: i64) -> Result<Rational> {
    require_at_least_two("n", n)?;
    let nr = int(n);
    let n2 = nr.square();
    let num = -(int(2) * &nr - int(1)).pow(4);
    let den = int(4)
        * (&nr - int(1)).square()
        * &n2
        * (int(2) * &n2 - int(1))
        * (int(2) * &n2 - int(2) * &nr + int(1));
    Ok(num / den)
}

/// `4d / ((d−1)(d+1))`, the prefactor of `n(n+1)(n+2)` in the acute sequence
/// with `s1 = 1/d`.
pub fn acute_coefficient(d: i64) -> Result<Rational> {
    require_at_least_two("d", d)?;
    let dr = int(d);
    Ok(int(4) * &dr / ((&dr - int(1)) * (&dr + int(1))))
}

/// `[1/d, K/((n²−2)(n²+4n+2)), K/((n²−2)(n²+2n+2)), K/((n²+2n+2)(n²+4n+2))]`
/// with `K = 4dn(n+1)(n+2)/((d−1)(d+1))`.
pub fn acute(d: i64, n: i64) -> Result<FamilyPoint> {
    require_at_least_two("n", n)?;
    let coef = acute_coefficient(d)?;
    let nr = int(n);
    let n2 = nr.square();
    let k = coef * &nr * (&nr + int(1)) * (&nr + int(2));
    let minus_two = &n2 - int(2);
    let narrow = &n2 + int(2) * &nr + int(2);
    let wide = &n2 + int(4) * &nr + int(2);
    let s = SParams::new(
        int(1) / int(d),
        &k / (&minus_two * &wide),
        &k / (&minus_two * &narrow),
        &k / (&narrow * &wide),
    );
    FamilyPoint::new(FamilyKind::Acute, vec![int(d), nr], s)
}

/// `16dn(n+1)²(n+2) / ((d−1)(d+1)(n²−2)(n²+2n+2)(n²+4n+2))`
pub fn acute_t(d: i64, n: i64) -> Result<Rational> {
    require_at_least_two("n", n)?;
    let coef = acute_coefficient(d)?;
    let nr = int(n);
    let n2 = nr.square();
    let num = int(4) * coef * &nr * (&nr + int(1)).square() * (&nr + int(2));
    let den = (&n2 - int(2))
        * (&n2 + int(2) * &nr + int(2))
        * (&n2 + int(4) * &nr + int(2));
    Ok(num / den)
}
