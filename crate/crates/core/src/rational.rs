//! Exact rational scalars and small vector helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Formats as `"p/q"`, always including the denominator.
pub fn to_pq(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_pq(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(c: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| c * x).collect()
}

/// Positive rescaling of a nonzero vector to integer entries with content 1.
///
/// Returns the primitive vector and the factor `c > 0` with `primitive = c * v`.
pub fn primitive(v: &[Rational]) -> (Vec<Rational>, Rational) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    assert!(!gcd.is_zero(), "primitive() of a zero vector");
    let gcd = gcd.abs();
    let factor = Rational::new(lcm, gcd.clone());
    let out = ints
        .into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect();
    (out, factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_round_trip() {
        for s in ["3/4", "-1/2", "0/1", "7/1"] {
            assert_eq!(to_pq(&parse_pq(s).unwrap()), s);
        }
        assert_eq!(parse_pq("5").unwrap(), int(5));
        assert!(parse_pq("1/0").is_err());
        assert!(parse_pq("x").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let (p, c) = primitive(&[frac(1, 2), frac(-3, 4)]);
        assert_eq!(p, vec![int(2), int(-3)]);
        assert_eq!(c, int(4));
        let (p, c) = primitive(&[int(4), int(0), int(-6)]);
        assert_eq!(p, vec![int(2), int(0), int(-3)]);
        assert_eq!(c, frac(1, 2));
    }
}
