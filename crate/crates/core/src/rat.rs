//! Arbitrary-precision rational scalars.
//!
//! `Rat` is the coefficient field Q used everywhere in the crate.  It is
//! backed by `num_rational::BigRational`, which already maintains the
//! invariants we need: fully reduced and with a positive denominator.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational.  Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rational with zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p", "-p", or "p/q" with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

/// `r^e` for a signed exponent.  Panics on `0^e` with `e < 0`.
pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow::pow(r.clone(), e as usize)
    } else {
        assert!(!r.is_zero(), "negative power of zero");
        num_traits::pow::pow(r.recip(), (-e) as usize)
    }
}

/// gcd of two rationals: gcd of numerators over lcm of denominators.
/// Used to pull a common content out of polynomial coefficients.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = num_integer::gcd(a.numer().clone(), b.numer().clone());
    let den = num_integer::lcm(a.denom().clone(), b.denom().clone());
    Rat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn constructors_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert_eq!(rat(-3, -6), rat(1, 2));
        assert_eq!(rat_int(7), rat(7, 1));
    }

    #[test]
    fn denominators_stay_positive() {
        let r = rat(5, -15);
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(r, rat(-1, 3));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3", "-3", "1/2", "-22/7", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&r.to_string()).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(rat(1, 2).to_string(), "1/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(Rat::zero().to_string(), "0");
        assert!(Rat::one().is_one());
    }

    #[test]
    fn pow_signed() {
        assert_eq!(rat_pow(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(rat_pow(&rat(2, 3), -1), rat(3, 2));
        assert_eq!(rat_pow(&rat(5, 1), 0), rat_int(1));
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rat_gcd(&rat(4, 3), &rat(2, 9)), rat(2, 9));
        assert_eq!(rat_gcd(&rat(0, 1), &rat(-5, 2)), rat(5, 2));
    }
}
