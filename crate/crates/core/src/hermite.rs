//! Squarefree decomposition and exact rational antiderivatives.
//!
//! `rational_antiderivative` returns the antiderivative of a rational
//! function when one exists inside Q(x), normalized to have zero constant
//! term in its partial-fraction form, and reports a `LogarithmicPart` error
//! otherwise.  The reduction keeps every step exact: no residues or root
//! finding are ever needed.

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::upoly::UPoly;
use num_traits::Zero;

/// One factor of a squarefree decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeFactor {
    /// Monic squarefree factor.
    pub factor: UPoly,
    /// Multiplicity in the input, at least 1.
    pub multiplicity: usize,
}

/// Yun's algorithm.  Returns the content `c` and pairwise-coprime monic
/// squarefree factors with multiplicities so that the input equals
/// `c * prod(factor_i ^ multiplicity_i)`.  Factors equal to 1 are omitted.
pub fn squarefree_decomposition(p: &UPoly) -> Result<(Rat, Vec<SquarefreeFactor>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lc = p.leading_coeff().unwrap().clone();
    let p = p.monic();
    let mut factors = Vec::new();
    if p.is_constant() {
        return Ok((lc, factors));
    }
    let dp = p.derivative();
    let a = p.gcd(&dp);
    let mut b = p.try_exact_div(&a).unwrap();
    let mut d = &dp.try_exact_div(&a).unwrap() - &b.derivative();
    let mut multiplicity = 1usize;
    while !b.is_constant() {
        let f = b.gcd(&d);
        if !f.is_constant() {
            factors.push(SquarefreeFactor {
                factor: f.clone(),
                multiplicity,
            });
        }
        b = b.try_exact_div(&f).unwrap();
        d = &d.try_exact_div(&f).unwrap() - &b.derivative();
        multiplicity += 1;
    }
    Ok((lc, factors))
}

/// Solves `s*a + t*b = c` with `deg s < deg b - deg gcd(a,b)` when solvable.
fn diophantine(a: &UPoly, b: &UPoly, c: &UPoly) -> Option<(UPoly, UPoly)> {
    let (g, s, _) = a.xgcd(b);
    let q = c.try_exact_div(&g)?;
    let b_red = b.try_exact_div(&g).unwrap();
    let (_, s_small) = (&s * &q).divrem(&b_red);
    let rest = c - &(&s_small * a);
    let t = rest.try_exact_div(b).expect("diophantine: inexact cofactor");
    Some((s_small, t))
}

/// Hermite reduction of a proper fraction `a/d` (gcd(a,d)=1, d monic):
/// returns `(g, a_star, d_star)` with `a/d = g' + a_star/d_star` and
/// `d_star` squarefree.
fn hermite_reduce(a: &UPoly, d: &UPoly) -> (RatFunc, UPoly, UPoly) {
    let mut g = RatFunc::zero();
    let mut a = a.clone();
    let mut d_minus = d.gcd(&d.derivative());
    let d_star = d.try_exact_div(&d_minus).unwrap();
    while d_minus
        .degree()
        .map(|deg| deg > 0)
        .unwrap_or(false)
    {
        let d_minus2 = d_minus.gcd(&d_minus.derivative());
        let d_minus_star = d_minus.try_exact_div(&d_minus2).unwrap();
        // -d_star * d_minus' / d_minus is a polynomial.
        let lhs = -&(&d_star * &d_minus.derivative())
            .try_exact_div(&d_minus)
            .unwrap();
        let (b, c) =
            diophantine(&lhs, &d_minus_star, &a).expect("hermite: unsolvable diophantine step");
        a = &c - &(&b.derivative() * &d_star)
            .try_exact_div(&d_minus_star)
            .unwrap();
        g = &g + &RatFunc::new(b, d_minus.clone());
        d_minus = d_minus2;
    }
    (g, a, d_star)
}

/// Exact antiderivative in Q(x).
///
/// The result `g` satisfies `g' = f` and has zero constant term: its
/// polynomial part has no degree-0 coefficient and its fractional part is
/// proper.  Errors with `LogarithmicPart` when no rational antiderivative
/// exists (for example for `1/x`).
pub fn rational_antiderivative(f: &RatFunc) -> Result<RatFunc> {
    if f.is_zero() {
        return Ok(RatFunc::zero());
    }
    // Split into polynomial and proper part.
    let (poly_part, rem) = f.num().divrem(f.den());
    let mut result = integrate_poly(&poly_part);
    if rem.is_zero() {
        return Ok(result);
    }
    let (g, a_star, d_star) = hermite_reduce(&rem, f.den());
    result = &result + &g;
    if a_star.is_zero() {
        return Ok(result);
    }
    // Any leftover with a squarefree denominator integrates to logarithms
    // unless it is actually a polynomial after reduction.
    let leftover = RatFunc::new(a_star, d_star);
    if leftover.is_polynomial() {
        return Ok(&result + &integrate_poly(leftover.num()));
    }
    Err(Error::LogarithmicPart { level: None })
}

fn integrate_poly(p: &UPoly) -> RatFunc {
    let mut coeffs = vec![Rat::zero(); p.coeffs().len() + 1];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs[k + 1] = c / Rat::from_integer((k as i64 + 1).into());
    }
    RatFunc::from_poly(UPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn poly(coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn over_x(c: i64, k: usize) -> RatFunc {
        RatFunc::new(poly(&[c]), UPoly::monomial(k, rat_int(1)))
    }

    #[test]
    fn squarefree_smoke() {
        // x^2-1 is already squarefree.
        let (c, f) = squarefree_decomposition(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(c, rat_int(1));
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].factor, poly(&[-1, 0, 1]));
        assert_eq!(f[0].multiplicity, 1);
    }

    #[test]
    fn squarefree_detects_powers() {
        // (x-1)^2
        let (_, f) = squarefree_decomposition(&poly(&[1, -2, 1])).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].factor, poly(&[-1, 1]));
        assert_eq!(f[0].multiplicity, 2);
        // x^3 + x^2 = x^2 (x+1)
        let (_, f) = squarefree_decomposition(&poly(&[0, 0, 1, 1])).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].factor, poly(&[1, 1]));
        assert_eq!(f[0].multiplicity, 1);
        assert_eq!(f[1].factor, poly(&[0, 1]));
        assert_eq!(f[1].multiplicity, 2);
    }

    #[test]
    fn squarefree_reassembles() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let mut p = UPoly::constant(rat_int(rng.gen_range(1..5)));
            for _ in 0..rng.gen_range(1..4) {
                let lin = poly(&[rng.gen_range(-3..4), 1]);
                let e = rng.gen_range(1..4);
                p = &p * &lin.pow(e);
            }
            let (c, factors) = squarefree_decomposition(&p).unwrap();
            let mut re = UPoly::constant(c);
            for sf in &factors {
                re = &re * &sf.factor.pow(sf.multiplicity);
                // Factors are squarefree.
                assert!(sf.factor.gcd(&sf.factor.derivative()).is_constant());
            }
            assert_eq!(re, p);
            // Pairwise coprime.
            for i in 0..factors.len() {
                for j in 0..i {
                    assert!(factors[i].factor.gcd(&factors[j].factor).is_constant());
                }
            }
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            squarefree_decomposition(&UPoly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn antiderivative_examples() {
        assert!(rational_antiderivative(&RatFunc::zero()).unwrap().is_zero());
        // 12/x^3 -> -6/x^2
        assert_eq!(rational_antiderivative(&over_x(12, 3)).unwrap(), over_x(-6, 2));
        // 1/x has only a logarithmic antiderivative.
        assert_eq!(
            rational_antiderivative(&over_x(1, 1)),
            Err(Error::LogarithmicPart { level: None })
        );
        // Polynomial part: x^2 -> x^3/3, no constant term.
        let f = RatFunc::from_poly(poly(&[0, 0, 1]));
        let g = rational_antiderivative(&f).unwrap();
        assert_eq!(g, RatFunc::from_poly(UPoly::monomial(3, rat(1, 3))));
        assert!(g.num().coeff(0).is_zero());
    }

    #[test]
    fn antiderivative_higher_multiplicity() {
        // 1/(x-1)^3 -> -1/(2 (x-1)^2)
        let d = poly(&[-1, 1]).pow(3);
        let f = RatFunc::new(UPoly::one(), d);
        let g = rational_antiderivative(&f).unwrap();
        assert_eq!(g.derive(), f);
        // Mixed denominator with a log part: (3x+2)/(x^2 (x+1)) splits with
        // nonzero residues.
        let f = RatFunc::new(poly(&[2, 3]), &poly(&[0, 0, 1]) * &poly(&[1, 1]));
        assert_eq!(
            rational_antiderivative(&f),
            Err(Error::LogarithmicPart { level: None })
        );
    }

    #[test]
    fn antiderivative_inverts_derivative() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..200 {
            // Build g with proper fraction part and no constant term, then
            // check that integrate(g') recovers exactly g.
            let mut g = RatFunc::from_poly(UPoly::from_coeffs(vec![
                rat_int(0),
                rat_int(rng.gen_range(-4..5)),
                rat_int(rng.gen_range(-4..5)),
            ]));
            for _ in 0..rng.gen_range(0..3) {
                let root = rng.gen_range(-2..3);
                let e = rng.gen_range(1..4);
                let num = poly(&[rng.gen_range(-5..6)]);
                let den = poly(&[-root, 1]).pow(e);
                g = &g + &RatFunc::new(num, den);
            }
            let back = rational_antiderivative(&g.derive()).unwrap();
            assert_eq!(back, g);
        }
    }
}
