//! The coefficient field K = Q(x) of rational functions.
//!
//! Invariants: gcd(num, den) = 1 and den is monic, so equality of values is
//! plain structural equality of the representation.

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::upoly::UPoly;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    /// Builds `num/den` in reduced form.  Panics if `den` is zero.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: UPoly::zero(),
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.try_exact_div(&g).unwrap();
        let mut den = den.try_exact_div(&g).unwrap();
        let lc = den.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UPoly::one())
    }

    pub fn from_poly(num: UPoly) -> Self {
        RatFunc {
            num,
            den: UPoly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(crate::rat::rat_int(n))
    }

    /// The variable x.
    pub fn x() -> Self {
        Self::from_poly(UPoly::x())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == UPoly::one() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value as a rational number, when constant in x.
    pub fn constant_value(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// d/dx by the quotient rule.
    pub fn derive(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den)
    }

    /// n-th derivative.
    pub fn derive_n(&self, n: usize) -> Self {
        let mut acc = self.clone();
        for _ in 0..n {
            acc = acc.derive();
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Self {
        // Reduced form is closed under powers, so no re-reduction is needed.
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &RatFunc::new(rhs.den.clone(), rhs.num.clone()))
    }

    /// Evaluates at a rational point; reports poles.
    pub fn evaluate_at(&self, at: &Rat) -> Result<Rat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole { at: at.clone() });
        }
        Ok(self.num.eval(at) / d)
    }

    /// Substitutes a polynomial for x.  Exact: the denominator cannot vanish
    /// identically because it is nonzero and the substitution is a ring map
    /// into Q(x) when `inner` is nonconstant, and into Q otherwise (where a
    /// vanishing denominator is a pole, reported as an error).
    pub fn compose_poly(&self, inner: &UPoly) -> Result<Self> {
        let den = self.den.compose(inner);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.num.compose(inner), den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            // The denominator is monic, so a constant denominator is 1.
            return f.write_str(&self.num.to_string());
        }
        let paren = |p: &UPoly| {
            let s = p.to_string();
            if p.term_count() > 1 || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", paren(&self.num), paren(&self.den))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        // Cross-reduce through the denominator gcd to keep intermediates small.
        let g = self.den.gcd(&rhs.den);
        let da = self.den.try_exact_div(&g).unwrap();
        let db = rhs.den.try_exact_div(&g).unwrap();
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        let den = &(&self.den * &db);
        RatFunc::new(num, den.clone())
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel before multiplying.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.try_exact_div(&g1).unwrap();
        let d2 = rhs.den.try_exact_div(&g1).unwrap();
        let n2 = rhs.num.try_exact_div(&g2).unwrap();
        let d1 = self.den.try_exact_div(&g2).unwrap();
        RatFunc::new(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}
