//! Dense univariate polynomials over Q.
//!
//! Invariant: the coefficient vector carries no trailing zeros, so the zero
//! polynomial is the empty vector and `degree()` is `None` exactly for zero.

use crate::rat::{rat_gcd, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly {
    /// `coeffs[k]` is the coefficient of x^k.
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::monomial(1, Rat::one())
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UPoly { coeffs }
    }

    /// Coefficients in ascending degree order; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * Rat::from_integer(k.into()))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * at + a;
        }
        acc
    }

    /// Substitutes another polynomial for x.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UPoly::constant(a.clone());
        }
        acc
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    /// Panics if `rhs` is zero.
    pub fn divrem(&self, rhs: &UPoly) -> (UPoly, UPoly) {
        let d = rhs.degree().expect("division by the zero polynomial");
        let lc = rhs.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &lc;
            let k = rd - d;
            let mut coeffs = rem.coeffs;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &c * b;
                coeffs[k + j] -= t;
            }
            rem = UPoly::from_coeffs(coeffs);
            quot[k] = c;
        }
        (UPoly::from_coeffs(quot), rem)
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn try_exact_div(&self, rhs: &UPoly) -> Option<UPoly> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.divrem(rhs);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        match self.leading_coeff() {
            None => UPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `g` monic and
    /// `s*self + t*rhs = g`.
    pub fn xgcd(&self, rhs: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading_coeff() {
            None => (UPoly::zero(), UPoly::zero(), UPoly::zero()),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn lcm(&self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let g = self.gcd(rhs);
        (self * &rhs.try_exact_div(&g).unwrap()).monic()
    }

    /// gcd of the coefficients (positive; zero only for the zero polynomial).
    pub fn content(&self) -> Rat {
        self.coeffs
            .iter()
            .fold(Rat::zero(), |acc, c| rat_gcd(&acc, c))
    }

    /// Renders with an arbitrary variable name, highest degree first.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c < &Rat::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let coeff_part = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            match (coeff_part.is_empty(), var_part.is_empty()) {
                (true, _) => out.push_str(&var_part),
                (false, true) => out.push_str(&coeff_part),
                (false, false) => out.push_str(&format!("{coeff_part}*{var_part}")),
            }
        }
        out
    }

    /// Number of terms when rendered (used to decide parenthesization).
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}
