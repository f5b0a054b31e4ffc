//! Differential operators with coefficients in K = Q(x).
//!
//! An operator is stored dense as coefficients of powers of D = d/dx.
//! Composition follows the Leibniz rule D(f g) = f' g + f g', so the ring
//! is noncommutative: D * x = x D + 1.  Division happens from the right,
//! matching factorizations L = N * M where M divides L on the right.

use crate::error::{Error, Result};
use crate::mpoly::MPoly3;
use crate::ratfunc::RatFunc;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Differential operator sum c_k D^k; no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOp {
    coeffs: Vec<RatFunc>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    /// The derivation D.
    pub fn d() -> Self {
        Self::monomial_d(1, RatFunc::one())
    }

    /// Multiplication operator by a function.
    pub fn constant(c: RatFunc) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c * D^k.
    pub fn monomial_d(k: usize, c: RatFunc) -> Self {
        let mut coeffs = vec![RatFunc::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of D^k.
    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order as a differential operator; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Left-normalizes to leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
        }
    }

    /// D * self, by the Leibniz rule.
    pub fn premul_d(&self) -> Self {
        let mut coeffs = vec![RatFunc::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = &coeffs[k + 1] + c;
            coeffs[k] = &coeffs[k] + &c.derive();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies the operator to a function.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut der = f.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                der = der.derive();
            }
            acc = &acc + &(c * &der);
        }
        acc
    }

    /// self * other - other * self.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Division from the right: self = q * b + r with ord r < ord b.
    pub fn right_divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let Some(ord_b) = b.order() else {
            return Err(Error::DivisionByZeroOperator);
        };
        let lc_b = b.leading_coeff().unwrap();
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(ord_r) = r.order() {
            if ord_r < ord_b {
                break;
            }
            let c = r.leading_coeff().unwrap().checked_div(lc_b)?;
            let t = Self::monomial_d(ord_r - ord_b, c);
            r = &r - &(&t * b);
            q = &q + &t;
        }
        Ok((q, r))
    }

    /// Monic greatest common right divisor.
    pub fn right_gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.right_divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| &self.coeff(k) + &rhs.coeff(k))
            .collect();
        DiffOp::from_coeffs(coeffs)
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| &self.coeff(k) - &rhs.coeff(k))
            .collect();
        DiffOp::from_coeffs(coeffs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    /// Operator composition.
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        let mut acc = DiffOp::zero();
        let mut cur = rhs.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                cur = cur.premul_d();
            }
            acc = &acc + &cur.scale(c);
        }
        acc
    }
}

/// Evaluates a commutative polynomial at the pairwise commuting operators
/// (lambda, mu, gamma) -> (l, a1, a2); powers are shared across terms.
pub fn operator_poly_eval(f: &MPoly3, l: &DiffOp, a1: &DiffOp, a2: &DiffOp) -> DiffOp {
    let mut pows: [Vec<DiffOp>; 3] = [
        vec![DiffOp::one()],
        vec![DiffOp::one()],
        vec![DiffOp::one()],
    ];
    let bases = [l, a1, a2];
    let mut power = |which: usize, e: u32| -> DiffOp {
        let e = e as usize;
        while pows[which].len() <= e {
            let next = &pows[which][pows[which].len() - 1] * bases[which];
            pows[which].push(next);
        }
        pows[which][e].clone()
    };
    let mut acc = DiffOp::zero();
    for (m, c) in f.terms() {
        let t = &(&power(0, m.0) * &power(1, m.1)) * &power(2, m.2);
        acc = &acc + &t.scale(c);
    }
    acc
}

impl fmt::Display for DiffOp {
    /// Highest order first: "D^3 + (2/x)*D - 1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let ds = match k {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{k}"),
            };
            let (neg, body) = match c.constant_value() {
                Some(v) => {
                    use num_traits::{One, Signed};
                    let a = v.abs();
                    let coeff = if a.is_one() && !ds.is_empty() {
                        String::new()
                    } else {
                        a.to_string()
                    };
                    let body = match (coeff.is_empty(), ds.is_empty()) {
                        (true, _) => ds.clone(),
                        (false, true) => coeff,
                        (false, false) => format!("{coeff}*{ds}"),
                    };
                    (v.is_negative(), body)
                }
                None => {
                    let cs = format!("({c})");
                    let body = if ds.is_empty() {
                        cs
                    } else {
                        format!("{cs}*{ds}")
                    };
                    (false, body)
                }
            };
            if first {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}
