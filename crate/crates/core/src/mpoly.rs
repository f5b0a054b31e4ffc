//! Polynomials in the spectral variables lambda, mu, gamma and matrices of
//! them.
//!
//! The polynomial kernel is generic over the coefficient ring so the same
//! code serves K = Q(x) coefficients (the public `MPoly3`) and cleared
//! Q[x] coefficients inside the fraction-free determinant.  Determinants
//! clear x-denominators row by row, run Bareiss elimination with exact
//! divisions in Q[x][lambda, mu, gamma], and restore the cleared factor at
//! the end.

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::upoly::UPoly;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponents of lambda, mu, gamma.
pub type Mono = (u32, u32, u32);

/// Coefficient ring interface for the polynomial kernel.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; `None` if `other` does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.checked_div(other).ok()
    }
}

impl Coeff for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.try_exact_div(other)
    }
}

/// Sparse polynomial in lambda, mu, gamma over `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<C: Coeff> {
    terms: BTreeMap<Mono, C>,
}

/// Polynomials in the spectral variables with K = Q(x) coefficients.
pub type MPoly3 = MPoly<RatFunc>;

/// Graded lexicographic comparison with lambda > mu > gamma.
fn graded_lex(a: &Mono, b: &Mono) -> std::cmp::Ordering {
    let ta = a.0 + a.1 + a.2;
    let tb = b.0 + b.1 + b.2;
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

impl<C: Coeff> MPoly<C> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term((0, 0, 0), C::one())
    }

    pub fn from_coeff(c: C) -> Self {
        Self::term((0, 0, 0), c)
    }

    pub fn term(mono: Mono, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Mono) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0 + m.1 + m.2).max()
    }

    pub fn degree_in(&self, var: CurveVar) -> Option<u32> {
        self.terms.keys().map(|m| var.exp(m)).max()
    }

    fn insert_add(&mut self, mono: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            None => {
                self.terms.insert(mono, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(mono, s);
                }
            }
        }
    }

    /// Leading term under graded lex (lambda > mu > gamma).
    pub fn leading_term(&self) -> Option<(Mono, &C)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| graded_lex(a, b))
            .map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.insert_add(*m, a.mul(c));
        }
        out
    }

    pub fn mul_term(&self, mono: &Mono, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.insert_add((m.0 + mono.0, m.1 + mono.1, m.2 + mono.2), a.mul(c));
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to one spectral variable.
    pub fn derivative(&self, var: CurveVar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = var.exp(m);
            if e == 0 {
                continue;
            }
            // e * c without requiring a scalar action on C.
            let mut acc = C::zero();
            for _ in 0..e {
                acc = acc.add(c);
            }
            out.insert_add(var.dec(m), acc);
        }
        out
    }

    /// Exact multivariate division; `None` when not divisible.
    pub fn try_exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.leading_term()?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            if rm.0 < dm.0 || rm.1 < dm.1 || rm.2 < dm.2 {
                return None;
            }
            let c = rc.exact_div(&dc)?;
            let m = (rm.0 - dm.0, rm.1 - dm.1, rm.2 - dm.2);
            rem = &rem - &d.mul_term(&m, &c);
            quot.insert_add(m, c);
        }
        Some(quot)
    }
}

impl MPoly3 {
    pub fn var(v: CurveVar) -> Self {
        Self::term(v.mono(), RatFunc::one())
    }

    pub fn lambda() -> Self {
        Self::var(CurveVar::Lambda)
    }

    pub fn mu() -> Self {
        Self::var(CurveVar::Mu)
    }

    pub fn gamma() -> Self {
        Self::var(CurveVar::Gamma)
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_coeff(RatFunc::from_rat(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(RatFunc::from_int(n))
    }

    /// True when every coefficient is a rational number (free of x).
    pub fn is_constant_in_x(&self) -> bool {
        self.terms.values().all(RatFunc::is_constant)
    }

    /// Evaluates at a rational point of C^3; coefficients may depend on x,
    /// so the result lives in K.
    pub fn eval_point(&self, p: &(Rat, Rat, Rat)) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (m, c) in &self.terms {
            let scalar = crate::rat::rat_pow(&p.0, m.0 as i64)
                * crate::rat::rat_pow(&p.1, m.1 as i64)
                * crate::rat::rat_pow(&p.2, m.2 as i64);
            acc = &acc + &c.scale(&scalar);
        }
        acc
    }

    /// Substitutes univariate polynomials (in an outside parameter) for
    /// lambda, mu, gamma.  Requires constant coefficients.
    pub fn eval_poly_params(&self, comps: &[UPoly; 3]) -> Result<UPoly> {
        let mut acc = UPoly::zero();
        for (m, c) in &self.terms {
            let r = c
                .constant_value()
                .ok_or(Error::NonConstantCoefficient)?;
            let t = &(&comps[0].pow(m.0 as usize) * &comps[1].pow(m.1 as usize))
                * &comps[2].pow(m.2 as usize);
            acc = &acc + &t.scale(&r);
        }
        Ok(acc)
    }

    /// The row (df/dlambda, df/dmu, df/dgamma) of the Jacobian.
    pub fn jacobian_row(&self) -> [MPoly3; 3] {
        [
            self.derivative(CurveVar::Lambda),
            self.derivative(CurveVar::Mu),
            self.derivative(CurveVar::Gamma),
        ]
    }

    /// Flips the global sign so the highest pure power of `var` gets a
    /// positive coefficient; returns the input unchanged when it has no pure
    /// power of `var` or the coefficient is not a rational constant.
    pub fn sign_normalized(&self, var: CurveVar) -> Self {
        let pure = self
            .terms
            .iter()
            .filter(|(m, _)| {
                var.exp(m) > 0 && m.0 + m.1 + m.2 == var.exp(m)
            })
            .max_by_key(|(m, _)| var.exp(m));
        if let Some((_, c)) = pure {
            if let Some(v) = c.constant_value() {
                if v.is_negative() {
                    return -self;
                }
            }
        }
        self.clone()
    }
}

/// One of the three spectral variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveVar {
    Lambda,
    Mu,
    Gamma,
}

impl CurveVar {
    pub fn mono(self) -> Mono {
        match self {
            CurveVar::Lambda => (1, 0, 0),
            CurveVar::Mu => (0, 1, 0),
            CurveVar::Gamma => (0, 0, 1),
        }
    }

    fn exp(self, m: &Mono) -> u32 {
        match self {
            CurveVar::Lambda => m.0,
            CurveVar::Mu => m.1,
            CurveVar::Gamma => m.2,
        }
    }

    fn dec(self, m: &Mono) -> Mono {
        match self {
            CurveVar::Lambda => (m.0 - 1, m.1, m.2),
            CurveVar::Mu => (m.0, m.1 - 1, m.2),
            CurveVar::Gamma => (m.0, m.1, m.2 - 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveVar::Lambda => "lambda",
            CurveVar::Mu => "mu",
            CurveVar::Gamma => "gamma",
        }
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, c.neg());
        }
        out
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.neg());
        }
        out
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add((ma.0 + mb.0, ma.1 + mb.1, ma.2 + mb.2), ca.mul(cb));
            }
        }
        out
    }
}

fn mono_string(m: &Mono) -> String {
    let mut parts = Vec::new();
    for (e, name) in [(m.0, "lambda"), (m.1, "mu"), (m.2, "gamma")] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly3 {
    /// Terms in descending graded lex order; x-dependent coefficients are
    /// parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut monos: Vec<&Mono> = self.terms.keys().collect();
        monos.sort_by(|a, b| graded_lex(b, a));
        let mut first = true;
        for m in monos {
            let c = &self.terms[m];
            let ms = mono_string(m);
            let (neg, body) = match c.constant_value() {
                Some(v) => {
                    let a = v.abs();
                    let coeff = if a.is_one() && !ms.is_empty() {
                        String::new()
                    } else {
                        a.to_string()
                    };
                    let body = match (coeff.is_empty(), ms.is_empty()) {
                        (true, _) => ms.clone(),
                        (false, true) => coeff,
                        (false, false) => format!("{coeff}*{ms}"),
                    };
                    (v.is_negative(), body)
                }
                None => {
                    let cs = format!("({c})");
                    let body = if ms.is_empty() {
                        cs
                    } else {
                        format!("{cs}*{ms}")
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

/// Matrix over `MPoly3`, used for differential resultants.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    rows: Vec<Vec<MPoly3>>,
    ncols: usize,
}

impl PolyMatrix {
    /// Builds from rows; all rows must share one length.
    pub fn new(rows: Vec<Vec<MPoly3>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged matrix rows"
        );
        PolyMatrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> &MPoly3 {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<MPoly3>] {
        &self.rows
    }

    /// Copy of the matrix with one column removed.
    pub fn without_column(&self, j: usize) -> PolyMatrix {
        assert!(j < self.ncols, "column out of range");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        PolyMatrix::new(rows)
    }

    /// Exact determinant.  Clears x-denominators row by row, runs
    /// fraction-free Bareiss elimination over Q[x][lambda, mu, gamma], and
    /// divides the cleared factor back out.
    pub fn determinant(&self) -> Result<MPoly3> {
        if self.nrows() != self.ncols {
            return Err(Error::NonSquare);
        }
        let n = self.nrows();
        if n == 0 {
            return Ok(MPoly3::one());
        }
        let mut cleared: Vec<Vec<MPoly<UPoly>>> = Vec::with_capacity(n);
        let mut factor = UPoly::one();
        for row in &self.rows {
            let mut lcm = UPoly::one();
            for entry in row {
                for (_, c) in entry.terms() {
                    lcm = lcm.lcm(c.den());
                }
            }
            let scaled = row
                .iter()
                .map(|entry| {
                    let mut out: MPoly<UPoly> = MPoly::zero();
                    for (m, c) in entry.terms() {
                        let mult = lcm.try_exact_div(c.den()).unwrap();
                        out.insert_add(*m, c.num() * &mult);
                    }
                    out
                })
                .collect();
            cleared.push(scaled);
            factor = &factor * &lcm;
        }
        let det = bareiss(cleared);
        let mut out = MPoly3::zero();
        for (m, c) in det.terms() {
            out.insert_add(*m, RatFunc::new(c.clone(), factor.clone()));
        }
        Ok(out)
    }
}

/// Fraction-free Bareiss determinant over an exact-division coefficient ring.
fn bareiss<C: Coeff>(mut m: Vec<Vec<MPoly<C>>>) -> MPoly<C> {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut negate = false;
    let mut prev = MPoly::<C>::one();
    for k in 0..n - 1 {
        // Pivot search.
        let pivot = (k..n).find(|&i| !m[i][k].is_zero());
        let Some(p) = pivot else {
            return MPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .try_exact_div(&prev)
                    .expect("bareiss: inexact division");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Outcome of the squarefreeness test for curve polynomials.
#[derive(Debug, Clone, PartialEq)]
pub enum Squarefreeness {
    Squarefree,
    /// Not squarefree; the certificate is the product of the repeated
    /// factors, each taken once.
    Repeated { certificate: MPoly3 },
}

impl Squarefreeness {
    pub fn is_squarefree(&self) -> bool {
        matches!(self, Squarefreeness::Squarefree)
    }
}

/// Decides squarefreeness of a polynomial with rational-constant
/// coefficients in mu and gamma only.
///
/// Works with the polynomial as an element of Q[mu][gamma]: a nontrivial
/// content is tested with a univariate gcd, the primitive part with a
/// subresultant-PRS gcd against its gamma-derivative.
pub fn squarefree_test_const(f: &MPoly3) -> Result<Squarefreeness> {
    let mut gp: Vec<UPoly> = Vec::new();
    for (m, c) in f.terms() {
        if m.0 != 0 {
            return Err(Error::PreconditionViolated(
                "squarefree test requires a polynomial in mu and gamma only",
            ));
        }
        let r = c.constant_value().ok_or(Error::PreconditionViolated(
            "squarefree test requires constant coefficients",
        ))?;
        let k = m.2 as usize;
        if gp.len() <= k {
            gp.resize(k + 1, UPoly::zero());
        }
        gp[k] = &gp[k] + &UPoly::monomial(m.1 as usize, r);
    }
    gp_trim(&mut gp);
    if gp.is_empty() {
        return Err(Error::PreconditionViolated(
            "squarefree test requires a nonzero polynomial",
        ));
    }

    // Content in Q[mu].
    let mut content = UPoly::zero();
    for c in &gp {
        content = content.gcd(c);
    }
    let content_rep = {
        let g = content.gcd(&content.derivative());
        if g.is_constant() {
            None
        } else {
            // Squarefree part of the repeated content factors.
            Some(g.try_exact_div(&g.gcd(&g.derivative())).unwrap().monic())
        }
    };
    if let Some(w) = content_rep {
        return Ok(Squarefreeness::Repeated {
            certificate: mpoly_from_mu_poly(&w),
        });
    }

    let pp: Vec<UPoly> = gp
        .iter()
        .map(|c| c.try_exact_div(&content).unwrap())
        .collect();
    if gp_deg(&pp) == Some(0) {
        // Univariate in mu; its squarefreeness was the content test above.
        return Ok(Squarefreeness::Squarefree);
    }

    let g = gp_gcd(&pp, &gp_derivative(&pp));
    if gp_deg(&g) == Some(0) {
        return Ok(Squarefreeness::Squarefree);
    }
    // Certificate: squarefree part of the repeated-factor product.
    let g2 = gp_gcd(&g, &gp_derivative(&g));
    let cert = gp_exact_div(&g, &g2).expect("squarefree part division");
    Ok(Squarefreeness::Repeated {
        certificate: mpoly_from_gp(&gp_normalize(&cert)),
    })
}

fn mpoly_from_mu_poly(p: &UPoly) -> MPoly3 {
    let mut out = MPoly3::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = &out + &MPoly3::term((0, j as u32, 0), RatFunc::from_rat(c.clone()));
        }
    }
    out
}

fn mpoly_from_gp(gp: &[UPoly]) -> MPoly3 {
    let mut out = MPoly3::zero();
    for (k, p) in gp.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = &out + &MPoly3::term((0, j as u32, k as u32), RatFunc::from_rat(c.clone()));
            }
        }
    }
    out
}

// --- polynomials in gamma with Q[mu] coefficients -------------------------

fn gp_trim(v: &mut Vec<UPoly>) {
    while v.last().is_some_and(UPoly::is_zero) {
        v.pop();
    }
}

fn gp_deg(v: &[UPoly]) -> Option<usize> {
    v.len().checked_sub(1)
}

fn gp_is_zero(v: &[UPoly]) -> bool {
    v.is_empty()
}

fn gp_derivative(v: &[UPoly]) -> Vec<UPoly> {
    let mut out: Vec<UPoly> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
        .collect();
    gp_trim(&mut out);
    out
}

fn gp_scale(v: &[UPoly], c: &UPoly) -> Vec<UPoly> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|a| a * c).collect()
}

fn gp_sub(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let n = a.len().max(b.len());
    let zero = UPoly::zero();
    let mut out: Vec<UPoly> = (0..n)
        .map(|k| {
            let x = a.get(k).unwrap_or(&zero);
            let y = b.get(k).unwrap_or(&zero);
            x - y
        })
        .collect();
    gp_trim(&mut out);
    out
}

fn gp_shift(v: &[UPoly], k: usize) -> Vec<UPoly> {
    let mut out = vec![UPoly::zero(); k];
    out.extend_from_slice(v);
    out
}

fn gp_content(v: &[UPoly]) -> UPoly {
    let mut g = UPoly::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn gp_primitive(v: &[UPoly]) -> Vec<UPoly> {
    if gp_is_zero(v) {
        return Vec::new();
    }
    let c = gp_content(v);
    v.iter().map(|a| a.try_exact_div(&c).unwrap()).collect()
}

/// Pseudo-remainder of `a` by `b` in Q[mu][gamma]; requires `b` nonzero.
fn gp_prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = gp_deg(b).expect("pseudo-remainder by zero");
    let lcb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    gp_trim(&mut r);
    let da = match gp_deg(&r) {
        None => return Vec::new(),
        Some(d) if d < db => {
            // prem multiplies by lcb^(da-db+1); with da < db the remainder
            // is just a (times nothing we care about, gcd-wise).
            return r;
        }
        Some(d) => d,
    };
    let mut e = (da - db + 1) as i64;
    while let Some(dr) = gp_deg(&r) {
        if dr < db {
            break;
        }
        let lr = r.last().unwrap().clone();
        let shifted = gp_shift(b, dr - db);
        r = gp_sub(&gp_scale(&r, &lcb), &gp_scale(&shifted, &lr));
        e -= 1;
    }
    for _ in 0..e {
        r = gp_scale(&r, &lcb);
    }
    r
}

/// Primitive gcd in Q[mu][gamma] via the subresultant polynomial remainder
/// sequence.
fn gp_gcd(a0: &[UPoly], b0: &[UPoly]) -> Vec<UPoly> {
    if gp_is_zero(a0) {
        return gp_primitive(b0);
    }
    if gp_is_zero(b0) {
        return gp_primitive(a0);
    }
    let (mut a, mut b) = (gp_primitive(a0), gp_primitive(b0));
    if gp_deg(&a) < gp_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = UPoly::one();
    let mut h = UPoly::one();
    loop {
        if gp_is_zero(&b) {
            return gp_primitive(&a);
        }
        if gp_deg(&b) == Some(0) {
            // Nonzero constant (in gamma): coprime primitive parts.
            return vec![UPoly::one()];
        }
        let delta = gp_deg(&a).unwrap() - gp_deg(&b).unwrap();
        let r = gp_prem(&a, &b);
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .iter()
            .map(|c| c.try_exact_div(&divisor).expect("subresultant PRS division"))
            .collect();
        gp_trim(&mut b);
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).try_exact_div(&h.pow(delta - 1)).unwrap(),
        };
    }
}

/// Exact division in Q[mu][gamma]; `None` when not divisible.
fn gp_exact_div(a: &[UPoly], b: &[UPoly]) -> Option<Vec<UPoly>> {
    let db = gp_deg(b)?;
    let lcb = b.last().unwrap();
    let mut r = a.to_vec();
    gp_trim(&mut r);
    let mut q = vec![UPoly::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = gp_deg(&r) {
        if dr < db {
            return None;
        }
        let c = r.last().unwrap().try_exact_div(lcb)?;
        let k = dr - db;
        r = gp_sub(&r, &gp_shift(&gp_scale(b, &c), k));
        q[k] = c;
    }
    gp_trim(&mut q);
    Some(q)
}

/// Primitive, scaled so the leading gamma-coefficient's leading rational
/// is 1; rational scalars are units in Q[mu], so this pins one
/// representative.
fn gp_normalize(v: &[UPoly]) -> Vec<UPoly> {
    if gp_is_zero(v) {
        return Vec::new();
    }
    let mut out = gp_primitive(v);
    if let Some(c) = out.last().and_then(|p| p.leading_coeff()).cloned() {
        let inv = c.recip();
        out = out.iter().map(|p| p.scale(&inv)).collect();
    }
    out
}
