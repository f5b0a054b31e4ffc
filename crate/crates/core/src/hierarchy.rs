//! Differential polynomials in two potential slots and the recursion tower
//! built from them.
//!
//! Centralizer coefficients satisfy a recursion whose right-hand sides are
//! total x-derivatives.  Integrating those right-hand sides at a concrete
//! potential would silently drop any additive constant hiding inside the
//! potential, so the recursion runs here once and for all over the free
//! differential ring Q{u0, u1}: variables u_j^(k) stand for the k-th
//! derivative of potential slot j.  Results are instantiated at concrete
//! rational potentials afterwards.
//!
//! `integrate` inverts the total derivative exactly: the maximal variable
//! (ranked by derivative order, then slot) of a total derivative always
//! occurs linearly, with a coefficient containing only lower variables, and
//! removing it strictly lowers the maximal variable.  Inputs that are not
//! total derivatives are reported, never approximated.

use crate::error::{Error, Result};
use crate::rat::{rat, Rat};
use crate::ratfunc::RatFunc;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

/// Variable u_j^(k): slot j in {0, 1}, derivative order k.
pub(crate) type DVar = (u8, u32);

/// Monomial: sorted list of (variable, exponent), exponents positive.
type DMono = Vec<(DVar, u32)>;

/// Rank for choosing the integration variable: derivative order first.
fn rank(v: DVar) -> (u32, u8) {
    (v.1, v.0)
}

/// Polynomial in the variables u_j^(k) over Q.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DiffPoly {
    terms: BTreeMap<DMono, Rat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        DiffPoly { terms }
    }

    /// u_j^(k).
    pub fn var(j: u8, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![((j, k), 1)], Rat::one());
        DiffPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, mono: DMono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            None => {
                self.terms.insert(mono, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(mono, s);
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    /// Total derivative with respect to x: u_j^(k) differentiates to
    /// u_j^(k+1).
    pub fn total_derivative(&self) -> Self {
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            for &((j, k), e) in mono {
                let mut factors: BTreeMap<DVar, u32> = mono.iter().cloned().collect();
                if e == 1 {
                    factors.remove(&(j, k));
                } else {
                    factors.insert((j, k), e - 1);
                }
                *factors.entry((j, k + 1)).or_insert(0) += 1;
                let new_mono: DMono = factors.into_iter().collect();
                out.insert_add(new_mono, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    pub fn total_derivative_n(&self, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.total_derivative();
        }
        out
    }

    /// Coefficient of the empty monomial.
    #[cfg(test)]
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rat::zero)
    }

    /// Maximal variable present, by `rank`.
    fn max_var(&self) -> Option<DVar> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|&(v, _)| v))
            .max_by_key(|&v| rank(v))
    }

    /// Splits as g1 * v + g0 when the polynomial is linear in `v`; `None`
    /// if any term is nonlinear in `v`.
    fn split_linear(&self, v: DVar) -> Option<(DiffPoly, DiffPoly)> {
        let mut g1 = DiffPoly::zero();
        let mut g0 = DiffPoly::zero();
        for (mono, c) in &self.terms {
            match mono.iter().find(|&&(w, _)| w == v) {
                None => g0.insert_add(mono.clone(), c.clone()),
                Some(&(_, e)) if e == 1 => {
                    let reduced: DMono = mono
                        .iter()
                        .filter(|&&(w, _)| w != v)
                        .cloned()
                        .collect();
                    g1.insert_add(reduced, c.clone());
                }
                Some(_) => return None,
            }
        }
        Some((g1, g0))
    }

    /// Antiderivative in the single variable `w` (all other variables act
    /// as constants).
    fn integrate_in(&self, w: DVar) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (mono, c) in &self.terms {
            let e = mono
                .iter()
                .find(|&&(v, _)| v == w)
                .map_or(0, |&(_, e)| e);
            let mut factors: BTreeMap<DVar, u32> = mono.iter().cloned().collect();
            factors.insert(w, e + 1);
            let new_mono: DMono = factors.into_iter().collect();
            out.insert_add(new_mono, c / Rat::from_integer((e + 1).into()));
        }
        out
    }

    /// Substitutes concrete potentials: u_j^(k) becomes the k-th derivative
    /// of `q[j]`.
    pub fn instantiate(&self, q0: &RatFunc, q1: &RatFunc) -> RatFunc {
        let mut ders: [Vec<RatFunc>; 2] = [vec![q0.clone()], vec![q1.clone()]];
        let mut der = |j: u8, k: u32| -> RatFunc {
            let chain = &mut ders[j as usize];
            while chain.len() <= k as usize {
                let next = chain.last().unwrap().derive();
                chain.push(next);
            }
            chain[k as usize].clone()
        };
        let mut acc = RatFunc::zero();
        for (mono, c) in &self.terms {
            let mut t = RatFunc::from_rat(c.clone());
            for &((j, k), e) in mono {
                t = &t * &der(j, k).pow(e as usize);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut factors: BTreeMap<DVar, u32> = ma.iter().cloned().collect();
                for &(v, e) in mb {
                    *factors.entry(v).or_insert(0) += e;
                }
                out.insert_add(factors.into_iter().collect(), ca * cb);
            }
        }
        out
    }
}

/// Exact preimage under the total derivative, with zero constant term.
///
/// Repeatedly peels the maximal variable v = u_j^(k): a total derivative is
/// linear in v, k is at least 1, and the cofactor of v only involves
/// variables of rank at most u_j^(k-1).  Each step strictly lowers the
/// maximal variable, so the loop terminates.
pub(crate) fn integrate(g: &DiffPoly) -> Result<DiffPoly> {
    let mut g = g.clone();
    let mut f = DiffPoly::zero();
    while !g.is_zero() {
        let Some(v) = g.max_var() else {
            return Err(Error::NotTotalDerivative);
        };
        let (j, k) = v;
        if k == 0 {
            return Err(Error::NotTotalDerivative);
        }
        let Some((g1, _)) = g.split_linear(v) else {
            return Err(Error::NotTotalDerivative);
        };
        let w = (j, k - 1);
        if g1
            .max_var()
            .is_some_and(|u| rank(u) > rank(w))
        {
            return Err(Error::NotTotalDerivative);
        }
        let t = g1.integrate_in(w);
        f = &f + &t;
        g = &g - &t.total_derivative();
    }
    Ok(f)
}

/// One level of the recursion tower: the pair (f, g) for each of the two
/// branches.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TowerLevel {
    /// Indexed by branch - 1.
    pub f: [DiffPoly; 2],
    pub g: [DiffPoly; 2],
}

static TOWER: Lazy<Mutex<Vec<TowerLevel>>> = Lazy::new(|| {
    Mutex::new(vec![TowerLevel {
        f: [DiffPoly::zero(), DiffPoly::one()],
        g: [DiffPoly::one(), DiffPoly::zero()],
    }])
});

/// The pair (f_n, g_n) for one branch, computed on demand and cached.
pub(crate) fn tower_level(n: usize, branch: u8) -> Result<(DiffPoly, DiffPoly)> {
    assert!(branch == 1 || branch == 2, "branch must be 1 or 2");
    let q0 = DiffPoly::var(0, 0);
    let q0d = DiffPoly::var(0, 1);
    let q1 = DiffPoly::var(1, 0);
    let q1d = DiffPoly::var(1, 1);
    let q1dd = DiffPoly::var(1, 2);
    let q1ddd = DiffPoly::var(1, 3);
    let mut tower = TOWER.lock().unwrap();
    while tower.len() <= n {
        let prev = tower.last().unwrap().clone();
        let mut f = [DiffPoly::zero(), DiffPoly::zero()];
        let mut g = [DiffPoly::zero(), DiffPoly::zero()];
        for b in 0..2 {
            let (pf, pg) = (&prev.f[b], &prev.g[b]);
            let rhs_f = &(&(&(&(&q1 * &pg.total_derivative()).scale(&rat(2, 1))
                + &pg.total_derivative_n(3).scale(&rat(2, 1)))
                + &(&q1d * pg))
                + &(&q0 * &pf.total_derivative()).scale(&rat(3, 1)))
                + &(&q0d * pf).scale(&rat(2, 1));
            f[b] = integrate(&rhs_f.scale(&rat(1, 3)))?;

            let rhs_g = &(&(&(&(&(&q0 * &pg.total_derivative()).scale(&rat(3, 1))
                + &(&q0d * pg))
                - &pf.total_derivative_n(5).scale(&rat(1, 6)))
                - &(&q1 * &pf.total_derivative_n(3)).scale(&rat(5, 6)))
                - &(&q1d * &pf.total_derivative_n(2)).scale(&rat(5, 4)))
                - &(&(&q1dd.scale(&rat(3, 4)) + &(&q1 * &q1).scale(&rat(2, 3)))
                    * &pf.total_derivative());
            let rhs_g = &rhs_g
                - &(&(&q1ddd.scale(&rat(1, 6)) + &(&q1 * &q1d).scale(&rat(2, 3))) * pf);
            g[b] = integrate(&rhs_g.scale(&rat(1, 3)))?;
        }
        tower.push(TowerLevel { f, g });
    }
    let level = &tower[n];
    let b = (branch - 1) as usize;
    Ok((level.f[b].clone(), level.g[b].clone()))
}
