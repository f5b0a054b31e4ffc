//! Spectral curves and spectral factorization of third-order operators.
//!
//! Given the centralizer basis {1, A1, A2} of L, the pairwise differential
//! resultants f1, f2, f3 cut out an affine curve in (lambda, mu, gamma)
//! space whose coordinate ring mirrors the centralizer.  At a rational curve
//! point P0 = (lambda0, mu0, gamma0) away from a bad set Z, the first
//! differential subresultant of L - lambda and A1 - mu evaluates to a monic
//! right factor: L - lambda0 = (D^2 - phi0 D + phi0^2 - 2 phi0' + u1)(D + phi0).
//! Z collects the singular points of the curve and the zeros of the
//! subresultant denominators phi_{i,1}.

use crate::boussinesq::{centralizer_basis, CentralizerBasis, Potentials};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::mpoly::{squarefree_test_const, CurveVar, MPoly3, Squarefreeness};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::resultant::{diff_resultant, first_subresultant, SubresultantPair};
use crate::upoly::UPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primality status of the curve ideal (f1, f2, f3).
///
/// NotPrime is certified by a repeated factor of f3.  HeuristicallyPrime
/// records that f3 is squarefree and f1, f2 are irreducible because the
/// operator orders are coprime; it is not a primality proof.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    NotPrime { certificate: MPoly3 },
    HeuristicallyPrime,
    Undetermined,
}

/// The three resultant generators of the curve ideal, sign-normalized, with
/// the operator orders and the primality verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve {
    pub f1: MPoly3,
    pub f2: MPoly3,
    pub f3: MPoly3,
    pub orders: (usize, usize, usize),
    pub verdict: Verdict,
}

/// A rational point of the spectral curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub lambda0: Rat,
    pub mu0: Rat,
    pub gamma0: Rat,
}

impl CurvePoint {
    pub fn tuple(&self) -> (Rat, Rat, Rat) {
        (self.lambda0.clone(), self.mu0.clone(), self.gamma0.clone())
    }

    /// True iff all three generators vanish here.
    pub fn on_curve(&self, curve: &SpectralCurve) -> bool {
        let p = self.tuple();
        curve.f1.eval_point(&p).is_zero()
            && curve.f2.eval_point(&p).is_zero()
            && curve.f3.eval_point(&p).is_zero()
    }
}

/// A polynomial parametrization tau -> (lambda, mu, gamma) of the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Parametrization {
    pub components: [UPoly; 3],
}

impl Parametrization {
    pub fn new(components: [UPoly; 3]) -> Self {
        Parametrization { components }
    }

    /// Checks the defining identity: each generator composed with the
    /// parametrization is the zero polynomial in tau.
    pub fn validate(&self, curve: &SpectralCurve) -> Result<()> {
        for f in [&curve.f1, &curve.f2, &curve.f3] {
            if !f.eval_poly_params(&self.components)?.is_zero() {
                return Err(Error::NotOnCurve);
            }
        }
        Ok(())
    }
}

/// Assembles the spectral curve of a commuting basis and classifies it.
pub fn spectral_curve(l: &DiffOp, basis: &CentralizerBasis) -> Result<SpectralCurve> {
    let f1 = diff_resultant(l, CurveVar::Lambda, &basis.a1, CurveVar::Mu)?
        .sign_normalized(CurveVar::Lambda);
    let f2 = diff_resultant(l, CurveVar::Lambda, &basis.a2, CurveVar::Gamma)?
        .sign_normalized(CurveVar::Lambda);
    let f3 = diff_resultant(&basis.a1, CurveVar::Mu, &basis.a2, CurveVar::Gamma)?
        .sign_normalized(CurveVar::Gamma);
    let o1 = basis.a1.order().expect("basis operator is nonzero");
    let o2 = basis.a2.order().expect("basis operator is nonzero");
    let verdict = match squarefree_test_const(&f3)? {
        Squarefreeness::Repeated { certificate } => Verdict::NotPrime { certificate },
        Squarefreeness::Squarefree if o1.gcd(&o2) == 1 => Verdict::HeuristicallyPrime,
        Squarefreeness::Squarefree => Verdict::Undetermined,
    };
    Ok(SpectralCurve {
        f1,
        f2,
        f3,
        orders: (3, o1, o2),
        verdict,
    })
}

/// The three first-subresultant pairs, indexed (L,A1), (L,A2), (A1,A2).
pub fn curve_subresultants(
    l: &DiffOp,
    a1: &DiffOp,
    a2: &DiffOp,
) -> Result<[SubresultantPair; 3]> {
    Ok([
        first_subresultant(l, CurveVar::Lambda, a1, CurveVar::Mu)?,
        first_subresultant(l, CurveVar::Lambda, a2, CurveVar::Gamma)?,
        first_subresultant(a1, CurveVar::Mu, a2, CurveVar::Gamma)?,
    ])
}

/// Positive divisors of |n|, smallest first.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    if let Some(m) = n.to_u128() {
        let mut i: u128 = 1;
        while let Some(sq) = i.checked_mul(i) {
            if sq > m {
                break;
            }
            if m % i == 0 {
                small.push(BigInt::from(i));
                if sq != m {
                    large.push(BigInt::from(m / i));
                }
            }
            i += 1;
        }
    } else {
        let mut i = BigInt::one();
        while &i * &i <= n {
            if (&n % &i).is_zero() {
                small.push(i.clone());
                if &i * &i != n {
                    large.push(&n / &i);
                }
            }
            i += 1;
        }
    }
    large.reverse();
    small.extend(large);
    small
}

/// All rational roots of a nonzero univariate polynomial, ascending.
fn rational_roots(p: &UPoly) -> Vec<Rat> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let coeffs = p.coeffs();
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rat::zero());
    }
    if deg > low {
        let mut den_lcm = BigInt::one();
        for c in &coeffs[low..] {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = coeffs[low..]
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let lead = ints.last().expect("nonempty");
        for num in divisors(&ints[0]) {
            for den in divisors(lead) {
                for sign in [1i32, -1] {
                    let cand = Rat::new(BigInt::from(sign) * &num, den.clone());
                    if p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Substitutes lambda = lambda0 into a generator involving only lambda and
/// `var`, producing a univariate polynomial in `var`.
fn slice_at_lambda(f: &MPoly3, var: CurveVar, lambda0: &Rat) -> Result<UPoly> {
    let mut out = UPoly::zero();
    for (m, c) in f.terms() {
        let r = c.constant_value().ok_or(Error::NonConstantCoefficient)?;
        let (e, other) = match var {
            CurveVar::Mu => (m.1, m.2),
            CurveVar::Gamma => (m.2, m.1),
            CurveVar::Lambda => {
                return Err(Error::PreconditionViolated(
                    "slice variable must be mu or gamma",
                ))
            }
        };
        if other != 0 {
            return Err(Error::PreconditionViolated(
                "generator involves the third variable",
            ));
        }
        let lam_pow = crate::rat::rat_pow(lambda0, m.0 as i64);
        out = &out + &UPoly::monomial(e as usize, r * lam_pow);
    }
    Ok(out)
}

/// All rational curve points over a fixed lambda0, mu ascending then gamma.
pub fn points_at_lambda(curve: &SpectralCurve, lambda0: &Rat) -> Result<Vec<CurvePoint>> {
    let in_mu = slice_at_lambda(&curve.f1, CurveVar::Mu, lambda0)?;
    let in_gamma = slice_at_lambda(&curve.f2, CurveVar::Gamma, lambda0)?;
    let mut out = Vec::new();
    for mu0 in rational_roots(&in_mu) {
        for gamma0 in rational_roots(&in_gamma) {
            let p = CurvePoint {
                lambda0: lambda0.clone(),
                mu0: mu0.clone(),
                gamma0,
            };
            if curve.f3.eval_point(&p.tuple()).is_zero() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// First rational curve point over lambda0, or None.
pub fn point_from_lambda(curve: &SpectralCurve, lambda0: &Rat) -> Result<Option<CurvePoint>> {
    Ok(points_at_lambda(curve, lambda0)?.into_iter().next())
}

/// Evaluates a parametrization at tau0 and validates the point.
pub fn point_from_tau(
    param: &Parametrization,
    curve: &SpectralCurve,
    tau0: &Rat,
) -> Result<CurvePoint> {
    let p = CurvePoint {
        lambda0: param.components[0].eval(tau0),
        mu0: param.components[1].eval(tau0),
        gamma0: param.components[2].eval(tau0),
    };
    if !p.on_curve(curve) {
        return Err(Error::NotOnCurve);
    }
    Ok(p)
}

/// Why a point landed in the bad set Z.
#[derive(Debug, Clone, PartialEq)]
pub struct ZReport {
    pub in_z: bool,
    /// Jacobian of (f1, f2, f3) has rank < 2: a singular curve point.
    pub singular: bool,
    /// 1-based indices of the pairs whose phi_{i,1} vanishes at the point.
    pub vanishing: Vec<usize>,
}

/// Rank of the 3x3 Jacobian of the generators at a point.
pub fn jacobian_rank_at(curve: &SpectralCurve, point: &CurvePoint) -> usize {
    let p = point.tuple();
    let mut m: Vec<Vec<Rat>> = [&curve.f1, &curve.f2, &curve.f3]
        .iter()
        .map(|f| {
            f.jacobian_row()
                .iter()
                .map(|d| {
                    d.eval_point(&p)
                        .constant_value()
                        .expect("constant coefficients")
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(r) = (rank..3).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, r);
        for r in rank + 1..3 {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for j in col..3 {
                let delta = &factor * &m[rank][j];
                m[r][j] = &m[r][j] - &delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Decides membership of a curve point in the bad set Z.
pub fn z_membership(
    point: &CurvePoint,
    curve: &SpectralCurve,
    subres: &[SubresultantPair; 3],
) -> ZReport {
    let singular = jacobian_rank_at(curve, point) < 2;
    let p = point.tuple();
    let vanishing: Vec<usize> = subres
        .iter()
        .enumerate()
        .filter(|(_, s)| s.phi1.eval_point(&p).is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    ZReport {
        in_z: singular || !vanishing.is_empty(),
        singular,
        vanishing,
    }
}

/// Per-check outcome of the factorization verification.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// (D^2 - phi0 D + phi0^2 - 2 phi0' + u1)(D + phi0) equals L - lambda0.
    pub cofactor_identity: bool,
    /// D + phi0 right-divides A1 - mu0.
    pub a1_divides: bool,
    /// D + phi0 right-divides A2 - gamma0.
    pub a2_divides: bool,
    /// The subresultant ratios of all three pairs agree at P0.
    pub ratios_agree: bool,
}

impl VerificationReport {
    pub fn all(&self) -> bool {
        self.cofactor_identity && self.a1_divides && self.a2_divides && self.ratios_agree
    }
}

/// The explicit second-order cofactor D^2 - phi0 D + (phi0^2 - 2 phi0' + u1).
fn cofactor(pot: &Potentials, phi0: &RatFunc) -> DiffOp {
    let c0 = &(&(phi0 * phi0) - &phi0.derive().scale(&crate::rat::rat(2, 1))) + pot.u1();
    DiffOp::from_coeffs(vec![c0, -phi0, RatFunc::one()])
}

fn monic_degree_one(phi0: &RatFunc) -> DiffOp {
    DiffOp::from_coeffs(vec![phi0.clone(), RatFunc::one()])
}

fn shift(op: &DiffOp, by: &Rat) -> DiffOp {
    op - &DiffOp::constant(RatFunc::from_rat(by.clone()))
}

fn verify_with_subres(
    pot: &Potentials,
    point: &CurvePoint,
    phi0: &RatFunc,
    basis: &CentralizerBasis,
    subres: &[SubresultantPair; 3],
) -> Result<VerificationReport> {
    let l = pot.operator();
    let right = monic_degree_one(phi0);
    let cofactor_identity = &cofactor(pot, phi0) * &right == shift(&l, &point.lambda0);
    let a1_divides = shift(&basis.a1, &point.mu0)
        .right_divmod(&right)?
        .1
        .is_zero();
    let a2_divides = shift(&basis.a2, &point.gamma0)
        .right_divmod(&right)?
        .1
        .is_zero();
    let p = point.tuple();
    let mut ratios_agree = true;
    for s in subres {
        let den = s.phi1.eval_point(&p);
        if den.is_zero() {
            ratios_agree = false;
            break;
        }
        if s.phi0.eval_point(&p).checked_div(&den)? != *phi0 {
            ratios_agree = false;
            break;
        }
    }
    Ok(VerificationReport {
        cofactor_identity,
        a1_divides,
        a2_divides,
        ratios_agree,
    })
}

/// Runs all factorization checks for a claimed phi0 at a curve point.
pub fn verify_spectral_factorization(
    pot: &Potentials,
    point: &CurvePoint,
    phi0: &RatFunc,
    basis: &CentralizerBasis,
) -> Result<VerificationReport> {
    let l = pot.operator();
    let subres = curve_subresultants(&l, &basis.a1, &basis.a2)?;
    verify_with_subres(pot, point, phi0, basis, &subres)
}

/// Output of the factorization pipeline: the curve ideal, the chosen point,
/// and the verified factors of L - lambda0.
#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub ideal: SpectralCurve,
    pub basis: CentralizerBasis,
    pub point: CurvePoint,
    pub phi0: RatFunc,
    pub right_factor: DiffOp,
    pub quotient: DiffOp,
    pub checks: VerificationReport,
    pub verified: bool,
}

/// How the curve point for the factorization is acquired.
#[derive(Debug, Clone)]
pub enum SpfTarget {
    /// Search rational points over this lambda0.
    Lambda0(Rat),
    /// Evaluate a parametrization at tau0.
    Tau { param: Parametrization, tau0: Rat },
}

/// Outcome of the spectral factorization pipeline.
#[derive(Debug, Clone)]
pub enum SpfOutcome {
    Factored(Box<FactorizationResult>),
    /// The curve ideal is not prime; no factorization is attempted.
    NotReducible { curve: SpectralCurve },
    /// The requested point lies in the bad set Z.
    BadPoint {
        curve: SpectralCurve,
        point: CurvePoint,
        z: ZReport,
    },
    /// No rational curve point exists over the requested lambda0.
    NoRationalPoint { curve: SpectralCurve, lambda0: Rat },
}

impl SpfOutcome {
    /// The diagnostic message for non-factoring outcomes.
    pub fn diagnostic(&self) -> Option<&'static str> {
        match self {
            SpfOutcome::Factored(_) => None,
            SpfOutcome::NotReducible { .. } => Some("L is not geometrically reducible"),
            SpfOutcome::BadPoint { .. } => {
                Some("a spectral factorization of L-lambda0 cannot be obtained")
            }
            SpfOutcome::NoRationalPoint { .. } => {
                Some("no rational point over lambda0; supply a parametrization and tau0")
            }
        }
    }
}

/// The spectral factorization pipeline: centralizer basis, curve, primality
/// gate, point acquisition, Z gate, then phi0 and the factor pair.
pub fn spf(pot: &Potentials, target: &SpfTarget, n_cap: usize) -> Result<SpfOutcome> {
    let l = pot.operator();
    let basis = centralizer_basis(pot, n_cap)?;
    let curve = spectral_curve(&l, &basis)?;
    if let Verdict::NotPrime { .. } = curve.verdict {
        return Ok(SpfOutcome::NotReducible { curve });
    }
    let point = match target {
        SpfTarget::Lambda0(lambda0) => match point_from_lambda(&curve, lambda0)? {
            Some(p) => p,
            None => {
                return Ok(SpfOutcome::NoRationalPoint {
                    curve,
                    lambda0: lambda0.clone(),
                })
            }
        },
        SpfTarget::Tau { param, tau0 } => point_from_tau(param, &curve, tau0)?,
    };
    let subres = curve_subresultants(&l, &basis.a1, &basis.a2)?;
    let z = z_membership(&point, &curve, &subres);
    if z.in_z {
        return Ok(SpfOutcome::BadPoint { curve, point, z });
    }
    let p = point.tuple();
    let phi0 = subres[0]
        .phi0
        .eval_point(&p)
        .checked_div(&subres[0].phi1.eval_point(&p))?;
    let right_factor = monic_degree_one(&phi0);
    let (quotient, rem) = shift(&l, &point.lambda0).right_divmod(&right_factor)?;
    let checks = verify_with_subres(pot, &point, &phi0, &basis, &subres)?;
    let verified = rem.is_zero() && checks.all();
    Ok(SpfOutcome::Factored(Box::new(FactorizationResult {
        ideal: curve,
        basis,
        point,
        phi0,
        right_factor,
        quotient,
        checks,
        verified,
    })))
}

/// Point request for the planar fallback, which only uses the (L, A1) pair.
#[derive(Debug, Clone)]
pub enum PlanarPoint {
    LambdaMu(Rat, Rat),
    /// Two-component parametrization tau -> (lambda, mu).
    Tau { param: [UPoly; 2], tau0: Rat },
}

/// Factorization through the planar curve f1 alone.
#[derive(Debug, Clone)]
pub struct PlanarFactorization {
    pub f1: MPoly3,
    pub lambda0: Rat,
    pub mu0: Rat,
    pub phi0: RatFunc,
    pub right_factor: DiffOp,
    pub quotient: DiffOp,
    /// Cofactor identity and A1-divisibility; the remaining pipeline checks
    /// need the full curve and do not apply here.
    pub cofactor_identity: bool,
    pub a1_divides: bool,
    pub verified: bool,
}

/// Factorization of L - lambda0 from the (L, A1) subresultant alone.  Works
/// at every planar point where phi_{1,1} does not vanish, including singular
/// points of the spatial curve.
pub fn planar_factor(
    pot: &Potentials,
    a1: &DiffOp,
    point: &PlanarPoint,
) -> Result<PlanarFactorization> {
    let l = pot.operator();
    if !a1.commutator(&l).is_zero() {
        return Err(Error::PreconditionViolated("a1 does not commute with L"));
    }
    let f1 = diff_resultant(&l, CurveVar::Lambda, a1, CurveVar::Mu)?
        .sign_normalized(CurveVar::Lambda);
    let (lambda0, mu0) = match point {
        PlanarPoint::LambdaMu(lambda0, mu0) => (lambda0.clone(), mu0.clone()),
        PlanarPoint::Tau { param, tau0 } => (param[0].eval(tau0), param[1].eval(tau0)),
    };
    let at = (lambda0.clone(), mu0.clone(), Rat::zero());
    if !f1.eval_point(&at).is_zero() {
        return Err(Error::NotOnCurve);
    }
    let sub = first_subresultant(&l, CurveVar::Lambda, a1, CurveVar::Mu)?;
    let den = sub.phi1.eval_point(&at);
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let phi0 = sub.phi0.eval_point(&at).checked_div(&den)?;
    let right_factor = monic_degree_one(&phi0);
    let shifted = shift(&l, &lambda0);
    let (quotient, rem) = shifted.right_divmod(&right_factor)?;
    let cofactor_identity = &cofactor(pot, &phi0) * &right_factor == shifted;
    let a1_divides = shift(a1, &mu0).right_divmod(&right_factor)?.1.is_zero();
    let verified = rem.is_zero() && cofactor_identity && a1_divides;
    Ok(PlanarFactorization {
        f1,
        lambda0,
        mu0,
        phi0,
        right_factor,
        quotient,
        cofactor_identity,
        a1_divides,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boussinesq::solve_constants;
    use crate::boussinesq::Branch;
    use crate::diffop::operator_poly_eval;
    use crate::rat::{rat, rat_int};

    /// c / x^k
    fn over_x(c: i64, k: usize) -> RatFunc {
        RatFunc::new(UPoly::constant(rat_int(c)), UPoly::monomial(k, rat_int(1)))
    }

    fn pots_order45(h: i64) -> Potentials {
        Potentials::from_u(&over_x(12, 3) + &RatFunc::from_int(h), over_x(-6, 2))
    }

    fn pots_order48(h: i64) -> Potentials {
        Potentials::from_u(&over_x(15, 3) + &RatFunc::from_int(h), over_x(-15, 2))
    }

    fn lam_minus(h: i64) -> MPoly3 {
        &MPoly3::lambda() - &MPoly3::from_int(h)
    }

    fn mp(terms: &[((u32, u32, u32), RatFunc)]) -> MPoly3 {
        let mut out = MPoly3::zero();
        for (m, c) in terms {
            out = &out + &MPoly3::term(*m, c.clone());
        }
        out
    }

    fn up_to_common_sign(a0: &MPoly3, a1: &MPoly3, e0: &MPoly3, e1: &MPoly3) -> bool {
        (a0 == e0 && a1 == e1) || (*a0 == -e0 && *a1 == -e1)
    }

    /// Closed form of phi0 for the order-(4,5) potentials.
    fn phi0_order45(tau: &Rat) -> RatFunc {
        let t2 = tau * tau;
        let t3 = &t2 * tau;
        let num = UPoly::from_coeffs(vec![
            rat_int(4),
            tau.clone() * rat_int(-4),
            t2.clone() * rat_int(2),
            -t3,
        ]);
        let den = UPoly::from_coeffs(vec![
            Rat::zero(),
            rat_int(2),
            tau.clone() * rat_int(-2),
            t2,
        ]);
        RatFunc::new(num, den)
    }

    /// Closed form of phi0 for the planar fallback of the order-(4,8) case.
    fn phi0_planar(tau: &Rat) -> RatFunc {
        let t2 = tau * tau;
        let t3 = &t2 * tau;
        let t4 = &t3 * tau;
        let num = UPoly::from_coeffs(vec![
            rat_int(30),
            tau.clone() * rat_int(30),
            t2.clone() * rat_int(15),
            t3.clone() * rat_int(5),
            t4,
        ]);
        let den = UPoly::from_coeffs(vec![
            Rat::zero(),
            rat_int(10),
            tau.clone() * rat_int(10),
            t2 * rat_int(5),
            t3,
        ]);
        RatFunc::new(num, den)
    }

    fn order45_param(h: i64) -> Parametrization {
        // tau -> (tau^3 + h, tau^4, tau^5)
        Parametrization::new([
            &UPoly::monomial(3, rat_int(1)) + &UPoly::constant(rat_int(h)),
            UPoly::monomial(4, rat_int(1)),
            UPoly::monomial(5, rat_int(1)),
        ])
    }

    #[test]
    fn curve_of_order45_basis() {
        for h in [0, 2] {
            let pot = pots_order45(h);
            let basis = centralizer_basis(&pot, 5).unwrap();
            let curve = spectral_curve(&pot.operator(), &basis).unwrap();
            assert_eq!(curve.f1, &lam_minus(h).pow(4) - &MPoly3::mu().pow(3));
            assert_eq!(curve.f2, &lam_minus(h).pow(5) - &MPoly3::gamma().pow(3));
            assert_eq!(curve.f3, &MPoly3::gamma().pow(4) - &MPoly3::mu().pow(5));
            assert_eq!(curve.orders, (3, 4, 5));
            assert_eq!(curve.verdict, Verdict::HeuristicallyPrime);
        }
    }

    #[test]
    fn curve_of_order48_basis_is_not_prime() {
        let h = 3;
        let pot = pots_order48(h);
        let basis = centralizer_basis(&pot, 5).unwrap();
        // The order-8 generator is the square of the order-4 one.
        assert_eq!(basis.a2, &basis.a1 * &basis.a1);
        let curve = spectral_curve(&pot.operator(), &basis).unwrap();
        assert_eq!(curve.f1, &lam_minus(h).pow(4) - &MPoly3::mu().pow(3));
        assert_eq!(curve.f2, &lam_minus(h).pow(8) - &MPoly3::gamma().pow(3));
        let planar = &MPoly3::gamma() - &MPoly3::mu().pow(2);
        assert_eq!(curve.f3, planar.pow(4));
        match &curve.verdict {
            Verdict::NotPrime { certificate } => assert_eq!(*certificate, planar),
            v => panic!("expected NotPrime, got {v:?}"),
        }
    }

    #[test]
    fn degenerate_basis_gives_coprime_curve() {
        let pot = Potentials::from_u(RatFunc::zero(), RatFunc::zero());
        let basis = centralizer_basis(&pot, 5).unwrap();
        let curve = spectral_curve(&pot.operator(), &basis).unwrap();
        assert_eq!(curve.f1, &MPoly3::lambda() - &MPoly3::mu().pow(3));
        assert_eq!(
            curve.f2,
            &MPoly3::lambda().pow(2) - &MPoly3::gamma().pow(3)
        );
        assert_eq!(curve.f3, &MPoly3::gamma() - &MPoly3::mu().pow(2));
        assert_eq!(curve.verdict, Verdict::HeuristicallyPrime);
    }

    #[test]
    fn printed_subresultant_minors() {
        let h = 2;
        let pot = pots_order45(h);
        let basis = centralizer_basis(&pot, 5).unwrap();
        let l = pot.operator();
        let subres = curve_subresultants(&l, &basis.a1, &basis.a2).unwrap();

        // phi_{1,0} = (h - lambda) mu - 4 mu/x^3 + 8 (lambda - h)/x^4.
        let e0 = mp(&[
            ((1, 1, 0), RatFunc::from_int(-1)),
            ((0, 1, 0), &RatFunc::from_int(h) - &over_x(4, 3)),
            ((1, 0, 0), over_x(8, 4)),
            ((0, 0, 0), over_x(-8 * h, 4)),
        ]);
        // phi_{1,1} = (lambda - h)^2 - 2 mu/x^2 + 4 (lambda - h)/x^3.
        let e1 = mp(&[
            ((2, 0, 0), RatFunc::from_int(1)),
            ((1, 0, 0), &RatFunc::from_int(-2 * h) + &over_x(4, 3)),
            ((0, 1, 0), over_x(-2, 2)),
            ((0, 0, 0), &RatFunc::from_int(h * h) - &over_x(4 * h, 3)),
        ]);
        assert!(up_to_common_sign(
            &subres[0].phi0,
            &subres[0].phi1,
            &e0,
            &e1
        ));

        // phi_{3,0} = -gamma mu^2 - 4 gamma^2/x^3 + 8 gamma mu/x^4.
        let e0 = mp(&[
            ((0, 2, 1), RatFunc::from_int(-1)),
            ((0, 0, 2), over_x(-4, 3)),
            ((0, 1, 1), over_x(8, 4)),
        ]);
        // phi_{3,1} = mu^3 - 2 gamma^2/x^2 + 4 gamma mu/x^3.
        let e1 = mp(&[
            ((0, 3, 0), RatFunc::from_int(1)),
            ((0, 0, 2), over_x(-2, 2)),
            ((0, 1, 1), over_x(4, 3)),
        ]);
        assert!(up_to_common_sign(
            &subres[2].phi0,
            &subres[2].phi1,
            &e0,
            &e1
        ));
    }

    #[test]
    fn parametrization_and_bad_set() {
        let h = 2;
        let pot = pots_order45(h);
        let basis = centralizer_basis(&pot, 5).unwrap();
        let l = pot.operator();
        let curve = spectral_curve(&l, &basis).unwrap();
        let param = order45_param(h);
        param.validate(&curve).unwrap();

        // Flipping the gamma component leaves the curve.
        let flipped = Parametrization::new([
            param.components[0].clone(),
            param.components[1].clone(),
            param.components[2].scale(&rat_int(-1)),
        ]);
        assert_eq!(flipped.validate(&curve), Err(Error::NotOnCurve));

        let subres = curve_subresultants(&l, &basis.a1, &basis.a2).unwrap();
        // tau0 = 0 hits the singular point (h, 0, 0).
        let p = point_from_tau(&param, &curve, &Rat::zero()).unwrap();
        assert_eq!(p.tuple(), (rat_int(h), rat_int(0), rat_int(0)));
        let z = z_membership(&p, &curve, &subres);
        assert!(z.in_z && z.singular);

        // Any tau0 != 0 stays off Z, with a rank-2 Jacobian.
        for tau0 in [rat_int(1), rat_int(-1), rat(1, 2)] {
            let p = point_from_tau(&param, &curve, &tau0).unwrap();
            assert!(p.on_curve(&curve));
            let z = z_membership(&p, &curve, &subres);
            assert!(!z.in_z);
            assert_eq!(jacobian_rank_at(&curve, &p), 2);
        }
    }

    #[test]
    fn rational_point_search() {
        let pot = pots_order45(0);
        let basis = centralizer_basis(&pot, 5).unwrap();
        let curve = spectral_curve(&pot.operator(), &basis).unwrap();
        let p = point_from_lambda(&curve, &rat_int(1)).unwrap().unwrap();
        assert_eq!(p.tuple(), (rat_int(1), rat_int(1), rat_int(1)));
        // mu^3 = 16 has no rational solution.
        assert_eq!(point_from_lambda(&curve, &rat_int(2)).unwrap(), None);
        // lambda0 = tau0^3 at tau0 = 3/2.
        let lam = rat(27, 8);
        let p = point_from_lambda(&curve, &lam).unwrap().unwrap();
        assert_eq!(p.mu0, rat(81, 16));
        assert_eq!(p.gamma0, rat(243, 32));
    }

    #[test]
    fn spf_matches_closed_form() {
        for (h, tau0) in [(0, rat_int(1)), (2, rat_int(-1)), (0, rat_int(2))] {
            let pot = pots_order45(h);
            let target = SpfTarget::Tau {
                param: order45_param(h),
                tau0: tau0.clone(),
            };
            let out = spf(&pot, &target, 5).unwrap();
            let SpfOutcome::Factored(res) = out else {
                panic!("expected factorization");
            };
            assert_eq!(res.phi0, phi0_order45(&tau0));
            assert!(res.verified);
            let l = pot.operator();
            assert_eq!(
                &res.quotient * &res.right_factor,
                shift(&l, &res.point.lambda0)
            );
            // Right factor agrees with the Euclidean right gcd.
            let gcd = shift(&l, &res.point.lambda0)
                .right_gcd(&shift(&res.basis.a1, &res.point.mu0))
                .unwrap();
            assert_eq!(gcd, res.right_factor);
        }
    }

    #[test]
    fn spf_accepts_lambda_targets() {
        let pot = pots_order45(0);
        let out = spf(&pot, &SpfTarget::Lambda0(rat_int(1)), 5).unwrap();
        let SpfOutcome::Factored(res) = out else {
            panic!("expected factorization");
        };
        assert_eq!(res.phi0, phi0_order45(&rat_int(1)));

        let out = spf(&pot, &SpfTarget::Lambda0(rat_int(2)), 5).unwrap();
        assert!(matches!(out, SpfOutcome::NoRationalPoint { .. }));
        assert_eq!(
            out.diagnostic(),
            Some("no rational point over lambda0; supply a parametrization and tau0")
        );
    }

    #[test]
    fn spf_gates() {
        // Non-prime curve: refused before any point work.
        let out = spf(&pots_order48(0), &SpfTarget::Lambda0(rat_int(1)), 5).unwrap();
        assert!(matches!(out, SpfOutcome::NotReducible { .. }));
        assert_eq!(out.diagnostic(), Some("L is not geometrically reducible"));

        // Singular point: refused by the Z gate.
        let pot = pots_order45(0);
        let target = SpfTarget::Tau {
            param: order45_param(0),
            tau0: Rat::zero(),
        };
        let out = spf(&pot, &target, 5).unwrap();
        assert!(matches!(out, SpfOutcome::BadPoint { .. }));
        assert_eq!(
            out.diagnostic(),
            Some("a spectral factorization of L-lambda0 cannot be obtained")
        );
    }

    #[test]
    fn verification_rejects_perturbed_phi0() {
        let pot = pots_order45(0);
        let basis = centralizer_basis(&pot, 5).unwrap();
        let curve = spectral_curve(&pot.operator(), &basis).unwrap();
        let p = point_from_lambda(&curve, &rat_int(1)).unwrap().unwrap();
        let good = phi0_order45(&rat_int(1));
        let report = verify_spectral_factorization(&pot, &p, &good, &basis).unwrap();
        assert!(report.all());
        let bad = &good + &RatFunc::one();
        let report = verify_spectral_factorization(&pot, &p, &bad, &basis).unwrap();
        assert!(!report.all());
        assert!(!report.a1_divides);
    }

    #[test]
    fn planar_factor_matches_closed_form() {
        let pot = pots_order48(0);
        let a1 = {
            let c = solve_constants(&pot, 1, Branch::One).unwrap().unwrap();
            crate::boussinesq::assemble_p(&pot, 4, &c).unwrap()
        };
        // tau -> (h - tau^3, tau^4) with h = 0.
        let param = [UPoly::monomial(3, rat_int(-1)), UPoly::monomial(4, rat_int(1))];
        for tau0 in [rat_int(0), rat_int(1), rat_int(2)] {
            let out = planar_factor(
                &pot,
                &a1,
                &PlanarPoint::Tau {
                    param: param.clone(),
                    tau0: tau0.clone(),
                },
            )
            .unwrap();
            assert_eq!(out.phi0, phi0_planar(&tau0));
            assert!(out.verified);
        }
        // The singular point tau0 = 0 still factors: phi0 = 3/x.
        let out = planar_factor(
            &pot,
            &a1,
            &PlanarPoint::LambdaMu(rat_int(0), rat_int(0)),
        )
        .unwrap();
        assert_eq!(out.phi0, over_x(3, 1));

        // Printed minors of the (L, A1) pair, up to a common sign.
        let h = 0;
        let l = pot.operator();
        let sub = first_subresultant(&l, CurveVar::Lambda, &a1, CurveVar::Mu).unwrap();
        let e0 = mp(&[
            ((1, 1, 0), RatFunc::from_int(-1)),
            ((0, 1, 0), &RatFunc::from_int(h) - &over_x(5, 3)),
            ((1, 0, 0), over_x(20, 4)),
            ((0, 0, 0), &over_x(-20 * h, 4) - &over_x(300, 7)),
        ]);
        let e1 = mp(&[
            ((2, 0, 0), RatFunc::from_int(1)),
            ((1, 0, 0), RatFunc::from_int(-2 * h)),
            ((0, 1, 0), over_x(-5, 2)),
            ((0, 0, 0), &RatFunc::from_int(h * h) - &over_x(100, 6)),
        ]);
        assert!(up_to_common_sign(&sub.phi0, &sub.phi1, &e0, &e1));
    }

    #[test]
    fn generators_annihilate_the_basis() {
        let pot = pots_order45(0);
        let basis = centralizer_basis(&pot, 5).unwrap();
        let l = pot.operator();
        let curve = spectral_curve(&l, &basis).unwrap();
        assert!(operator_poly_eval(&curve.f1, &l, &basis.a1, &basis.a2).is_zero());
    }
}
