//! Exact arithmetic for third-order differential operators L = d^3 + u1 d + u0
//! with rational-function coefficients: centralizer generators, the associated
//! spectral curve, and spectral factorizations L - lambda0 = N (d + phi0).
//!
//! Everything is computed over Q(x) with arbitrary-precision rationals; no
//! floating point and no truncation anywhere.

mod error;
pub mod boussinesq;
pub mod diffop;
pub mod hermite;
mod hierarchy;
pub mod mpoly;
pub mod resultant;
pub mod rat;
pub mod ratfunc;
pub mod spectral;
pub mod upoly;

pub use error::{Error, Result};
pub use boussinesq::{
    assemble_p, bsq_recursion, bsq_residual, centralizer_basis, solve_constants, Branch,
    BsqLevel, CentralizerBasis, ConstVec, Potentials,
};
pub use diffop::{operator_poly_eval, DiffOp};
pub use hermite::{rational_antiderivative, squarefree_decomposition, SquarefreeFactor};
pub use mpoly::{squarefree_test_const, CurveVar, MPoly, MPoly3, PolyMatrix, Squarefreeness};
pub use resultant::{
    diff_resultant, first_subresultant, sylvester_s0, sylvester_s1, SubresultantPair,
};
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use spectral::{
    curve_subresultants, jacobian_rank_at, planar_factor, point_from_lambda, point_from_tau,
    points_at_lambda, spectral_curve, spf, verify_spectral_factorization, z_membership, CurvePoint,
    FactorizationResult, Parametrization, PlanarFactorization, PlanarPoint, SpectralCurve,
    SpfOutcome, SpfTarget, Verdict, VerificationReport, ZReport,
};
pub use upoly::UPoly;
