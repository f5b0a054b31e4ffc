//! Shared fixtures for the pipeline benchmarks.

use specfact::rat::rat_int;
use specfact::{Potentials, RatFunc, UPoly};

fn over_x(c: i64, k: usize) -> RatFunc {
    RatFunc::new(UPoly::constant(rat_int(c)), UPoly::monomial(k, rat_int(1)))
}

/// u0 = 12/x^3, u1 = -6/x^2: the order-(4,5) centralizer family at h = 0.
pub fn order45_potentials() -> Potentials {
    Potentials::from_u(over_x(12, 3), over_x(-6, 2))
}

/// u0 = 15/x^3, u1 = -15/x^2: the planar-degeneration family at h = 0.
pub fn order48_potentials() -> Potentials {
    Potentials::from_u(over_x(15, 3), over_x(-15, 2))
}
