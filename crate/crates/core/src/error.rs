use crate::rat::Rat;

/// Errors shared by every module of the crate.
///
/// Contract violations that a caller can trigger with ordinary inputs are
/// reported through this enum; violations of internal invariants panic.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,

    /// The integrand is rational but its antiderivative is not: the remaining
    /// proper part has a squarefree denominator with nonzero residues.
    #[error("antiderivative has a logarithmic part{}", match .level {
        Some((n, i)) => format!(" (hierarchy level n={n}, branch {i})"),
        None => String::new(),
    })]
    LogarithmicPart { level: Option<(usize, u8)> },

    #[error("evaluation at a pole (x = {at})")]
    Pole { at: Rat },

    #[error("right division by the zero operator")]
    DivisionByZeroOperator,

    #[error("operator evaluation requires a polynomial with constant coefficients")]
    NonConstantCoefficient,

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("matrix is not square")]
    NonSquare,

    /// A differential resultant came out x-dependent.  The construction
    /// guarantees x-freeness, so this marks an internal inconsistency.
    #[error("differential resultant is not free of x")]
    NotXFree,

    #[error("operator order too small for a first subresultant")]
    OrderTooSmall,

    #[error("order {0} is a multiple of 3 and has no hierarchy level")]
    BadOrder(usize),

    #[error("no commuting operator of order 3n+{branch} found for n <= {cap}")]
    NoCentralizerFound { branch: u8, cap: usize },

    #[error("point does not lie on the spectral curve")]
    NotOnCurve,

    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),

    #[error("subresultant denominator vanishes at the requested point")]
    ZeroDenominator,

    /// An expression handed to the hierarchy integrator was not a total
    /// x-derivative of any differential polynomial.
    #[error("expression is not a total derivative")]
    NotTotalDerivative,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
