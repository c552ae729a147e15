//! Error type shared by every module of the core crate.

use alloc::string::String;
use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("homothety ratio must be nonzero")]
    ZeroRatio,
    #[error("delta must be nonzero")]
    ZeroDelta,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrices are not similar: {left} versus {right}")]
    NotSimilar { left: String, right: String },
    #[error("polynomial does not annihilate the matrix")]
    AnnihilationFailure,
    #[error("p and q must be monic of degree 2: {0}")]
    BadPair(String),
    #[error("quotient mode needs p(0) q(0) != 0")]
    NonInvertibleConstant,
    #[error("norm form is degenerate")]
    DegenerateNorm,
    #[error("norm form is anisotropic")]
    AnisotropicNorm,
    #[error("beta is not a unit in the coefficient ring")]
    NonUnitBeta,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search exhausted after {tried} candidates")]
    SearchExhausted { tried: u64 },
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("certificate does not apply: {0}")]
    CertificateMismatch(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Result alias for the core crate.
pub type Result<T> = core::result::Result<T, Error>;
