use thiserror::Error;

use crate::arith::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a unit of Q")]
    NotAUnit,

    #[error("unsupported power class exponent {0}; expected 2, 4 or 6")]
    UnsupportedExponent(u32),

    #[error("could not factor cofactor {0}")]
    Unfactored(String),

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("zero polynomial or rational function")]
    ZeroPolynomial,

    #[error("pole at {at} (cusp candidate)")]
    Pole { at: Rational },

    #[error("singular model: discriminant is zero")]
    SingularModel,

    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),

    #[error("model is singular; take squarefree part first")]
    NotSquarefree,

    #[error("isogeny level {0} is not in the supported set {1}")]
    UnsupportedLevel(u32, &'static str),

    #[error("{0} is not the x-coordinate of a rational kernel point")]
    InvalidKernel(Rational),

    #[error("Velu step of degree {0} is not supported")]
    UnsupportedDegree(u32),

    #[error("level {0} has no asserted finite point set")]
    NoPointSet(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("data check failed: {0}")]
    DataCheck(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
