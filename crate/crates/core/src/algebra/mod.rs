//! Exact arithmetic: sparse multivariate polynomials over the rationals,
//! monomial orders, a text parser, determinants and resultants.

mod order;
mod parse;
mod polynomial;
mod resultant;
mod ring;
pub mod univariate;

pub use order::{MonomialOrder, WeightVector};
pub use parse::parse_polynomial;
pub use polynomial::{arith, ArithOp, Polynomial, WeightedDegree};
pub use resultant::{determinant, resultant};
pub use ring::{Monomial, Ring};

use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds `n/d` in lowest terms. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("both polynomials are constant in `{var}`")]
    BothConstantInVar { var: String },
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::UnknownVariable { .. } => "UnknownVariable",
            AlgebraError::SyntaxError { .. } => "SyntaxError",
            AlgebraError::NegativeExponent { .. } => "NegativeExponent",
            AlgebraError::RingMismatch { .. } => "RingMismatch",
            AlgebraError::NotDivisible => "NotDivisible",
            AlgebraError::ZeroPolynomial => "ZeroPolynomial",
            AlgebraError::BothConstantInVar { .. } => "BothConstantInVar",
            AlgebraError::InvalidWeights(_) => "InvalidWeights",
            AlgebraError::ResourceExceeded(_) => "ResourceExceeded",
        }
    }
}
