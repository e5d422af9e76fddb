//! Exact coefficient arithmetic: rationals, Laurent polynomials in `q, t`,
//! and reduced rational functions in `q, t`.

mod laurent;
mod poly;
mod ratfun;

pub use laurent::{QTCoeff, QTerm};
pub use ratfun::QTRatFun;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative exponent specialized at zero")]
    PoleAtZero,
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
