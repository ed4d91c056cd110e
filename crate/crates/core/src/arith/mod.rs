//! Exact arithmetic over `Q` and small-degree number fields `Q(γ)`.
//!
//! Rationals are `num_rational::BigRational`, always reduced with a positive
//! denominator. A [`NumberField`] is fixed by a monic integer polynomial of
//! degree at most 4 that is certified irreducible when the field is built, and
//! every [`FieldElement`] is a coefficient vector in the power basis
//! `1, γ, …, γ^(m-1)`.

mod field;
mod linalg;
mod matrix;
mod poly;

pub use field::{FieldElement, NumberField, MAX_DEGREE};
pub use linalg::{kernel, rank, solve, Scalar};
pub use matrix::{Mat2, Mat4, SquareMatrix};
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("field degree {0} outside the supported range 1..=4")]
    DegreeOutOfRange(usize),
    #[error("polynomial is reducible over Q, factor {}", Poly::from_ints(.witness))]
    Reducible { witness: Vec<i64> },
    #[error("matrix is singular")]
    Singular,
    #[error("elements belong to different fields")]
    FieldMismatch,
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
