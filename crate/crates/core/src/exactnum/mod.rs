//! Exact scalars: rationals, polynomials and rational functions over Q, and
//! exact linear solving over those rings.

pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use linalg::{bareiss_solve, inverse, mat_solve, poly_solve, FieldScalar, Matrix, Scalar};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("rational function has a pole at t = {0}")]
    Pole(String),
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch")]
    DimensionMismatch,
}
