//! Exact linear algebra over prime fields `GF(p)`.
//!
//! Matrices are dense and square. Spans of matrices are kept as reduced
//! row-echelon bases of their row-major vectorizations.

mod field;
mod file;
mod matrix;
mod minpoly;
mod span;

pub use field::PrimeField;
pub use file::{MatrixData, MatrixFile};
pub use matrix::FMatrix;
pub use minpoly::{min_poly, shift_to_invertible, MinPoly, Poly, ShiftCertificate};
pub use span::SpanBasis;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: GF({expected}) vs GF({got})")]
    FieldMismatch { expected: u64, got: u64 },
    #[error("field GF({p}) too small: need p > {degree}")]
    FieldTooSmall { p: u64, degree: usize },
    #[error("no invertible shift found")]
    NoShiftFound,
    #[error("bad matrix data: {0}")]
    BadData(String),
}
