//! Exact integer and rational linear algebra.

mod form;
mod matrix;
mod scalar;

pub use form::{determinant, kernel_sincerity, psd_classify, Definiteness, PositivityReport, SymmetricForm};
pub use matrix::{check_skew_symmetrizable, find_symmetrizer, ExchangeMatrix, SkewViolation};
pub use scalar::ExactScalar;
