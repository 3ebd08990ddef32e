//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision; there is no floating point in
//! this module or anything built on it.

mod group;
mod matrix;
mod smith;

use thiserror::Error;

pub use group::{tensor_product, tor_product, FgAbelianGroup};
pub use matrix::{rational_solve, trace, IntegerMatrix, Matrix, RationalMatrix};
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
}
