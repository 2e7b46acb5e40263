//! Exact rational scalars and dense exact linear algebra.
//!
//! Everything here is pure and immutable after construction; all decision
//! procedures in the crate reduce to these primitives, so no floating point
//! appears anywhere.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{ExactLinError, Matrix};
pub use scalar::{Scalar, ScalarParseError};
pub use subspace::Subspace;
