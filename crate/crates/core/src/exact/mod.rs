//! Exact scalars and dense linear algebra.

pub mod cyclotomic;
pub mod index;
pub mod json;
pub mod matrix;
pub mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, totient};
pub use index::IndexSet;
pub use matrix::ExactMatrix;
pub use scalar::ExactScalar;
