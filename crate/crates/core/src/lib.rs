//! Exact arithmetic for matrix rigidity: linear circuits, structured matrix
//! families, certificate equations for joins of determinantal varieties with
//! coordinate subspaces, rigidity bounds and degree formulas.

pub mod circuits;
pub mod degrees;
pub mod error;
pub mod families;
pub mod ideals;
pub mod exact;
pub mod rigidity;
pub mod rng;
pub mod selftest;

pub use error::{Error, Result};
pub use exact::{ExactMatrix, ExactScalar, IndexSet};
