//! Minor polynomials, supports and the ideals of `R̂[n, r, s]`.

pub mod cycles;
pub mod dimension;
pub mod generators;
pub mod poly;
pub mod sampling;
pub mod support;

pub use cycles::{classify_r1_component, R1Component};
pub use dimension::{expected_join_dim, join_dimension, JoinDimension};
pub use generators::{gen_three_entry, gen_three_minor, gen_two_minor, nm2_equations, Nm2Case};
pub use poly::{MinorPolynomial, Representation};
pub use support::Support;
