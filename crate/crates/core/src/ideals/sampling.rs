//! Seeded points of the join `Ĵ⁰(σ_r, L^S)`.

use super::support::Support;
use crate::exact::{ExactMatrix, ExactScalar};
use crate::rng::{seeded, small_rational};

/// The pieces of a join point `C·D + Σ_S e_ij E_ij`.
#[derive(Clone, Debug)]
pub struct JoinSample {
    pub c: ExactMatrix,
    pub d: ExactMatrix,
    /// Perturbations in the iteration order of the support.
    pub e: Vec<ExactScalar>,
    pub matrix: ExactMatrix,
}

pub fn sample_join_parts(n: usize, r: usize, s: &Support, seed: u64) -> JoinSample {
    assert!(r <= n, "r = {r} exceeds n = {n}");
    assert_eq!(s.n(), n, "support and ambient size differ");
    let mut rng = seeded(seed);
    let c = ExactMatrix::from_fn(n, r, |_, _| small_rational(&mut rng));
    let d = ExactMatrix::from_fn(r, n, |_, _| small_rational(&mut rng));
    let e: Vec<ExactScalar> = s.iter().map(|_| small_rational(&mut rng)).collect();
    let mut matrix = if r == 0 { ExactMatrix::zeros(n, n) } else { &c * &d };
    for ((i, j), x) in s.iter().zip(&e) {
        let v = matrix.get(i - 1, j - 1) + x;
        matrix.set(i - 1, j - 1, v).expect("in range");
    }
    JoinSample { c, d, e, matrix }
}

/// A rank-`≤ r` matrix plus seeded perturbations on `S`.
pub fn sample_join_point(n: usize, r: usize, s: &Support, seed: u64) -> ExactMatrix {
    sample_join_parts(n, r, s, seed).matrix
}

/// A seeded matrix with independent entries, generic for the tests here.
pub fn sample_generic(n: usize, seed: u64) -> ExactMatrix {
    sample_join_point(n, n, &Support::empty(n), seed)
}
