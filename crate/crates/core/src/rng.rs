//! Seeded sampling of small nonzero rationals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::ExactScalar;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `±p/q` with `p, q ∈ 1..=7`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    let p: i64 = rng.gen_range(1..=7);
    let q: i64 = rng.gen_range(1..=7);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    ExactScalar::ratio(s * p, q)
}

/// Distinct positive rationals `p/q` with `p ≤ 10⁴`, `q ≤ 97`: a pool wide
/// enough that family parameters avoid accidental polynomial coincidences.
pub fn distinct_positive_rationals<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<ExactScalar> {
    let mut out: Vec<ExactScalar> = Vec::with_capacity(count);
    while out.len() < count {
        let p: i64 = rng.gen_range(1..=10_000);
        let q: i64 = rng.gen_range(1..=97);
        let x = ExactScalar::ratio(p, q);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}
