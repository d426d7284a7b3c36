use super::{Certificate, RigidityBound};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, IndexSet};

fn greedy(sets: &[u64]) -> usize {
    let mut unhit: Vec<u64> = sets.to_vec();
    let mut count = 0;
    while !unhit.is_empty() {
        let p = (0..64u32)
            .max_by_key(|&p| (unhit.iter().filter(|&&s| s >> p & 1 == 1).count(), std::cmp::Reverse(p)))
            .expect("nonempty range");
        unhit.retain(|&s| s >> p & 1 == 0);
        count += 1;
    }
    count
}

/// Size of a maximal family of pairwise disjoint sets, a lower bound on any
/// hitting set.
fn packing_bound(sets: &[u64]) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    for &s in sets {
        if s & used == 0 {
            used |= s;
            count += 1;
        }
    }
    count
}

fn branch(unhit: &[u64], chosen: usize, best: &mut usize) {
    if unhit.is_empty() {
        *best = (*best).min(chosen);
        return;
    }
    if chosen + packing_bound(unhit) >= *best {
        return;
    }
    let pivot = *unhit.iter().min_by_key(|s| s.count_ones()).expect("nonempty");
    let mut bits = pivot;
    while bits != 0 {
        let p = bits.trailing_zeros();
        bits &= bits - 1;
        let rest: Vec<u64> = unhit.iter().copied().filter(|&s| s >> p & 1 == 0).collect();
        branch(&rest, chosen + 1, best);
        if chosen + 1 >= *best {
            return;
        }
    }
}

/// `min(h, cap)` where `h` is the minimum number of bit positions meeting
/// every set. Exact branch and bound with the greedy value as incumbent.
pub fn min_hitting_set(sets: &[u64], cap: usize) -> usize {
    if sets.contains(&0) {
        return cap;
    }
    let mut sets: Vec<u64> = sets.to_vec();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut minimal: Vec<u64> = Vec::with_capacity(sets.len());
    for &s in &sets {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let mut best = greedy(&minimal).min(cap);
    branch(&minimal, 0, &mut best);
    best
}

/// `Rig_r(M) ≥ h`: changing fewer than `h` entries leaves some nonzero
/// `(r+1)`-minor untouched.
pub fn lower_hitting(m: &ExactMatrix, r: usize, s_max: usize) -> Result<RigidityBound> {
    let (rows, cols) = (m.nrows(), m.ncols());
    if rows > 6 || cols > 6 {
        return Err(Error::Guard(format!("{rows}x{cols}: minor enumeration limited to n ≤ 6")));
    }
    let mut b = RigidityBound::trivial(m, r);
    if r >= rows.min(cols) {
        return Ok(b);
    }
    let mut sets = Vec::new();
    for i in IndexSet::subsets(rows, r + 1) {
        for j in IndexSet::subsets(cols, r + 1) {
            if !m.minor(&i, &j)?.is_zero() {
                let mut mask = 0u64;
                for a in i.iter() {
                    for c in j.iter() {
                        mask |= 1 << ((a - 1) * cols + (c - 1));
                    }
                }
                sets.push(mask);
            }
        }
    }
    let cap = s_max + 1;
    let h = if sets.is_empty() { 0 } else { min_hitting_set(&sets, cap) };
    b.lower = h;
    b.lower_certificates.push(Certificate::Hitting { minors: sets.len(), min_hitting_set: h, capped: h == cap });
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::dft;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn brute(sets: &[u64], universe: u32) -> usize {
        (0..=universe as usize)
            .find(|&k| {
                (0..universe).combinations(k).any(|c| {
                    let mask = c.iter().fold(0u64, |a, &p| a | 1 << p);
                    sets.iter().all(|&s| s & mask != 0)
                })
            })
            .expect("the full universe hits everything")
    }

    #[test]
    fn identity_needs_n_minus_one() {
        for n in 2..=5 {
            let b = lower_hitting(&ExactMatrix::identity(n), 1, 10).unwrap();
            assert_eq!(b.lower, n - 1);
        }
    }

    #[test]
    fn all_ones_is_rank_one() {
        let m = ExactMatrix::from_fn(4, 4, |_, _| 1.into());
        assert_eq!(lower_hitting(&m, 1, 5).unwrap().lower, 0);
    }

    #[test]
    fn dft5_r3() {
        let b = lower_hitting(&dft(5), 3, 5).unwrap();
        assert_eq!(b.lower, 3);
        let cap = lower_hitting(&dft(5), 3, 1).unwrap();
        assert_eq!(cap.lower, 2);
        assert!(matches!(cap.lower_certificates[0], Certificate::Hitting { capped: true, .. }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_brute_force(sets in prop::collection::vec(1u64..(1 << 10), 1..12)) {
            prop_assert_eq!(min_hitting_set(&sets, 100), brute(&sets, 10));
        }
    }
}
