//! Cycle binomials: the hypersurface components of `R̂[n, 1, n² - 2n]`.

use std::ops::ControlFlow;

use itertools::Itertools;

use super::dimension::join_dimension;
use super::generators::{cycle_binomial, is_single_cycle};
use super::poly::MinorPolynomial;
use super::support::Support;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, ExactScalar, IndexSet};

/// One unordered pair of perfect matchings of a `k × k` block whose union is a
/// `2k`-cycle: `∏ x^{r_t}_{c_{σ1(t)}} - ∏ x^{r_t}_{c_{σ2(t)}}`, `σ2 = σ1∘τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub rows: IndexSet,
    pub cols: IndexSet,
    /// 0-based permutation of the columns for the first monomial.
    pub sigma1: Vec<usize>,
    /// 1-based images of the `k`-cycle.
    pub tau: Vec<usize>,
}

impl CycleWitness {
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    fn sigma2(&self) -> Vec<usize> {
        self.tau.iter().map(|&t| self.sigma1[t - 1]).collect()
    }

    /// Positions (1-based) of the two monomials.
    pub fn monomials(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let r = self.rows.as_slice();
        let c = self.cols.as_slice();
        let s2 = self.sigma2();
        let left = (0..self.k()).map(|t| (r[t], c[self.sigma1[t]])).collect();
        let right = (0..self.k()).map(|t| (r[t], c[s2[t]])).collect();
        (left, right)
    }

    pub fn binomial(&self, n: usize) -> MinorPolynomial {
        let cols: Vec<usize> = self.sigma1.iter().map(|&s| self.cols.as_slice()[s]).collect();
        cycle_binomial(n, self.rows.as_slice(), &cols, &self.tau).expect("enumerated cycles are valid")
    }

    /// Direct evaluation of the binomial.
    pub fn evaluate(&self, m: &ExactMatrix) -> ExactScalar {
        let (l, r) = self.monomials();
        let prod = |v: &[(usize, usize)]| {
            v.iter().fold(ExactScalar::one(), |acc, &(i, j)| &acc * m.get(i - 1, j - 1))
        };
        &prod(&l) - &prod(&r)
    }
}

/// The `k`-cycles of `S_k` in lexicographic order, 1-based images.
pub fn k_cycles(k: usize) -> Vec<Vec<usize>> {
    (1..=k).permutations(k).filter(|p| is_single_cycle(p)).collect()
}

/// Visits every cycle binomial on a `k × k` block of `Mat_n`, in
/// lexicographic order of `(rows, cols, σ1, τ)`, each unordered pair once.
pub fn for_each_cycle<B>(n: usize, k: usize, mut f: impl FnMut(&CycleWitness) -> ControlFlow<B>) -> Option<B> {
    let taus = k_cycles(k);
    let sigmas: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    for rows in IndexSet::subsets(n, k) {
        for cols in IndexSet::subsets(n, k) {
            for s1 in &sigmas {
                for tau in &taus {
                    let s2: Vec<usize> = tau.iter().map(|&t| s1[t - 1]).collect();
                    if *s1 >= s2 {
                        continue;
                    }
                    let w = CycleWitness {
                        rows: rows.clone(),
                        cols: cols.clone(),
                        sigma1: s1.clone(),
                        tau: tau.clone(),
                    };
                    if let ControlFlow::Break(b) = f(&w) {
                        return Some(b);
                    }
                }
            }
        }
    }
    None
}

/// Number of cycle binomials per `k = 2..=n`, by enumeration.
pub fn enumerate_cycle_counts(n: usize) -> Vec<(usize, u64)> {
    (2..=n)
        .map(|k| {
            let mut c = 0u64;
            for_each_cycle::<()>(n, k, |_| {
                c += 1;
                ControlFlow::Continue(())
            });
            (k, c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum R1Component {
    /// `S^c` contains a `2k`-cycle on the block `rows × cols` and the join is
    /// the hypersurface of its binomial.
    Cycle {
        k: usize,
        rows: IndexSet,
        cols: IndexSet,
        binomial: MinorPolynomial,
    },
    NotAComponent,
}

/// Walks the cycle formed by `entries` (two per row and column of the block),
/// returning rows `r_t` and columns `c_t` with edges `(r_t, c_t)` and
/// `(r_{t+1}, c_t)`, or `None` if the entries split into several cycles.
fn walk_cycle(entries: &[(usize, usize)], k: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let (mut rows, mut cols) = (Vec::with_capacity(k), Vec::with_capacity(k));
    let start = entries.iter().map(|p| p.0).min()?;
    let mut r = start;
    let mut prev_c: Option<usize> = None;
    for _ in 0..k {
        let c = entries
            .iter()
            .filter(|p| p.0 == r && Some(p.1) != prev_c)
            .map(|p| p.1)
            .min()?;
        let next = entries.iter().find(|p| p.1 == c && p.0 != r)?.0;
        rows.push(r);
        cols.push(c);
        prev_c = Some(c);
        r = next;
    }
    (r == start).then_some((rows, cols))
}

/// Locates the `2k`-cycle of `S^c` for `|S| = n² - 2n` and confirms by the
/// Jacobian rank at a seeded point that the join is a hypersurface.
pub fn classify_r1_component(s: &Support, seed: u64) -> Result<R1Component> {
    let n = s.n();
    if n < 2 || s.len() != n * n - 2 * n {
        return Err(Error::InvalidArgument(format!(
            "|S| = {}, expected n² - 2n = {}",
            s.len(),
            (n * n).saturating_sub(2 * n)
        )));
    }
    let comp = s.complement();
    let mut found = None;
    'search: for k in 2..=n {
        for rows in IndexSet::subsets(n, k) {
            for cols in IndexSet::subsets(n, k) {
                let inside: Vec<(usize, usize)> = comp
                    .iter()
                    .filter(|&(i, j)| rows.contains(i) && cols.contains(j))
                    .collect();
                if inside.len() != 2 * k {
                    continue;
                }
                let two_each = rows.iter().all(|i| inside.iter().filter(|p| p.0 == i).count() == 2)
                    && cols.iter().all(|j| inside.iter().filter(|p| p.1 == j).count() == 2);
                if !two_each {
                    continue;
                }
                if let Some(walk) = walk_cycle(&inside, k) {
                    found = Some((k, rows, cols, walk));
                    break 'search;
                }
            }
        }
    }
    let Some((k, rows, cols, (rseq, cseq))) = found else {
        return Ok(R1Component::NotAComponent);
    };
    if join_dimension(n, 1, s, seed).value != n * n - 1 {
        return Ok(R1Component::NotAComponent);
    }
    let tau: Vec<usize> = (1..=k).map(|t| if t == 1 { k } else { t - 1 }).collect();
    let binomial = cycle_binomial(n, &rseq, &cseq, &tau)?;
    Ok(R1Component::Cycle { k, rows, cols, binomial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::sampling::{sample_generic, sample_join_point};

    fn support_from_complement(n: usize, comp: &[(usize, usize)]) -> Support {
        Support::new(n, (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|p| !comp.contains(p))).unwrap()
    }

    #[test]
    fn counts_match_formula() {
        let fact = |k: u64| (1..=k).product::<u64>();
        let binom = |n: u64, k: u64| fact(n) / (fact(k) * fact(n - k));
        for n in 2..=5usize {
            for (k, c) in enumerate_cycle_counts(n) {
                let (n, k) = (n as u64, k as u64);
                assert_eq!(c, binom(n, k).pow(2) * fact(k) * fact(k - 1) / 2);
            }
        }
    }

    #[test]
    fn block_two_cycle() {
        let s = support_from_complement(3, &[(1, 1), (1, 2), (2, 1), (2, 2), (3, 3), (3, 1)]);
        match classify_r1_component(&s, 0).unwrap() {
            R1Component::Cycle { k, rows, cols, binomial } => {
                assert_eq!((k, rows, cols), (2, IndexSet::from_digits("12"), IndexSet::from_digits("12")));
                assert!((0..20).all(|seed| binomial.evaluate(&sample_join_point(3, 1, &s, seed)).unwrap().is_zero()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hexagon() {
        let s = support_from_complement(3, &[(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 1)]);
        match classify_r1_component(&s, 0).unwrap() {
            R1Component::Cycle { k, binomial, .. } => {
                assert_eq!(k, 3);
                assert!(!binomial.evaluate(&sample_generic(3, 1)).unwrap().is_zero());
                assert!((0..20).all(|seed| binomial.evaluate(&sample_join_point(3, 1, &s, seed)).unwrap().is_zero()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn collapsed_support() {
        let s = support_from_complement(3, &[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]);
        assert_eq!(classify_r1_component(&s, 0).unwrap(), R1Component::NotAComponent);
        assert!(classify_r1_component(&Support::diagonal(3, 2), 0).is_err());
    }

    #[test]
    fn witness_evaluation_matches_polynomial() {
        let m = sample_generic(4, 3);
        for_each_cycle::<()>(4, 3, |w| {
            assert_eq!(w.evaluate(&m), w.binomial(4).evaluate(&m).unwrap());
            ControlFlow::Continue(())
        });
    }
}
