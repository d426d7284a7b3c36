//! Explicit elements of the ideals of joins `J(σ_r, L^S)`.

use super::poly::{cofactor_sign, term, Factor, MinorPolynomial, Representation};
use super::support::Support;
use crate::error::{Error, Result};
use crate::exact::IndexSet;

type Pos = (usize, usize);

fn in_block(p: Pos, i: &IndexSet, j: &IndexSet) -> bool {
    i.contains(p.0) && j.contains(p.1)
}

fn support_in_block(s: &Support, i: &IndexSet, j: &IndexSet) -> Vec<Pos> {
    s.iter().filter(|&p| in_block(p, i, j)).collect()
}

fn m_factor(n: usize, r: &IndexSet, c: &IndexSet) -> Factor {
    Factor { i: r.complement(n), j: c.complement(n) }
}

fn check_bounds(n: usize, sets: &[&IndexSet]) -> Result<()> {
    for s in sets {
        if s.last().is_some_and(|x| x > n) {
            return Err(Error::IndexOutOfRange(format!("{s} in size {n}")));
        }
    }
    Ok(())
}

/// `M^I_J M^{K'}_{L'} - ε M^K_L M^{I'}_{J'}`, where primes drop the row and
/// column of `x0` and `ε` is the product of the cofactor signs of `x0`.
///
/// `(I, J)` and `(K, L)` must be blocks of equal size meeting `S` exactly in
/// `x0`. The result has degree `2r + 1` for blocks of size `r + 1`.
pub fn gen_two_minor(
    i: &IndexSet,
    j: &IndexSet,
    k: &IndexSet,
    l: &IndexSet,
    x0: Pos,
    s: &Support,
) -> Result<MinorPolynomial> {
    let n = s.n();
    check_bounds(n, &[i, j, k, l])?;
    if i.len() != j.len() || k.len() != l.len() || i.len() != k.len() || i.is_empty() {
        return Err(Error::Dimension("blocks must be square, nonempty and of one size".into()));
    }
    if !s.contains(x0.0, x0.1) {
        return Err(Error::Precondition(format!("x0 = {x0:?} is not in S")));
    }
    for (a, b) in [(i, j), (k, l)] {
        if support_in_block(s, a, b) != vec![x0] {
            return Err(Error::Precondition(format!(
                "block ({a}, {b}) must meet S exactly in {x0:?}"
            )));
        }
    }
    let eps = cofactor_sign(i, j, x0.0, x0.1) * cofactor_sign(k, l, x0.0, x0.1);
    let (ip, jp) = (i.without(&[x0.0]), j.without(&[x0.1]));
    let (kp, lp) = (k.without(&[x0.0]), l.without(&[x0.1]));
    MinorPolynomial::new(
        n,
        Representation::Delta,
        vec![
            term(1, vec![m_factor(n, i, j), m_factor(n, &kp, &lp)]),
            term(-eps, vec![m_factor(n, k, l), m_factor(n, &ip, &jp)]),
        ],
    )
}

/// For a block `(I, J)` of size `r + 2` meeting `S` exactly in three entries
/// `e_1, e_2, e_3` with distinct rows and columns:
/// `M^{I∖i3}_{J∖j2} M^{I∖i1i2}_{J∖j1j3} - ε M^{I∖i2}_{J∖j3} M^{I∖i1i3}_{J∖j1j2}`,
/// with `ε` the product of the signs of `e_1` in the two minors containing it.
pub fn gen_three_entry(i: &IndexSet, j: &IndexSet, entries: [Pos; 3], s: &Support) -> Result<MinorPolynomial> {
    let n = s.n();
    check_bounds(n, &[i, j])?;
    if i.len() != j.len() || i.len() < 3 {
        return Err(Error::Dimension("block must be square of size at least 3".into()));
    }
    let [e1, e2, e3] = entries;
    let rows = [e1.0, e2.0, e3.0];
    let cols = [e1.1, e2.1, e3.1];
    if rows[0] == rows[1] || rows[0] == rows[2] || rows[1] == rows[2] || cols[0] == cols[1] || cols[0] == cols[2] || cols[1] == cols[2] {
        return Err(Error::Precondition("entries must have distinct rows and columns".into()));
    }
    let mut hit = support_in_block(s, i, j);
    hit.sort();
    let mut want = entries.to_vec();
    want.sort();
    if hit != want {
        return Err(Error::Precondition(format!("block ({i}, {j}) must meet S exactly in the three entries")));
    }
    let (i1, i2, i3) = (e1.0, e2.0, e3.0);
    let (j1, j2, j3) = (e1.1, e2.1, e3.1);
    let (ra, ca) = (i.without(&[i3]), j.without(&[j2]));
    let (rb, cb) = (i.without(&[i1, i2]), j.without(&[j1, j3]));
    let (rc, cc) = (i.without(&[i2]), j.without(&[j3]));
    let (rd, cd) = (i.without(&[i1, i3]), j.without(&[j1, j2]));
    let eps = cofactor_sign(&ra, &ca, i1, j1) * cofactor_sign(&rc, &cc, i1, j1);
    MinorPolynomial::new(
        n,
        Representation::Delta,
        vec![
            term(1, vec![m_factor(n, &ra, &ca), m_factor(n, &rb, &cb)]),
            term(-eps, vec![m_factor(n, &rc, &cc), m_factor(n, &rd, &cd)]),
        ],
    )
}

/// Three-minor equation for two S-entries `a`, `b` sharing a row or column.
///
/// `(I, J)` meets `S` only in `a`, `(K, L)` only in `b`, and `(P, Q)` exactly
/// in `{a, b}`; all three blocks have size `r + 1`. The result is
/// `c_1 M^I_J B' P_a' + c_2 M^K_L A' P_b' + M^P_Q A' B'` of degree `3r + 1`,
/// where primes drop the row and column of the named entry and the `c`'s are
/// products of cofactor signs.
#[allow(clippy::too_many_arguments)]
pub fn gen_three_minor(
    i: &IndexSet,
    j: &IndexSet,
    k: &IndexSet,
    l: &IndexSet,
    p: &IndexSet,
    q: &IndexSet,
    entries: [Pos; 2],
    s: &Support,
) -> Result<MinorPolynomial> {
    let n = s.n();
    check_bounds(n, &[i, j, k, l, p, q])?;
    let size = i.len();
    if size == 0 || [j, k, l, p, q].iter().any(|x| x.len() != size) {
        return Err(Error::Dimension("blocks must be square, nonempty and of one size".into()));
    }
    let [a, b] = entries;
    if a.0 != b.0 && a.1 != b.1 {
        return Err(Error::Precondition("the two entries must share a row or a column".into()));
    }
    if a == b {
        return Err(Error::Precondition("the two entries must differ".into()));
    }
    let mut both = vec![a, b];
    both.sort();
    if support_in_block(s, i, j) != vec![a] || support_in_block(s, k, l) != vec![b] || support_in_block(s, p, q) != both {
        return Err(Error::Precondition("blocks do not meet S in the required entries".into()));
    }
    let e1 = cofactor_sign(i, j, a.0, a.1);
    let e2 = cofactor_sign(k, l, b.0, b.1);
    let e3 = cofactor_sign(p, q, a.0, a.1);
    let e4 = cofactor_sign(p, q, b.0, b.1);
    let ap = (i.without(&[a.0]), j.without(&[a.1]));
    let bp = (k.without(&[b.0]), l.without(&[b.1]));
    let pa = (p.without(&[a.0]), q.without(&[a.1]));
    let pb = (p.without(&[b.0]), q.without(&[b.1]));
    let f = |x: &(IndexSet, IndexSet)| m_factor(n, &x.0, &x.1);
    MinorPolynomial::new(
        n,
        Representation::Delta,
        vec![
            term(-e1 * e3, vec![m_factor(n, i, j), f(&bp), f(&pa)]),
            term(-e2 * e4, vec![m_factor(n, k, l), f(&ap), f(&pb)]),
            term(1, vec![m_factor(n, p, q), f(&ap), f(&bp)]),
        ],
    )
}

/// `∏_t x^{rows_t}_{cols_t} - ∏_t x^{rows_t}_{cols_{τ(t)}}` on `Mat_n`.
///
/// `rows` and `cols` are ordered lists of distinct 1-based indices; `tau` lists
/// the 1-based images of a single `k`-cycle.
pub fn cycle_binomial(n: usize, rows: &[usize], cols: &[usize], tau: &[usize]) -> Result<MinorPolynomial> {
    let k = rows.len();
    if k < 2 || cols.len() != k || tau.len() != k {
        return Err(Error::Dimension("need k ≥ 2 rows, columns and cycle entries".into()));
    }
    IndexSet::new(rows.to_vec(), n)?;
    IndexSet::new(cols.to_vec(), n)?;
    if !is_single_cycle(tau) {
        return Err(Error::InvalidArgument(format!("{tau:?} is not a {k}-cycle")));
    }
    let x = |i: usize, j: usize| Factor {
        i: IndexSet::new(vec![i], n).expect("checked"),
        j: IndexSet::new(vec![j], n).expect("checked"),
    };
    let left = (0..k).map(|t| x(rows[t], cols[t])).collect();
    let right = (0..k).map(|t| x(rows[t], cols[tau[t] - 1])).collect();
    MinorPolynomial::new(n, Representation::Entry, vec![term(1, left), term(-1, right)])
}

/// True iff `tau` (1-based images) is a permutation consisting of one cycle
/// through every point.
pub fn is_single_cycle(tau: &[usize]) -> bool {
    let k = tau.len();
    let mut seen = vec![false; k];
    for &t in tau {
        if t == 0 || t > k || seen[t - 1] {
            return false;
        }
        seen[t - 1] = true;
    }
    let mut len = 0;
    let mut v = 0;
    loop {
        v = tau[v] - 1;
        len += 1;
        if v == 0 {
            break;
        }
    }
    len == k && k >= 2
}

/// How three support entries sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nm2Case {
    /// Distinct rows and columns: one equation of degree `2n - 3`.
    DistinctLines,
    /// One row plus one column cover the entries: the single avoiding `(n-1)`-minor.
    RowAndColumn,
    /// All three on one row or column: not a hypersurface.
    NotAHypersurface,
}

/// The defining equation of `J(σ_{n-2}, L^S)` for `|S| = 3`.
pub fn nm2_equations(s: &Support) -> Result<(Nm2Case, Vec<MinorPolynomial>)> {
    let n = s.n();
    if s.len() != 3 {
        return Err(Error::InvalidArgument(format!("|S| = {}, expected 3", s.len())));
    }
    if n < 4 {
        return Err(Error::InvalidArgument(format!("n = {n}, expected n ≥ 4")));
    }
    let covers: Vec<Pos> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| s.iter().all(|(a, b)| a == i || b == j))
        .collect();
    match covers.len() {
        0 => {
            let mut e: Vec<Pos> = s.iter().collect();
            e.sort();
            let full = IndexSet::full(n);
            let p = gen_three_entry(&full, &full, [e[0], e[1], e[2]], s)?;
            Ok((Nm2Case::DistinctLines, vec![p]))
        }
        1 => {
            let (i, j) = covers[0];
            let p = MinorPolynomial::new(
                n,
                Representation::Delta,
                vec![term(1, vec![Factor { i: IndexSet::new(vec![i], n)?, j: IndexSet::new(vec![j], n)? }])],
            )?;
            Ok((Nm2Case::RowAndColumn, vec![p]))
        }
        _ => Ok((Nm2Case::NotAHypersurface, Vec::new())),
    }
}

/// All `(I, J)` with `|I| = |J| = r + 1` whose block avoids `S`.
pub fn avoiding_minors(s: &Support, r: usize) -> Vec<(IndexSet, IndexSet)> {
    let n = s.n();
    if r + 1 > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in IndexSet::subsets(n, r + 1) {
        for j in IndexSet::subsets(n, r + 1) {
            if support_in_block(s, &i, &j).is_empty() {
                out.push((i.clone(), j));
            }
        }
    }
    out
}

/// The avoiding minors as Δ-polynomials.
pub fn avoiding_minor_polys(s: &Support, r: usize) -> Vec<MinorPolynomial> {
    let n = s.n();
    avoiding_minors(s, r)
        .into_iter()
        .map(|(i, j)| {
            MinorPolynomial::new(n, Representation::Delta, vec![term(1, vec![m_factor(n, &i, &j)])])
                .expect("valid block")
        })
        .collect()
}

/// Drops support entries beyond the first `n - r` in any column, then in any
/// row, until stable. The join is unchanged.
pub fn reduce_support(s: &Support, r: usize) -> Support {
    let n = s.n();
    let keep = n.saturating_sub(r);
    let mut cur: Vec<Pos> = s.iter().collect();
    loop {
        let before = cur.len();
        for by_col in [true, false] {
            let mut next = Vec::with_capacity(cur.len());
            let mut count = vec![0usize; n + 1];
            let mut sorted = cur.clone();
            if by_col {
                sorted.sort_by_key(|&(i, j)| (j, i));
            }
            for (i, j) in sorted {
                let line = if by_col { j } else { i };
                if count[line] < keep {
                    count[line] += 1;
                    next.push((i, j));
                }
            }
            cur = next;
        }
        if cur.len() == before {
            break;
        }
    }
    Support::new(n, cur).expect("subset of a valid support")
}

/// `Δ^3_2 Δ^{12}_{13} - Δ^2_3 Δ^{13}_{12}` on `Mat_3`, vanishing on
/// `J(σ_1, L^{diag})`.
pub fn ee_equation() -> MinorPolynomial {
    let d = |a: &str, b: &str| Factor { i: IndexSet::from_digits(a), j: IndexSet::from_digits(b) };
    MinorPolynomial::new(
        3,
        Representation::Delta,
        vec![term(1, vec![d("3", "2"), d("12", "13")]), term(-1, vec![d("2", "3"), d("13", "12")])],
    )
    .expect("valid symbols")
}

/// `M^{23}_{12} x^1_3 - M^{12}_{23} x^3_1` on `Mat_3`.
pub fn ee_variant() -> MinorPolynomial {
    MinorPolynomial::from_digit_minors(3, &[(1, &[("23", "12"), ("1", "3")]), (-1, &[("12", "23"), ("3", "1")])])
}

/// Support of the degree-9 equation on `Mat_6` for `r = 2`, `s = 15`.
pub fn s5_support() -> Support {
    Support::new(
        6,
        [
            (1, 5), (1, 6), (2, 1), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3),
            (4, 5), (5, 1), (5, 4), (5, 6), (6, 4), (6, 5), (6, 6),
        ],
    )
    .expect("valid support")
}

/// The ten-term degree-9 equation of `J(σ_2, L^S)` on `Mat_6`, with
/// `S = s5_support()`.
pub fn s5_equation() -> MinorPolynomial {
    MinorPolynomial::from_digit_minors(
        6,
        &[
            (-1, &[("235", "235"), ("12", "36"), ("16", "12"), ("34", "14")]),
            (1, &[("235", "235"), ("12", "26"), ("16", "13"), ("34", "14")]),
            (1, &[("126", "236"), ("13", "13"), ("25", "25"), ("34", "14")]),
            (-1, &[("126", "236"), ("13", "12"), ("25", "35"), ("34", "14")]),
            (1, &[("126", "235"), ("13", "16"), ("25", "23"), ("34", "14")]),
            (-1, &[("126", "235"), ("13", "14"), ("25", "23"), ("34", "16")]),
            (1, &[("134", "146"), ("12", "23"), ("25", "23"), ("36", "15")]),
            (-1, &[("134", "146"), ("13", "15"), ("25", "23"), ("26", "23")]),
            (-1, &[("136", "136"), ("12", "23"), ("25", "25"), ("34", "14")]),
            (1, &[("136", "126"), ("12", "23"), ("25", "35"), ("34", "14")]),
        ],
    )
}

/// Degree-5 equation of `J(σ_2, L^{diag})` on `Mat_5`:
/// `M^{123}_{345} M^{45}_{12} - M^{345}_{123} M^{12}_{45}`.
pub fn n5r2_quintic() -> MinorPolynomial {
    MinorPolynomial::from_digit_minors(5, &[(1, &[("123", "345"), ("45", "12")]), (-1, &[("345", "123"), ("12", "45")])])
}

/// Degree-6 equation of `J(σ_2, L^{diag})` on `Mat_5`.
pub fn n5r2_sextic() -> MinorPolynomial {
    MinorPolynomial::from_digit_minors(
        5,
        &[
            (-1, &[("345", "123"), ("1", "4"), ("1", "5"), ("2", "1")]),
            (1, &[("235", "134"), ("1", "2"), ("1", "5"), ("4", "1")]),
            (-1, &[("234", "135"), ("1", "2"), ("1", "4"), ("5", "1")]),
            (1, &[("134", "235"), ("1", "4"), ("2", "1"), ("5", "1")]),
            (-1, &[("123", "345"), ("1", "2"), ("4", "1"), ("5", "1")]),
            (-1, &[("135", "234"), ("1", "5"), ("2", "1"), ("4", "1")]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactMatrix;
    use crate::ideals::sampling::{sample_generic, sample_join_point};

    fn set(s: &str) -> IndexSet {
        IndexSet::from_digits(s)
    }

    fn vanishes(p: &MinorPolynomial, r: usize, s: &Support, samples: u64) -> bool {
        (0..samples).all(|seed| p.evaluate(&sample_join_point(s.n(), r, s, seed)).unwrap().is_zero())
    }

    fn generic_nonzero(p: &MinorPolynomial) -> bool {
        !p.evaluate(&sample_generic(p.n(), 99)).unwrap().is_zero()
    }

    #[test]
    fn two_minor_reproduces_ee() {
        let s = Support::diagonal(3, 3);
        let p = gen_two_minor(&set("12"), &set("13"), &set("13"), &set("12"), (1, 1), &s).unwrap();
        assert_eq!(p, ee_equation());
        let q = gen_two_minor(&set("23"), &set("12"), &set("12"), &set("23"), (2, 2), &s).unwrap();
        let v = ee_variant();
        for seed in 0..5 {
            let m = sample_generic(3, seed);
            assert_eq!(q.evaluate(&m).unwrap(), v.evaluate(&m).unwrap());
        }
        assert!(vanishes(&p, 1, &s, 30) && generic_nonzero(&p));
        let err = gen_two_minor(&set("12"), &set("12"), &set("13"), &set("13"), (1, 1), &s);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn three_entry_reduces_to_ee() {
        let s = Support::diagonal(3, 3);
        let full = IndexSet::full(3);
        let p = gen_three_entry(&full, &full, [(1, 1), (2, 2), (3, 3)], &s).unwrap();
        assert_eq!(p, ee_equation());
    }

    #[test]
    fn three_minor_paper_example() {
        let cyc = [(1, 1), (2, 2), (3, 3), (4, 4), (1, 2), (2, 3), (3, 4), (4, 1)];
        let s = Support::new(4, (1..=4).flat_map(|i| (1..=4).map(move |j| (i, j))).filter(|p| !cyc.contains(p))).unwrap();
        let p = gen_three_minor(&set("12"), &set("12"), &set("34"), &set("14"), &set("23"), &set("13"), [(2, 1), (3, 1)], &s).unwrap();
        assert_eq!(p.degree(), Some(4));
        let b = cycle_binomial(4, &[1, 2, 3, 4], &[1, 2, 3, 4], &[2, 3, 4, 1]).unwrap();
        for seed in 0..5 {
            let m = sample_generic(4, seed);
            assert_eq!(p.evaluate(&m).unwrap(), b.evaluate(&m).unwrap());
        }
    }

    #[test]
    fn binomials() {
        let b = cycle_binomial(2, &[1, 2], &[1, 2], &[2, 1]).unwrap();
        let m = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(b.evaluate(&m).unwrap(), m.determinant().unwrap());
        assert!(cycle_binomial(3, &[1, 2, 3], &[1, 2, 3], &[2, 1, 3]).is_err());
        assert!(is_single_cycle(&[2, 3, 1]) && !is_single_cycle(&[1, 3, 2]) && !is_single_cycle(&[1]));
    }

    #[test]
    fn nm2_cases() {
        let (c, ps) = nm2_equations(&Support::diagonal(4, 3)).unwrap();
        assert_eq!((c, ps.len(), ps[0].degree()), (Nm2Case::DistinctLines, 1, Some(5)));
        let (c, ps) = nm2_equations(&Support::new(4, [(1, 1), (1, 2), (2, 3)]).unwrap()).unwrap();
        assert_eq!((c, ps[0].degree()), (Nm2Case::RowAndColumn, Some(3)));
        let (c, ps) = nm2_equations(&Support::new(4, [(1, 1), (1, 2), (1, 3)]).unwrap()).unwrap();
        assert_eq!((c, ps.len()), (Nm2Case::NotAHypersurface, 0));
        assert!(nm2_equations(&Support::diagonal(4, 2)).is_err());
    }

    #[test]
    fn avoiding_counts() {
        assert_eq!(avoiding_minors(&Support::new(3, [(2, 2)]).unwrap(), 1).len(), 5);
        assert_eq!(avoiding_minors(&Support::empty(4), 1).len(), 36);
        let band = Support::new(3, (1..=3).flat_map(|j| [(1, j), (2, j)])).unwrap();
        assert!(avoiding_minors(&band, 1).is_empty());
    }

    #[test]
    fn reduction() {
        let col = Support::new(5, (1..=5).map(|i| (i, 1))).unwrap();
        assert_eq!(reduce_support(&col, 2), Support::new(5, [(1, 1), (2, 1), (3, 1)]).unwrap());
        let d = Support::diagonal(5, 5);
        assert_eq!(reduce_support(&d, 2), d);
    }

    #[test]
    fn paper_equations_vanish() {
        assert!(vanishes(&s5_equation(), 2, &s5_support(), 5));
        assert!(generic_nonzero(&s5_equation()));
        let d5 = Support::diagonal(5, 5);
        assert!(vanishes(&n5r2_quintic(), 2, &d5, 5) && generic_nonzero(&n5r2_quintic()));
        assert!(vanishes(&n5r2_sextic(), 2, &d5, 5) && generic_nonzero(&n5r2_sextic()));
    }
}
