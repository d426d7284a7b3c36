use itertools::Itertools;
use num_integer::Integer;

use super::{apply_changes, diff_changes, Change, RigidityBound};
use crate::circuits::column_basis;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, ExactScalar};
use crate::families::dft_curve;

fn common_field(m: &ExactMatrix, x: &ExactScalar) -> Result<(ExactMatrix, ExactScalar)> {
    match (m.conductor(), x.conductor()) {
        (None, None) => Ok((m.clone(), x.clone())),
        (a, b) => {
            let c = a.unwrap_or(1).lcm(&b.unwrap_or(1));
            Ok((m.coerce_to(c)?, x.coerce_to(c)?))
        }
    }
}

fn check_rank(m: &ExactMatrix, r: usize, changes: &[Change], what: &str) -> Result<()> {
    let rank = apply_changes(m, changes)?.rank();
    if rank > r {
        return Err(Error::Inconsistent(format!("{what}: rank {rank} after changes, expected ≤ {r}")));
    }
    Ok(())
}

/// Replaces the block complementary to an invertible `r × r` block `A` by its
/// Schur value `C A^{-1} B`, which brings the rank down to `r`.
pub fn schur_upper(m: &ExactMatrix, r: usize) -> Result<RigidityBound> {
    let (rows, cols) = (m.nrows(), m.ncols());
    if r >= rows.min(cols) {
        return Ok(RigidityBound::with_changes(m, r, Vec::new()));
    }
    let changes = if r == 0 {
        diff_changes(m, &ExactMatrix::zeros(rows, cols))?
    } else {
        let all_rows: Vec<usize> = (0..rows).collect();
        let jb = column_basis(m);
        if jb.len() < r {
            return Err(Error::Precondition(format!("rank {} < {r}: no invertible {r}×{r} submatrix", jb.len())));
        }
        let j: Vec<usize> = jb[..r].to_vec();
        let i: Vec<usize> = column_basis(&m.select(&all_rows, &j).transpose())[..r].to_vec();
        let ic: Vec<usize> = (0..rows).filter(|x| !i.contains(x)).collect();
        let jc: Vec<usize> = (0..cols).filter(|x| !j.contains(x)).collect();
        let a_inv = m.select(&i, &j).inverse()?;
        let x = m.select(&ic, &j).try_mul(&a_inv)?.try_mul(&m.select(&i, &jc))?;
        let mut new = m.clone();
        for (a, &ii) in ic.iter().enumerate() {
            for (b, &jj) in jc.iter().enumerate() {
                new.set(ii, jj, x.get(a, b).clone())?;
            }
        }
        diff_changes(m, &new)?
    };
    check_rank(m, r, &changes, "schur_upper")?;
    Ok(RigidityBound::with_changes(m, r, changes))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenUpper {
    /// Candidate with the largest multiplicity (the first one on ties).
    pub lambda: ExactScalar,
    pub multiplicity: usize,
    /// `k² > n`, the regime where the bound says something nontrivial.
    pub nontrivial: bool,
    /// `n - rank(M - λI)` for every candidate, in input order.
    pub multiplicities: Vec<(ExactScalar, usize)>,
    pub bound: RigidityBound,
}

/// Subtracting `λ` on the diagonal leaves rank `n - k`, so
/// `M ∈ R[n, n - k, n]⁰` whenever `λ` has geometric multiplicity `k`.
pub fn eigen_upper(m: &ExactMatrix, candidates: &[ExactScalar]) -> Result<EigenUpper> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    let mut multiplicities = Vec::with_capacity(candidates.len());
    let mut best: Option<(ExactScalar, usize)> = None;
    for lambda in candidates {
        let (mm, l) = common_field(m, lambda)?;
        let shift = ExactMatrix::identity(n).scale(&l);
        let k = n - mm.try_sub(&shift)?.rank();
        multiplicities.push((lambda.clone(), k));
        if best.as_ref().map_or(true, |(_, bk)| k > *bk) {
            best = Some((lambda.clone(), k));
        }
    }
    let (lambda, k) = best.unwrap_or((ExactScalar::zero(), 0));
    let bound = if k == 0 {
        RigidityBound::with_changes(m, n, Vec::new())
    } else {
        let changes: Vec<Change> = if lambda.is_zero() {
            Vec::new()
        } else {
            (1..=n).map(|i| Change { row: i, col: i, delta: -lambda.clone() }).collect()
        };
        check_rank(m, n - k, &changes, "eigen_upper")?;
        RigidityBound::with_changes(m, n - k, changes)
    };
    Ok(EigenUpper { lambda, multiplicity: k, nontrivial: k * k > n, multiplicities, bound })
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `M(ω_p)` on the DFT curve, brought to rank one by setting the `(1,1)` entry
/// to `ω^{-1}` and the lower right block to `ω`.
pub fn cdft_upper(p: usize) -> Result<(ExactMatrix, RigidityBound)> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let w = ExactScalar::root_of_unity(p as u32);
    let m = dft_curve(&ExactScalar::one(), &w, p)?;
    let mut new = m.clone();
    new.set(0, 0, ExactScalar::root_power(p as u32, -1))?;
    for i in 1..p {
        for j in 1..p {
            new.set(i, j, w.clone())?;
        }
    }
    let changes = diff_changes(&m, &new)?;
    let rank = apply_changes(&m, &changes)?.rank();
    if rank != 1 {
        return Err(Error::Inconsistent(format!("cdft_upper({p}): rank {rank} after changes")));
    }
    let bound = RigidityBound::with_changes(&m, 1, changes);
    Ok((m, bound))
}

/// For each choice of `r` rows kept fixed, every other row is moved into
/// their span by changing as few of its entries as possible; the per-row
/// minima add up. Returns the best total within `s_max`.
fn row_span_search(m: &ExactMatrix, r: usize, s_max: usize) -> Result<Option<Vec<Change>>> {
    let (n, cols) = (m.nrows(), m.ncols());
    if r == 0 {
        let ch = diff_changes(m, &ExactMatrix::zeros(n, cols))?;
        return Ok((ch.len() <= s_max).then_some(ch));
    }
    let all_cols: Vec<usize> = (0..cols).collect();
    let mut best: Option<Vec<Change>> = None;
    for keep in (0..n).combinations(r) {
        let b = m.select(&keep, &all_cols);
        let mut total: Vec<Change> = Vec::new();
        let mut ok = true;
        for i in (0..n).filter(|x| !keep.contains(x)) {
            let budget = best.as_ref().map_or(s_max, |bst| bst.len().saturating_sub(1)).saturating_sub(total.len());
            match fix_row(m, &b, i, budget)? {
                Some(ch) => total.extend(ch),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && best.as_ref().map_or(true, |bst| total.len() < bst.len()) {
            best = Some(total);
        }
    }
    Ok(best)
}

/// Fewest changes (at most `budget`) putting row `i` into the row space of `b`.
fn fix_row(m: &ExactMatrix, b: &ExactMatrix, i: usize, budget: usize) -> Result<Option<Vec<Change>>> {
    let cols = m.ncols();
    let r = b.nrows();
    let all_r: Vec<usize> = (0..r).collect();
    for t in 0..=budget.min(cols) {
        for changed in (0..cols).combinations(t) {
            let free: Vec<usize> = (0..cols).filter(|j| !changed.contains(j)).collect();
            let coeffs = if free.is_empty() {
                Some(vec![ExactScalar::zero(); r])
            } else {
                let a = b.select(&all_r, &free).transpose();
                let rhs: Vec<ExactScalar> = free.iter().map(|&j| m.get(i, j).clone()).collect();
                a.solve(&rhs)?
            };
            let Some(c) = coeffs else { continue };
            let mut out = Vec::new();
            for &j in &changed {
                let mut v = ExactScalar::zero();
                for (k, ck) in c.iter().enumerate() {
                    v = v.try_add(&ck.try_mul(b.get(k, j))?)?;
                }
                let d = v.try_sub(m.get(i, j))?;
                if !d.is_zero() {
                    out.push(Change { row: i + 1, col: j + 1, delta: d });
                }
            }
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// Constructive search for membership in `R[n, r, s]⁰`, `s ≤ s_max`, by
/// moving rows (or columns) into the span of `r` fixed ones. Every reported
/// witness is verified; failing to find one proves nothing.
pub fn border_membership_upper(m: &ExactMatrix, r: usize, s_max: usize) -> Result<RigidityBound> {
    let n = m.nrows();
    if !m.is_square() || n > 5 || s_max > 4 {
        return Err(Error::Guard(format!("search limited to square n ≤ 5, s_max ≤ 4 (n = {n}, s_max = {s_max})")));
    }
    if r >= n {
        return Ok(RigidityBound::with_changes(m, r, Vec::new()));
    }
    let by_rows = row_span_search(m, r, s_max)?;
    let by_cols = row_span_search(&m.transpose(), r, s_max)?.map(|ch| {
        ch.into_iter().map(|c| Change { row: c.col, col: c.row, delta: c.delta }).collect::<Vec<_>>()
    });
    let best = match (by_rows, by_cols) {
        (Some(a), Some(b)) => Some(if b.len() < a.len() { b } else { a }),
        (a, b) => a.or(b),
    };
    match best {
        Some(mut ch) => {
            ch.sort_by_key(|c| (c.row, c.col));
            check_rank(m, r, &ch, "border_membership_upper")?;
            Ok(RigidityBound::with_changes(m, r, ch))
        }
        None => {
            let mut b = RigidityBound::trivial(m, r);
            b.notes.push(format!(
                "no witness with at most {s_max} changes found; the search is incomplete, so this is not a lower bound"
            ));
            Ok(b)
        }
    }
}
