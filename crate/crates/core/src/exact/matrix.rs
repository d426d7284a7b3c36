//! Dense matrices over [`ExactScalar`] with fraction-free elimination.

use std::fmt;

use num_rational::BigRational;

use super::index::IndexSet;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Row-major dense matrix. Every entry has the same scalar kind: either all
/// rational, or all cyclotomic of one conductor.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    conductor: Option<u32>,
    data: Vec<ExactScalar>,
}

fn common_conductor<'a>(it: impl Iterator<Item = &'a ExactScalar>) -> Result<Option<u32>> {
    let mut c: Option<u32> = None;
    for x in it {
        if let Some(m) = x.conductor() {
            match c {
                None => c = Some(m),
                Some(k) if k != m => return Err(Error::ConductorMismatch(k, m)),
                _ => {}
            }
        }
    }
    Ok(c)
}

impl ExactMatrix {
    /// Builds from row-major data, promoting rationals if any entry is cyclotomic.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let conductor = common_conductor(data.iter())?;
        let data = match conductor {
            None => data,
            Some(m) => data
                .into_iter()
                .map(|x| x.coerce_to(m))
                .collect::<Result<_>>()?,
        };
        Ok(ExactMatrix {
            rows,
            cols,
            conductor,
            data,
        })
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_vec(n, m, rows.into_iter().flatten().collect())
    }

    /// # Panics
    /// Panics if `f` produces cyclotomic entries of different conductors.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(rows, cols, data).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self::from_fn(n, m, |i, j| ExactScalar::from(rows[i][j]))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ExactScalar::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| ExactScalar::from((i == j) as i64))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn conductor(&self) -> Option<u32> {
        self.conductor
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }

    /// 0-based update; the value is coerced to the matrix kind when possible.
    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange(format!("({i},{j})")));
        }
        let v = match (self.conductor, v.conductor()) {
            (Some(m), _) => v.coerce_to(m)?,
            (None, Some(m)) => {
                *self = Self::from_vec(self.rows, self.cols, std::mem::take(&mut self.data))
                    .and_then(|mm| mm.coerce_to(m))?;
                v
            }
            (None, None) => v,
        };
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Lifts all entries into `Q(ω_m)`.
    pub fn coerce_to(&self, m: u32) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.coerce_to(m))
            .collect::<Result<_>>()?;
        Self::from_vec(self.rows, self.cols, data)
    }

    pub fn map(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(ExactScalar::conj)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        self.map(|x| x * c)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    fn check_conductors(&self, other: &Self) -> Result<()> {
        match (self.conductor, other.conductor) {
            (Some(a), Some(b)) if a != b => Err(Error::ConductorMismatch(a, b)),
            _ => Ok(()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_conductors(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Self::from_vec(self.rows, self.cols, data)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&ExactScalar::from(-1)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_conductors(other)?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ExactScalar::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.try_add(&a.try_mul(b)?)?;
                    }
                }
                data.push(acc);
            }
        }
        Self::from_vec(self.rows, other.cols, data)
    }

    /// Submatrix on 0-based row and column lists (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Submatrix on 1-based index sets.
    pub fn submatrix(&self, i: &IndexSet, j: &IndexSet) -> Result<Self> {
        if i.last().is_some_and(|x| x > self.rows) || j.last().is_some_and(|x| x > self.cols) {
            return Err(Error::IndexOutOfRange(format!(
                "rows {i}, cols {j} in a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(self.select(&i.zero_based(), &j.zero_based()))
    }

    /// Fraction-free elimination to row echelon form. Returns the rank, the
    /// sign of the row permutation and the last pivot, which for a full-rank
    /// square matrix is the determinant up to that sign.
    fn bareiss(&self) -> (usize, i32, ExactScalar) {
        let (n, m) = (self.rows, self.cols);
        let mut a: Vec<Vec<ExactScalar>> = self.to_rows();
        let mut prev_inv = ExactScalar::one();
        let mut prev = ExactScalar::one();
        let mut sign = 1;
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            if p != row {
                a.swap(p, row);
                sign = -sign;
            }
            let piv = a[row][col].clone();
            let (top, rest) = a.split_at_mut(row + 1);
            let prow = &top[row];
            for r in rest.iter_mut() {
                let lead = r[col].clone();
                for j in col + 1..m {
                    let mut v = &r[j] * &piv;
                    if !lead.is_zero() && !prow[j].is_zero() {
                        v = v - &lead * &prow[j];
                    }
                    r[j] = if prev.is_one() { v } else { &v * &prev_inv };
                }
                r[col] = ExactScalar::zero();
            }
            prev_inv = piv.inv().expect("pivot is nonzero");
            prev = piv;
            row += 1;
        }
        (row, sign, prev)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.bareiss().0
    }

    pub fn determinant(&self) -> Result<ExactScalar> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(ExactScalar::one());
        }
        let (rank, sign, last) = self.bareiss();
        if rank < self.rows {
            return Ok(self.zero_like());
        }
        Ok(if sign < 0 { -last } else { last })
    }

    fn zero_like(&self) -> ExactScalar {
        match self.conductor {
            Some(m) => ExactScalar::zero().coerce_to(m).expect("rational lifts"),
            None => ExactScalar::zero(),
        }
    }

    /// `M^I_J`, the determinant of the submatrix on rows `I` and columns `J`.
    pub fn minor(&self, i: &IndexSet, j: &IndexSet) -> Result<ExactScalar> {
        if i.len() != j.len() {
            return Err(Error::Dimension(format!("minor with |I| = {} and |J| = {}", i.len(), j.len())));
        }
        self.submatrix(i, j)?.determinant()
    }

    /// `Δ^I_J = M^{I^c}_{J^c}`.
    pub fn complementary_minor(&self, i: &IndexSet, j: &IndexSet) -> Result<ExactScalar> {
        if i.last().is_some_and(|x| x > self.rows) || j.last().is_some_and(|x| x > self.cols) {
            return Err(Error::IndexOutOfRange(format!("Δ^{i}_{j}")));
        }
        self.minor(&i.complement(self.rows), &j.complement(self.cols))
    }

    /// True iff every `r × r` minor is nonzero.
    pub fn all_minors_nonzero(&self, r: usize) -> Result<bool> {
        Ok(self.first_zero_minor(r)?.is_none())
    }

    /// The lexicographically first vanishing `r × r` minor.
    pub fn first_zero_minor(&self, r: usize) -> Result<Option<(IndexSet, IndexSet)>> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Err(Error::InvalidArgument(format!(
                "minor size {r} for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        for i in IndexSet::subsets(self.rows, r) {
            for j in IndexSet::subsets(self.cols, r) {
                if self.minor(&i, &j)?.is_zero() {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Some solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[ExactScalar]) -> Result<Option<Vec<ExactScalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let m = self.cols;
        let mut a: Vec<Vec<ExactScalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(p, row);
            let inv = a[row][col].inv()?;
            for x in a[row].iter_mut() {
                *x = x.try_mul(&inv)?;
            }
            for i in 0..a.len() {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in col..=m {
                        if !a[row][j].is_zero() {
                            a[i][j] = a[i][j].try_sub(&f.try_mul(&a[row][j])?)?;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        if a[row..].iter().any(|r| !r[m].is_zero()) {
            return Ok(None);
        }
        let mut x = vec![self.zero_like(); m];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = a[r][m].clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if self.rank() < n {
            return Err(Error::DivisionByZero);
        }
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let e: Vec<ExactScalar> = (0..n).map(|i| ExactScalar::from((i == k) as i64)).collect();
            cols.push(self.solve(&e)?.ok_or(Error::DivisionByZero)?);
        }
        Ok(Self::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            let b = other.get(i % other.rows, j % other.cols);
            a * b
        })
    }

    /// Rational entries, if every entry lies in `Q`.
    pub fn as_rationals(&self) -> Option<Vec<Vec<BigRational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ExactScalar::as_rational).collect())
            .collect()
    }
}

/// Entrywise value equality; a rational matrix equals its cyclotomic lift.
impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for ExactMatrix {}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cofactor_det(m: &ExactMatrix) -> ExactScalar {
        let n = m.nrows();
        if n == 0 {
            return ExactScalar::one();
        }
        let mut acc = ExactScalar::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let t = m.get(0, j) * &cofactor_det(&m.select(&rows, &cols));
            acc = if j % 2 == 0 { acc + t } else { acc - t };
        }
        acc
    }

    fn naive_rank(m: &ExactMatrix) -> usize {
        let mut a = m.to_rows();
        let mut rank = 0;
        for c in 0..m.ncols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, rank);
            for i in rank + 1..a.len() {
                let f = &a[i][c] / &a[rank][c];
                for j in 0..m.ncols() {
                    let d = &f * &a[rank][j];
                    a[i][j] = &a[i][j] - &d;
                }
            }
            rank += 1;
        }
        rank
    }

    fn dft(n: u32) -> ExactMatrix {
        ExactMatrix::from_fn(n as usize, n as usize, |i, j| {
            ExactScalar::root_power(n, (i * j) as i64)
        })
    }

    #[test]
    fn small_ranks() {
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        assert_eq!(ExactMatrix::zeros(3, 3).rank(), 0);
        let outer = ExactMatrix::from_i64(&[&[1, 1, 1], &[2, 2, 2], &[3, 3, 3]]);
        assert_eq!(outer.rank(), 1);
        let f = dft(4);
        assert_eq!(f.rank(), 4);
        assert!(!cofactor_det(&f).is_zero());
        assert_eq!(f.determinant().unwrap(), cofactor_det(&f));
    }

    #[test]
    fn minors() {
        let m = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let all = IndexSet::full(2);
        assert_eq!(m.minor(&all, &all).unwrap(), ExactScalar::from(-2));
        assert_eq!(m.minor(&IndexSet::from_digits("2"), &IndexSet::from_digits("2")).unwrap(), ExactScalar::from(4));
        let id = ExactMatrix::identity(3);
        let a = IndexSet::from_digits("1");
        let b = IndexSet::from_digits("2");
        assert!(id.complementary_minor(&a, &a).unwrap().is_one());
        assert!(id.complementary_minor(&a, &b).unwrap().is_zero());
        assert!(id.minor(&a, &IndexSet::from_digits("12")).is_err());
        assert!(id.minor(&IndexSet::from_digits("4"), &a).is_err());
        assert!(!id.all_minors_nonzero(2).unwrap());
        assert!(id.all_minors_nonzero(4).is_err());
    }

    #[test]
    fn dft5_minors_all_nonzero() {
        let f = dft(5);
        for r in 1..=4 {
            assert!(f.all_minors_nonzero(r).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = ExactMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ExactMatrix::identity(2));
        let x = m.solve(&[ExactScalar::from(3), ExactScalar::from(2)]).unwrap().unwrap();
        assert_eq!(x, vec![ExactScalar::from(1), ExactScalar::from(1)]);
        let sing = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&[ExactScalar::from(1), ExactScalar::from(2)]).unwrap().is_none());
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn mixed_entries_promote() {
        let m = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), ExactScalar::root_of_unity(3)],
            vec![ExactScalar::from(2), ExactScalar::from(5)],
        ])
        .unwrap();
        assert_eq!(m.conductor(), Some(3));
        assert!(ExactMatrix::from_rows(vec![vec![ExactScalar::root_of_unity(3), ExactScalar::root_of_unity(5)]]).is_err());
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(n, m)| {
            prop::collection::vec((-3i64..=3, 1i64..=3), n * m).prop_map(move |v| {
                ExactMatrix::from_vec(n, m, v.into_iter().map(|(p, q)| ExactScalar::ratio(p, q)).collect()).unwrap()
            })
        })
    }

    fn low_rank(max: usize) -> impl Strategy<Value = ExactMatrix> {
        (small_matrix(max), 1..=3usize).prop_map(|(a, k)| {
            let b = ExactMatrix::from_fn(a.ncols(), k, |i, j| ExactScalar::from(((i + 2 * j) % 3) as i64 - 1));
            let c = &a * &b;
            &c * &b.transpose()
        })
    }

    proptest! {
        #[test]
        fn bareiss_rank_matches_gauss(m in small_matrix(6)) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
        }

        #[test]
        fn bareiss_rank_matches_gauss_low_rank(m in low_rank(6)) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
        }

        #[test]
        fn determinant_matches_cofactors(m in (1..=5usize).prop_flat_map(|n| prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| ExactMatrix::from_vec(n, n, v.into_iter().map(ExactScalar::from).collect()).unwrap()))) {
            prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn laplace_expansion_of_minors(m in small_matrix(5), k in 1..=4usize, row in 0..4usize) {
            let k = k.min(m.nrows()).min(m.ncols());
            let i = IndexSet::subsets(m.nrows(), k).next().unwrap();
            let j = IndexSet::subsets(m.ncols(), k).last().unwrap();
            let sub = m.submatrix(&i, &j).unwrap();
            let row = row % k;
            let mut acc = ExactScalar::zero();
            for c in 0..k {
                let rs: Vec<usize> = (0..k).filter(|&x| x != row).collect();
                let cs: Vec<usize> = (0..k).filter(|&x| x != c).collect();
                let t = sub.get(row, c) * &sub.select(&rs, &cs).determinant().unwrap();
                acc = if (row + c) % 2 == 0 { acc + t } else { acc - t };
            }
            prop_assert_eq!(m.minor(&i, &j).unwrap(), acc);
        }
    }
}
