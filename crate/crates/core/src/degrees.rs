//! Degrees of `σ_r` and of the joins `J(σ_r, L^S)` for `S` with no two entries
//! in a row or column, plus component counts and dimension bookkeeping.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use crate::ideals::dimension::expected_join_dim as expected_dim;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `tb(k) = G(k + 1) = ∏_{i=1}^{k-1} i!` (and `tb(0) = 1`).
pub fn barnes_tb(k: usize) -> BigInt {
    (1..k).fold(BigInt::one(), |a, i| a * factorial(i))
}

fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!("{what} is not integral")));
    }
    Ok(q)
}

fn check_sigma(n: usize, r: usize) -> Result<()> {
    if r > n {
        return Err(Error::InvalidArgument(format!("r = {r} > n = {n}")));
    }
    Ok(())
}

/// `deg σ_r = ∏_{i=0}^{n-r-1} (n+i)! i! / ((r+i)! (n-r+i)!)`.
pub fn deg_sigma(n: usize, r: usize) -> Result<BigInt> {
    check_sigma(n, r)?;
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..n - r {
        num *= factorial(n + i) * factorial(i);
        den *= factorial(r + i) * factorial(n - r + i);
    }
    exact_div(num, den, "product formula")
}

/// `tb(r) tb(2n-r) tb(n-r)² / (tb(n)² tb(2n-2r))`.
pub fn deg_sigma_barnes(n: usize, r: usize) -> Result<BigInt> {
    check_sigma(n, r)?;
    let num = barnes_tb(r) * barnes_tb(2 * n - r) * barnes_tb(n - r).pow(2);
    let den = barnes_tb(n).pow(2) * barnes_tb(2 * n - 2 * r);
    exact_div(num, den, "Barnes ratio")
}

/// `dim S_{k^k} C^n` with `k = n - r`, by the hook-content formula.
pub fn deg_sigma_hook(n: usize, r: usize) -> Result<BigInt> {
    check_sigma(n, r)?;
    let k = n - r;
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..k {
        for j in 0..k {
            num *= BigInt::from(n + j) - BigInt::from(i);
            den *= BigInt::from(2 * k - i - j - 1);
        }
    }
    exact_div(num, den, "hook-content formula")
}

/// Memoized `d(n, r, s)` with `d(n, 0, s) = 1` and `d(n, r, s) = 0` for
/// `r < 0`.
#[derive(Debug, Default)]
pub struct DegreeTable {
    memo: HashMap<(usize, i64, usize), BigInt>,
}

impl DegreeTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn base(n: usize, r: i64) -> BigInt {
        match r {
            r if r < 0 => BigInt::zero(),
            0 => BigInt::one(),
            r => deg_sigma(n, r as usize).expect("r ≤ n inside the recursion"),
        }
    }

    /// `d(n, r, s) = d(n, r, 0) - Σ_{j=1}^s d(n-1, r-1, s-j)`.
    pub fn recursion(&mut self, n: usize, r: i64, s: usize) -> BigInt {
        if r < 0 {
            return BigInt::zero();
        }
        if r == 0 {
            return BigInt::one();
        }
        if s == 0 {
            return Self::base(n, r);
        }
        if let Some(v) = self.memo.get(&(n, r, s)) {
            return v.clone();
        }
        let mut v = Self::base(n, r);
        for j in 1..=s {
            v -= self.recursion(n - 1, r - 1, s - j);
        }
        self.memo.insert((n, r, s), v.clone());
        v
    }

    /// `Σ_{m=0}^s C(s, m) (-1)^m d(n-m, r-m, 0)`.
    pub fn alternating(&self, n: usize, r: i64, s: usize) -> BigInt {
        let mut v = BigInt::zero();
        for m in 0..=s.min(n) {
            let t = binomial(s, m) * Self::base(n - m, r - m as i64);
            if m % 2 == 0 {
                v += t;
            } else {
                v -= t;
            }
        }
        v
    }
}

fn check_join(n: usize, r: usize, s: usize) -> Result<()> {
    if s > n {
        return Err(Error::InvalidArgument(format!("s = {s} > n = {n}: no diagonal-type support")));
    }
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ r ≤ n, got r = {r}, n = {n}")));
    }
    Ok(())
}

/// Degree of each component of `R̂[n, r, s]` with diagonal-type `S`, by the
/// recursion.
pub fn deg_join(n: usize, r: usize, s: usize) -> Result<BigInt> {
    check_join(n, r, s)?;
    Ok(DegreeTable::new().recursion(n, r as i64, s))
}

/// The same degree by the alternating sum.
pub fn deg_join_alternating(n: usize, r: usize, s: usize) -> Result<BigInt> {
    check_join(n, r, s)?;
    Ok(DegreeTable::new().alternating(n, r as i64, s))
}

/// `dim [k^k] = (k²)! tb(k)² / tb(2k)`.
pub fn square_tableaux(k: usize) -> BigInt {
    factorial(k * k) * barnes_tb(k).pow(2) / barnes_tb(2 * k)
}

/// `D(n, k, u) = deg_join(n, n - k, k² - u)` in closed form, `u ∈ {1, 2}`:
///
/// `D(n,k,1) = dim[k^k] (n - (k²-1)/2)` and
/// `D(n,k,2) = dim[k^k] (h₂ - k²(k²-1)/12) / (k²(k²-1))`, where `h₂` is the
/// complete homogeneous polynomial of degree two in `n, n-1, …, n-k²+2`.
pub fn deg_closed_dku(n: usize, k: usize, u: usize) -> Result<BigInt> {
    if !(1..=2).contains(&u) {
        return Err(Error::InvalidArgument(format!("u = {u}, expected 1 or 2")));
    }
    if k == 0 || k * k < u || k * k - u > n || k >= n {
        return Err(Error::InvalidArgument(format!("(n, k, u) = ({n}, {k}, {u}) outside the diagonal regime")));
    }
    let q = |a: BigInt| BigRational::from_integer(a);
    let kk = (k * k) as i64;
    let nn = q(n.into());
    let dim = q(square_tableaux(k));
    let value = if u == 1 {
        dim * (nn - BigRational::new((kk - 1).into(), 2.into()))
    } else {
        let s = kk - 2;
        let m = q((s + 1).into());
        let sq = q(s.into());
        let p1 = &m * (&nn - &sq / q(2.into()));
        let p2 = &m * &nn * &nn - &nn * &sq * &m + &sq * &m * (q(2.into()) * &sq + q(1.into())) / q(6.into());
        let h2 = (&p1 * &p1 + p2) / q(2.into());
        let e2 = BigRational::new((kk * (kk - 1)).into(), 12.into());
        dim * (h2 - e2) / q((kk * (kk - 1)).into())
    };
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Inconsistent(format!("D({n},{k},{u}) = {value} is not a nonnegative integer")));
    }
    Ok(value.to_integer())
}

/// `Σ_{k=2}^n C(n,k)² k!(k-1)!/2` with the count per degree `k`.
pub fn count_components_r1(n: usize) -> Result<(BigInt, Vec<(usize, BigInt)>)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} < 2")));
    }
    let per: Vec<(usize, BigInt)> = (2..=n)
        .map(|k| (k, binomial(n, k).pow(2) * factorial(k) * factorial(k - 1) / BigInt::from(2)))
        .collect();
    let total = per.iter().map(|p| &p.1).sum();
    Ok((total, per))
}

/// `s = (n - r)² - 1`.
pub fn is_hypersurface(n: usize, r: usize, s: usize) -> bool {
    r < n && s + 1 == (n - r) * (n - r)
}

/// One CSV row per valid `(n, r, s)`: both routes and their agreement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub degree: BigInt,
    pub agree: bool,
}

/// All `2 ≤ n ≤ max_n`, `1 ≤ r < n`, `0 ≤ s ≤ n`.
pub fn degree_rows(max_n: usize) -> Vec<DegreeRow> {
    let mut table = DegreeTable::new();
    let mut out = Vec::new();
    for n in 2..=max_n {
        for r in 1..n {
            for s in 0..=n {
                let a = table.recursion(n, r as i64, s);
                let b = table.alternating(n, r as i64, s);
                out.push(DegreeRow { n, r, s, agree: a == b, degree: a });
            }
        }
    }
    out
}
