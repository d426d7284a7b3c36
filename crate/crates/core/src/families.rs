//! Structured matrix families: DFT, Cauchy, Vandermonde, Sylvester, the DFT
//! curve and butterfly products.

use num_integer::Roots;

use crate::circuits::{butterfly_support, dft_layers};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, ExactScalar};
use crate::rng::{distinct_positive_rationals, seeded, small_rational};

/// `ω_n^{(i-1)(j-1)}` over `Q(ω_n)`.
pub fn dft(n: usize) -> ExactMatrix {
    assert!(n >= 1, "n must be positive");
    let m = n as u32;
    ExactMatrix::from_fn(n, n, |i, j| ExactScalar::root_power(m, ((i * j) % n) as i64))
}

/// `DFT_n / √n` for perfect squares `n`, which keeps the entries in `Q(ω_n)`.
pub fn dft_normalized(n: usize) -> Result<ExactMatrix> {
    let s = n.sqrt();
    if s * s != n {
        return Err(Error::InvalidArgument(format!("{n} is not a perfect square")));
    }
    Ok(dft(n).scale(&ExactScalar::ratio(1, s as i64)))
}

#[derive(Clone, Debug)]
pub struct CauchyParams {
    pub x: Vec<ExactScalar>,
    pub z: Vec<ExactScalar>,
}

impl CauchyParams {
    /// Distinct positive parameters, so every `x^i + z_j` is nonzero and all
    /// minors are nonzero.
    pub fn seeded(n: usize, seed: u64) -> Self {
        let mut rng = seeded(seed);
        let x = distinct_positive_rationals(&mut rng, n);
        let z = distinct_positive_rationals(&mut rng, n);
        CauchyParams { x, z }
    }
}

/// `y^i_j = 1/(x^i + z_j)`.
pub fn cauchy(p: &CauchyParams) -> Result<ExactMatrix> {
    let mut rows = Vec::with_capacity(p.x.len());
    for xi in &p.x {
        let mut row = Vec::with_capacity(p.z.len());
        for zj in &p.z {
            let d = xi.try_add(zj)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            row.push(d.inv()?);
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows)
}

/// `∏_{i<j}(x^i - x^j) ∏_{i<j}(z_i - z_j) / ∏_{i,j}(x^i + z_j)`.
pub fn cauchy_det(p: &CauchyParams) -> Result<ExactScalar> {
    if p.x.len() != p.z.len() {
        return Err(Error::Dimension("Cauchy determinant needs a square matrix".into()));
    }
    let n = p.x.len();
    let mut num = ExactScalar::one();
    for i in 0..n {
        for j in i + 1..n {
            num = num.try_mul(&p.x[i].try_sub(&p.x[j])?)?;
            num = num.try_mul(&p.z[i].try_sub(&p.z[j])?)?;
        }
    }
    let mut den = ExactScalar::one();
    for xi in &p.x {
        for zj in &p.z {
            den = den.try_mul(&xi.try_add(zj)?)?;
        }
    }
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    num.try_div(&den)
}

/// The Cauchy-variety matrix determined by its first row and column through
/// `a^ρ_σ = [1/a^ρ_1 + 1/a^1_σ - 1/a^1_1]^{-1}`.
pub fn cauchy_from_border(first_row: &[ExactScalar], first_col: &[ExactScalar]) -> Result<ExactMatrix> {
    if first_row.is_empty() || first_col.is_empty() || first_row[0] != first_col[0] {
        return Err(Error::InvalidArgument(
            "border must be nonempty and share its corner entry".into(),
        ));
    }
    let inv = |x: &ExactScalar| x.inv();
    let corner = inv(&first_row[0])?;
    let mut rows = Vec::with_capacity(first_col.len());
    for (r, a) in first_col.iter().enumerate() {
        let mut row = Vec::with_capacity(first_row.len());
        for (c, b) in first_row.iter().enumerate() {
            if r == 0 {
                row.push(b.clone());
            } else if c == 0 {
                row.push(a.clone());
            } else {
                row.push(inv(a)?.try_add(&inv(b)?)?.try_sub(&corner)?.inv()?);
            }
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows)
}

/// `1/y11 + 1/y22 - 1/y12 - 1/y21` cleared of denominators, with
/// `y_ab = M[i_a][j_b]` (1-based).
pub fn cauchy_ideal_residual(m: &ExactMatrix, i1: usize, i2: usize, j1: usize, j2: usize) -> Result<ExactScalar> {
    if i1 == i2 || j1 == j2 {
        return Err(Error::InvalidArgument("row and column indices must be distinct".into()));
    }
    if [i1, i2].iter().any(|&i| i == 0 || i > m.nrows()) || [j1, j2].iter().any(|&j| j == 0 || j > m.ncols()) {
        return Err(Error::IndexOutOfRange(format!("({i1},{i2};{j1},{j2})")));
    }
    let y = |a: usize, b: usize| m.get(a - 1, b - 1);
    let (y11, y12, y21, y22) = (y(i1, j1), y(i1, j2), y(i2, j1), y(i2, j2));
    Ok(&(&(&(y22 * y12) * y21) + &(&(y11 * y12) * y21)) - &(&(&(y11 * y22) * y21) + &(&(y11 * y22) * y12)))
}

/// `y_0, …, y_n`.
#[derive(Clone, Debug)]
pub struct VandermondeParams {
    pub y: Vec<ExactScalar>,
}

impl VandermondeParams {
    /// `y_0 = 1` and distinct positive nodes in increasing order, which makes
    /// every minor a positive generalized Vandermonde determinant.
    pub fn seeded(n: usize, seed: u64) -> Self {
        let mut rng = seeded(seed);
        let mut nodes: Vec<_> = distinct_positive_rationals(&mut rng, n)
            .into_iter()
            .map(|x| &x + &ExactScalar::one())
            .collect();
        nodes.sort_by(|a, b| a.as_rational().cmp(&b.as_rational()));
        nodes.dedup();
        while nodes.len() < n {
            let last = nodes.last().cloned().unwrap_or_else(ExactScalar::one);
            nodes.push(&last + &ExactScalar::one());
        }
        let mut y = vec![ExactScalar::one()];
        y.extend(nodes);
        VandermondeParams { y }
    }
}

/// Entry `(i, j)` is `y_0^{n-i} y_j^{i-1}`.
pub fn vandermonde(p: &VandermondeParams) -> Result<ExactMatrix> {
    if p.y.len() < 2 {
        return Err(Error::InvalidArgument("need y_0 and at least one node".into()));
    }
    let n = p.y.len() - 1;
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        rows.push(
            (1..=n)
                .map(|j| p.y[0].pow((n - i) as u64).try_mul(&p.y[j].pow((i - 1) as u64)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    ExactMatrix::from_rows(rows)
}

/// The quadrics `x^i_j x^k_j - x^{i+1}_j x^{k-1}_j` (`k ≥ i + 2`, per column)
/// followed by the linears `x^1_1 - x^1_j`.
pub fn vandermonde_ideal_residuals(m: &ExactMatrix) -> Vec<ExactScalar> {
    let (n, c) = (m.nrows(), m.ncols());
    let mut out = Vec::new();
    for j in 0..c {
        for i in 0..n {
            for k in i + 2..n {
                out.push(&(m.get(i, j) * m.get(k, j)) - &(m.get(i + 1, j) * m.get(k - 1, j)));
            }
        }
    }
    if n > 0 {
        for j in 1..c {
            out.push(m.get(0, 0) - m.get(0, j));
        }
    }
    out
}

/// `Syl_1 = [[1,1],[1,-1]]`, `Syl_k = [[S,S],[S,-S]]` with `S = Syl_{k-1}`.
pub fn sylvester(k: u32) -> ExactMatrix {
    assert!(k >= 1, "k must be positive");
    let n = 1usize << k;
    ExactMatrix::from_fn(n, n, |i, j| {
        let sign = if (i & j).count_ones() % 2 == 0 { 1 } else { -1 };
        ExactScalar::from(sign)
    })
}

/// The DFT curve: entry `(i, j)` is `x^{n-1-e} w^e` with `e = (i-1)(j-1) mod n`.
pub fn dft_curve(x: &ExactScalar, w: &ExactScalar, n: usize) -> Result<ExactMatrix> {
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        rows.push(
            (0..n)
                .map(|j| {
                    let e = (i * j) % n;
                    x.pow((n - 1 - e) as u64).try_mul(&w.pow(e as u64))
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    ExactMatrix::from_rows(rows)
}

/// `M(w)`: the 5×5 matrix with entries `w^{(i-1)(j-1) mod 5}`.
pub fn m_w(w: &ExactScalar) -> ExactMatrix {
    dft_curve(&ExactScalar::one(), w, 5).expect("a single scalar kind")
}

/// Builds butterfly layers on the DFT support with labels `f(layer, row, col)`
/// (0-based) and returns them with their product.
pub fn butterfly_from(k: u32, mut f: impl FnMut(usize, usize, usize) -> ExactScalar) -> (Vec<ExactMatrix>, ExactMatrix) {
    let n = 1usize << k;
    let layers: Vec<ExactMatrix> = butterfly_support(k)
        .iter()
        .enumerate()
        .map(|(l, supp)| {
            let mut m = ExactMatrix::zeros(n, n);
            for &(i, j) in supp {
                m.set(i, j, f(l, i, j)).expect("in range");
            }
            m
        })
        .collect();
    let product = layers[1..].iter().fold(layers[0].clone(), |acc, s| &acc * s);
    (layers, product)
}

/// Seeded butterfly layers with small nonzero rational labels.
pub fn butterfly_sample(k: u32, seed: u64) -> (Vec<ExactMatrix>, ExactMatrix) {
    let mut rng = seeded(seed);
    butterfly_from(k, |_, _, _| small_rational(&mut rng))
}

/// The layers of the radix-2 factorization, which multiply to `DFT_{2^k}`.
pub fn butterfly_dft(k: u32) -> (Vec<ExactMatrix>, ExactMatrix) {
    let layers = dft_layers(k);
    butterfly_from(k, |l, i, j| layers[l].get(i, j).clone())
}

/// Rank of the differential of `(S_1, …, S_k) ↦ S_1 ⋯ S_k` at a seeded point,
/// with one coordinate per support position.
pub fn butterfly_jacobian_rank(k: u32, seed: u64) -> usize {
    let (layers, _) = butterfly_sample(k, seed);
    let n = 1usize << k;
    let supports = butterfly_support(k);
    let mut prefix = vec![ExactMatrix::identity(n)];
    for s in &layers {
        let next = prefix.last().unwrap() * s;
        prefix.push(next);
    }
    let mut suffix = vec![ExactMatrix::identity(n)];
    for s in layers.iter().rev() {
        let next = s * suffix.last().unwrap();
        suffix.push(next);
    }
    suffix.reverse();
    let mut columns: Vec<Vec<ExactScalar>> = Vec::new();
    for (l, supp) in supports.iter().enumerate() {
        let (left, right) = (&prefix[l], &suffix[l + 1]);
        for &(a, b) in supp {
            // d(product)/d(S_l[a][b]) = left[:, a] · right[b, :].
            let mut col = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    col.push(left.get(i, a) * right.get(b, j));
                }
            }
            columns.push(col);
        }
    }
    let jac = ExactMatrix::from_fn(n * n, columns.len(), |r, c| columns[c][r].clone());
    jac.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{dft_circuit, naive_circuit};

    #[test]
    fn dft_basics() {
        assert_eq!(dft(1), ExactMatrix::identity(1));
        assert_eq!(dft(2), ExactMatrix::from_i64(&[&[1, 1], &[1, -1]]));
        assert_eq!(dft(2), sylvester(1));
        let i = ExactScalar::root_of_unity(4);
        assert_eq!(dft(4).row(1).to_vec(), vec![ExactScalar::one(), i.clone(), ExactScalar::from(-1), -i]);
        for n in 1..=8 {
            let f = dft(n);
            assert_eq!(f, f.transpose());
            assert_eq!(&f * &f.conj(), ExactMatrix::identity(n).scale(&ExactScalar::from(n as i64)));
        }
    }

    #[test]
    fn dft_circuit_matches_dft() {
        for k in 1..=4 {
            assert_eq!(dft_circuit(k).evaluate(), dft(1 << k), "k = {k}");
        }
    }

    #[test]
    fn cauchy_examples() {
        let p = CauchyParams { x: vec![1.into(), 2.into()], z: vec![3.into(), 4.into()] };
        assert_eq!(cauchy_det(&p).unwrap(), ExactScalar::ratio(1, 600));
        assert_eq!(cauchy(&p).unwrap().determinant().unwrap(), ExactScalar::ratio(1, 600));
        let one = CauchyParams { x: vec![1.into()], z: vec![1.into()] };
        assert_eq!(cauchy(&one).unwrap(), ExactMatrix::from_fn(1, 1, |_, _| ExactScalar::ratio(1, 2)));
        assert_eq!(cauchy_det(&one).unwrap(), ExactScalar::ratio(1, 2));
        let rep = CauchyParams { x: vec![1.into(), 1.into()], z: vec![3.into(), 4.into()] };
        assert!(cauchy_det(&rep).unwrap().is_zero());
        assert_eq!(cauchy(&rep).unwrap().rank(), 1);
        let bad = CauchyParams { x: vec![1.into()], z: vec![(-1).into()] };
        assert_eq!(cauchy(&bad).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn cauchy_border_round_trip() {
        let p = CauchyParams::seeded(4, 3);
        let m = cauchy(&p).unwrap();
        let row = m.row(0).to_vec();
        let col: Vec<_> = (0..4).map(|i| m.get(i, 0).clone()).collect();
        assert_eq!(cauchy_from_border(&row, &col).unwrap(), m);
        let c = ExactScalar::from(5);
        let flat = cauchy_from_border(&[c.clone(), c.clone()], &[c.clone(), c.clone(), c.clone()]).unwrap();
        assert_eq!(flat, ExactMatrix::from_fn(3, 2, |_, _| c.clone()));
        let single = cauchy_from_border(&[c.clone()], &[c.clone()]).unwrap();
        assert_eq!(single, ExactMatrix::from_fn(1, 1, |_, _| c.clone()));
    }

    #[test]
    fn cauchy_residuals() {
        let m = cauchy(&CauchyParams::seeded(4, 9)).unwrap();
        for (a, b) in [(1, 2), (1, 4), (2, 3)] {
            for (c, d) in [(1, 3), (2, 4)] {
                assert!(cauchy_ideal_residual(&m, a, b, c, d).unwrap().is_zero());
            }
        }
        let m = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(cauchy_ideal_residual(&m, 1, 2, 1, 2).unwrap(), ExactScalar::from(10));
        let k = ExactMatrix::from_fn(3, 3, |_, _| ExactScalar::from(4));
        assert!(cauchy_ideal_residual(&k, 1, 3, 2, 3).unwrap().is_zero());
    }

    #[test]
    fn vandermonde_examples() {
        let p = VandermondeParams { y: vec![1.into(), 2.into(), 3.into(), 5.into()] };
        let v = vandermonde(&p).unwrap();
        assert_eq!(v, ExactMatrix::from_i64(&[&[1, 1, 1], &[2, 3, 5], &[4, 9, 25]]));
        assert!(vandermonde_ideal_residuals(&v).iter().all(ExactScalar::is_zero));
        let p0 = VandermondeParams { y: vec![2.into(), 0.into(), 0.into(), 0.into()] };
        let v0 = vandermonde(&p0).unwrap();
        assert_eq!(v0.nnz(), 3);
        assert!((0..3).all(|j| !v0.get(0, j).is_zero()));
        assert!(vandermonde_ideal_residuals(&v0).iter().all(ExactScalar::is_zero));
        let generic = ExactMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert!(vandermonde_ideal_residuals(&generic).iter().any(|r| !r.is_zero()));
        for seed in 0..100 {
            let mut rng = seeded(seed);
            let y: Vec<_> = (0..5).map(|_| small_rational(&mut rng)).collect();
            let v = vandermonde(&VandermondeParams { y }).unwrap();
            assert!(vandermonde_ideal_residuals(&v).iter().all(ExactScalar::is_zero));
        }
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester(1), ExactMatrix::from_i64(&[&[1, 1], &[1, -1]]));
        assert_eq!(sylvester(2).rank(), 4);
        for k in 1..=4 {
            let s = sylvester(k);
            let n = 1 << k;
            assert_eq!(&s * &s.transpose(), ExactMatrix::identity(n).scale(&ExactScalar::from(n as i64)));
            if k > 1 {
                let h = n / 2;
                let r: Vec<usize> = (h..n).collect();
                assert_eq!(s.select(&r, &r), sylvester(k - 1).scale(&ExactScalar::from(-1)));
            }
        }
    }

    #[test]
    fn dft_curve_examples() {
        let w = ExactScalar::root_of_unity(5);
        assert_eq!(dft_curve(&ExactScalar::one(), &w, 5).unwrap(), dft(5));
        assert_eq!(m_w(&w), dft(5));
        let m0 = dft_curve(&ExactScalar::zero(), &ExactScalar::from(3), 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m0.get(i, j).is_zero(), (i * j) % 4 != 3);
            }
        }
        // The curve satisfies the Vandermonde equations where w^n = x^n.
        for n in 3..=6u32 {
            let x = ExactScalar::ratio(3, 2);
            let wn = &x * &ExactScalar::root_of_unity(n);
            let m = dft_curve(&x, &wn, n as usize).unwrap();
            assert!(vandermonde_ideal_residuals(&m).iter().all(ExactScalar::is_zero));
        }
        let off = dft_curve(&ExactScalar::from(2), &ExactScalar::from(3), 5).unwrap();
        assert!(vandermonde_ideal_residuals(&off).iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn butterfly_examples() {
        for k in 1..=3 {
            let (layers, product) = butterfly_dft(k);
            assert_eq!(layers.len(), k as usize);
            assert_eq!(product, dft(1 << k));
        }
        let (ones, product) = butterfly_from(3, |_, _, _| ExactScalar::one());
        let circuit = ones[1..]
            .iter()
            .fold(naive_circuit(&ones[0]), |c, s| c.stack(&naive_circuit(s)).unwrap());
        assert_eq!(circuit.evaluate(), product);
        let (a, pa) = butterfly_sample(3, 11);
        let (b, pb) = butterfly_sample(3, 11);
        assert_eq!(a, b);
        assert_eq!(pa, pb);
        assert!(a.iter().all(|s| s.nnz() == 16));
    }

    #[test]
    fn butterfly_jacobian_n4() {
        // n(log n + 1) = 12 for n = 4.
        assert_eq!(butterfly_jacobian_rank(2, 5), 12);
    }
}
