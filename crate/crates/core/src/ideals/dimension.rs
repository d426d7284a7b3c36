//! Dimension of `Ĵ(σ_r, L^S)` as the rank of the differential of
//! `(C, D, e) ↦ C·D + Σ e_ij E_ij` at a seeded point.

use super::sampling::sample_join_parts;
use super::support::Support;
use crate::exact::{ExactMatrix, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JoinDimension {
    /// Rank at the sampled point; a lower bound, equal to the dimension for
    /// all but a measure-zero set of points.
    pub value: usize,
    /// `min{r(2n - r) + s, n²}`.
    pub expected: usize,
}

pub fn expected_join_dim(n: usize, r: usize, s: usize) -> usize {
    (r * (2 * n - r) + s).min(n * n)
}

/// The `n² × (2nr + s)` Jacobian at the sampled point.
pub fn join_jacobian(n: usize, r: usize, s: &Support, seed: u64) -> ExactMatrix {
    let p = sample_join_parts(n, r, s, seed);
    let zero = ExactScalar::zero();
    let mut cols: Vec<Vec<ExactScalar>> = Vec::with_capacity(2 * n * r + s.len());
    for i in 0..n {
        for a in 0..r {
            // ∂/∂C[i][a]: row i receives D[a][·].
            let mut col = vec![zero.clone(); n * n];
            for l in 0..n {
                col[i * n + l] = p.d.get(a, l).clone();
            }
            cols.push(col);
        }
    }
    for a in 0..r {
        for j in 0..n {
            // ∂/∂D[a][j]: column j receives C[·][a].
            let mut col = vec![zero.clone(); n * n];
            for k in 0..n {
                col[k * n + j] = p.c.get(k, a).clone();
            }
            cols.push(col);
        }
    }
    for (i, j) in s.iter() {
        let mut col = vec![zero.clone(); n * n];
        col[(i - 1) * n + (j - 1)] = ExactScalar::one();
        cols.push(col);
    }
    ExactMatrix::from_fn(n * n, cols.len(), |row, c| cols[c][row].clone())
}

pub fn join_dimension(n: usize, r: usize, s: &Support, seed: u64) -> JoinDimension {
    JoinDimension {
        value: join_jacobian(n, r, s, seed).rank(),
        expected: expected_join_dim(n, r, s.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = join_dimension(4, 1, &Support::diagonal(4, 3), 0);
        assert_eq!(d, JoinDimension { value: 10, expected: 10 });
        for n in 2..=5 {
            for r in 1..n {
                assert_eq!(join_dimension(n, r, &Support::empty(n), 3).value, r * (2 * n - r));
            }
        }
        let col = Support::new(4, (1..=4).map(|i| (i, 1))).unwrap();
        assert_eq!(join_dimension(4, 2, &col, 1).value, 14);
    }
}
