use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing list of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts and validates `idx` against the bound `n`.
    pub fn new(mut idx: Vec<usize>, n: usize) -> Result<Self> {
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("repeated index in {idx:?}")));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange(format!("{bad} not in 1..={n}")));
        }
        Ok(IndexSet(idx))
    }

    /// From a string of single digits such as `"235"`; the empty string is `∅`.
    pub fn from_digits(s: &str) -> Self {
        let mut v: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).expect("digit") as usize)
            .collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// 0-based position of `i` in the set.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn complement(&self, n: usize) -> Self {
        IndexSet((1..=n).filter(|i| !self.contains(*i)).collect())
    }

    pub fn without(&self, drop: &[usize]) -> Self {
        IndexSet(self.0.iter().copied().filter(|i| !drop.contains(i)).collect())
    }

    pub fn with(&self, add: &[usize]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(add);
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    /// All `k`-subsets of `{1..n}` in lexicographic order.
    pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = IndexSet> {
        (1..=n).combinations(k).map(IndexSet)
    }

    /// 0-based copies of the indices.
    pub fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v, usize::MAX)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let sep = if self.0.iter().any(|&i| i > 9) { "," } else { "" };
        write!(f, "{}", self.0.iter().join(sep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(IndexSet::new(vec![3, 1], 3).unwrap().as_slice(), &[1, 3]);
        assert!(IndexSet::new(vec![1, 1], 3).is_err());
        assert!(IndexSet::new(vec![0], 3).is_err());
        assert!(IndexSet::new(vec![4], 3).is_err());
    }

    #[test]
    fn complement_and_subsets() {
        let s = IndexSet::from_digits("24");
        assert_eq!(s.complement(5), IndexSet::from_digits("135"));
        assert_eq!(IndexSet::subsets(4, 2).count(), 6);
        assert_eq!(s.to_string(), "24");
        assert_eq!(IndexSet::empty().to_string(), "∅");
    }
}
