use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A set of 1-based positions in an `n × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Support {
    n: usize,
    positions: BTreeSet<(usize, usize)>,
}

impl Support {
    pub fn new(n: usize, positions: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in positions {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::IndexOutOfRange(format!("({i},{j}) in size {n}")));
            }
            if !set.insert((i, j)) {
                return Err(Error::InvalidArgument(format!("position ({i},{j}) repeated")));
            }
        }
        Ok(Support { n, positions: set })
    }

    pub fn empty(n: usize) -> Self {
        Support { n, positions: BTreeSet::new() }
    }

    /// `{(1,1), …, (s,s)}`.
    pub fn diagonal(n: usize, s: usize) -> Self {
        assert!(s <= n, "diagonal of length {s} in size {n}");
        Support { n, positions: (1..=s).map(|i| (i, i)).collect() }
    }

    /// Parses `"1,1;2,2;3,3"`; the empty string is the empty support.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad position {part:?}")))?;
            let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad row {a:?}")))?;
            let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad column {b:?}")))?;
            out.push((a, b));
        }
        Self::new(n, out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.positions.contains(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.positions.iter().copied()
    }

    pub fn complement(&self) -> Self {
        let n = self.n;
        Support {
            n,
            positions: (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .filter(|p| !self.positions.contains(p))
                .collect(),
        }
    }

    /// True iff no two positions share a row or a column.
    pub fn is_diagonal_type(&self) -> bool {
        let rows: BTreeSet<_> = self.positions.iter().map(|p| p.0).collect();
        let cols: BTreeSet<_> = self.positions.iter().map(|p| p.1).collect();
        rows.len() == self.len() && cols.len() == self.len()
    }

    pub fn with_ambient(&self, n: usize) -> Result<Self> {
        Self::new(n, self.positions.iter().copied())
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|(i, j)| format!("{i},{j}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s = Support::parse(3, "1,1; 2,2;3,3").unwrap();
        assert_eq!(s, Support::diagonal(3, 3));
        assert_eq!(s.to_string(), "1,1;2,2;3,3");
        assert_eq!(s.complement().len(), 6);
        assert!(s.is_diagonal_type());
        assert!(Support::parse(3, "1,4").is_err());
        assert!(Support::parse(3, "1,1;1,1").is_err());
        assert!(Support::parse(3, "x").is_err());
        assert!(Support::parse(3, "").unwrap().is_empty());
    }
}
