//! Rigidity bounds: constructive upper bounds, certificate lower bounds and the
//! exact maximal border rigidity deciders for `r = 1` and `r = n - 2`.

mod bounds;
mod deciders;
mod hitting;
mod threshold;

use serde_json::{json, Value};

pub use bounds::{border_membership_upper, cdft_upper, eigen_upper, schur_upper, EigenUpper};
pub use deciders::{max_border_rigid_nm2, max_border_rigid_r1, Decision, Witness};
pub use hitting::{lower_hitting, min_hitting_set};
pub use threshold::{log2_enclosure, shokrollahi_threshold, threshold_lower, Threshold};

use crate::error::{Error, Result};
use crate::exact::json::scalar_to_json;
use crate::exact::{ExactMatrix, ExactScalar};

/// One entry change, 1-based: `M[row][col] += delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct Change {
    pub row: usize,
    pub col: usize,
    pub delta: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// No `min_hitting_set - 1` positions meet every nonzero `(r+1)`-minor.
    Hitting { minors: usize, min_hitting_set: usize, capped: bool },
    /// All `r × r` minors are nonzero and `r ≥ (log n)²`.
    MinorsNonzero { size: usize, threshold_floor: usize },
}

/// `lower ≤ Rig_r(M) ≤ upper`. Without a witness the upper side is the
/// universal bound `(n - r)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidityBound {
    pub r: usize,
    pub lower: usize,
    pub upper: usize,
    pub upper_witness: Option<Vec<Change>>,
    pub lower_certificates: Vec<Certificate>,
    pub notes: Vec<String>,
}

impl RigidityBound {
    pub fn trivial(m: &ExactMatrix, r: usize) -> Self {
        RigidityBound {
            r,
            lower: 0,
            upper: universal_upper(m, r),
            upper_witness: None,
            lower_certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn with_changes(m: &ExactMatrix, r: usize, changes: Vec<Change>) -> Self {
        RigidityBound {
            upper: changes.len(),
            upper_witness: Some(changes),
            ..Self::trivial(m, r)
        }
    }

    /// Checks the upper witness exactly: `rank(M + change) ≤ r` and the
    /// number of nonzero changes equals `upper`.
    pub fn verify_upper(&self, m: &ExactMatrix) -> Result<bool> {
        let Some(ch) = &self.upper_witness else {
            return Ok(self.upper == universal_upper(m, self.r));
        };
        if ch.iter().any(|c| c.delta.is_zero()) || ch.len() != self.upper {
            return Ok(false);
        }
        Ok(apply_changes(m, ch)?.rank() <= self.r)
    }

    /// Intersects two bounds for the same `r`.
    pub fn meet(mut self, other: RigidityBound) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::InvalidArgument(format!("bounds for r = {} and r = {}", self.r, other.r)));
        }
        if other.lower > self.lower {
            self.lower = other.lower;
        }
        self.lower_certificates.extend(other.lower_certificates);
        let witnessed_tie = other.upper == self.upper && self.upper_witness.is_none();
        if other.upper < self.upper || witnessed_tie && other.upper_witness.is_some() {
            self.upper = other.upper;
            self.upper_witness = other.upper_witness;
        }
        self.notes.extend(other.notes);
        Ok(self)
    }

    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper
    }

    pub fn to_json(&self) -> Value {
        let witness = self.upper_witness.as_ref().map(|ch| {
            ch.iter()
                .map(|c| json!({"row": c.row, "col": c.col, "delta": scalar_to_json(&c.delta)}))
                .collect::<Vec<_>>()
        });
        let certs: Vec<Value> = self
            .lower_certificates
            .iter()
            .map(|c| match c {
                Certificate::Hitting { minors, min_hitting_set, capped } => json!({
                    "kind": "hitting",
                    "nonzero_minors": minors,
                    "min_hitting_set": min_hitting_set,
                    "capped": capped,
                }),
                Certificate::MinorsNonzero { size, threshold_floor } => json!({
                    "kind": "minors_nonzero",
                    "size": size,
                    "threshold": threshold_floor,
                }),
            })
            .collect();
        json!({
            "r": self.r,
            "lower": self.lower,
            "upper": self.upper,
            "witness_upper": witness,
            "witness_lower": certs,
            "notes": self.notes,
        })
    }
}

/// `(n - r)²` for square `M` (the Schur construction always achieves it).
pub fn universal_upper(m: &ExactMatrix, r: usize) -> usize {
    let rows = m.nrows().saturating_sub(r);
    let cols = m.ncols().saturating_sub(r);
    rows * cols
}

pub fn apply_changes(m: &ExactMatrix, changes: &[Change]) -> Result<ExactMatrix> {
    let mut out = m.clone();
    for c in changes {
        if c.row == 0 || c.col == 0 || c.row > m.nrows() || c.col > m.ncols() {
            return Err(Error::IndexOutOfRange(format!("change at ({}, {})", c.row, c.col)));
        }
        let v = out.get(c.row - 1, c.col - 1).try_add(&c.delta)?;
        out.set(c.row - 1, c.col - 1, v)?;
    }
    Ok(out)
}

/// Entries where `new` differs from `old`, as changes.
pub fn diff_changes(old: &ExactMatrix, new: &ExactMatrix) -> Result<Vec<Change>> {
    let mut out = Vec::new();
    for i in 0..old.nrows() {
        for j in 0..old.ncols() {
            let d = new.get(i, j).try_sub(old.get(i, j))?;
            if !d.is_zero() {
                out.push(Change { row: i + 1, col: j + 1, delta: d });
            }
        }
    }
    Ok(out)
}

/// Interval report: hitting-set and threshold lower bounds against the Schur
/// and search upper bounds, each side applied where its guard allows.
pub fn rigidity_interval(m: &ExactMatrix, r: usize, s_max: usize) -> Result<RigidityBound> {
    let n = m.nrows();
    let mut b = RigidityBound::trivial(m, r);
    if r >= n.min(m.ncols()) {
        b.upper = 0;
        return Ok(b);
    }
    if m.rank() <= r {
        b.upper = 0;
        b.upper_witness = Some(Vec::new());
        return Ok(b);
    }
    b = b.meet(schur_upper(m, r)?)?;
    if n <= 6 && m.is_square() {
        b = b.meet(lower_hitting(m, r, s_max)?)?;
    } else {
        b.notes.push(format!("hitting-set lower bound skipped for n = {n}"));
    }
    if r >= 1 && m.is_square() {
        b = b.meet(threshold_lower(m, r)?)?;
    }
    if n <= 5 && s_max <= 4 && m.is_square() {
        b = b.meet(border_membership_upper(m, r, s_max)?)?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::dft;

    #[test]
    fn interval_keeps_witness_on_tie() {
        let m = dft(4);
        let b = rigidity_interval(&m, 2, 4).unwrap();
        assert_eq!(b.upper, 4);
        assert_eq!(b.upper_witness.as_ref().map(Vec::len), Some(4));
        assert!(b.verify_upper(&m).unwrap());
        assert!(b.is_consistent());
    }

    #[test]
    fn changes_round_trip() {
        let m = dft(3);
        let z = ExactMatrix::zeros(3, 3).coerce_to(3).unwrap();
        let ch = diff_changes(&m, &z).unwrap();
        assert_eq!(ch.len(), 9);
        assert!(apply_changes(&m, &ch).unwrap().is_zero());
    }
}
