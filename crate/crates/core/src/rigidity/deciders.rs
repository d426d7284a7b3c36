use std::ops::ControlFlow;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, IndexSet};
use crate::ideals::cycles::{for_each_cycle, CycleWitness};
use crate::ideals::generators::nm2_equations;
use crate::ideals::Support;

/// The first (lexicographic) equation found vanishing.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Cycle(CycleWitness),
    /// A vanishing `(n-1)`-minor `M^I_J`.
    Minor { rows: IndexSet, cols: IndexSet },
    /// The degree `2n - 3` equation of this three-entry support vanishes.
    Equation(Support),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Cycle(w) => {
                let (l, r) = w.monomials();
                json!({"kind": "cycle", "k": w.k(), "rows": w.rows.to_string(), "cols": w.cols.to_string(),
                       "left": l, "right": r})
            }
            Witness::Minor { rows, cols } => json!({"kind": "minor", "rows": rows.to_string(), "cols": cols.to_string()}),
            Witness::Equation(s) => json!({"kind": "equation", "support": s.to_string()}),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub result: bool,
    pub witness: Option<Witness>,
    /// Equations evaluated.
    pub checked: usize,
}

/// True iff no cycle binomial vanishes on `M`, i.e. `M` lies on no component of
/// `R̂[n, 1, n² - 2n]`.
pub fn max_border_rigid_r1(m: &ExactMatrix) -> Result<Decision> {
    let n = m.nrows();
    if !m.is_square() || n < 2 {
        return Err(Error::InvalidArgument(format!("{}x{}: need a square matrix with n ≥ 2", m.nrows(), m.ncols())));
    }
    if n > 6 {
        return Err(Error::Guard(format!("n = {n} > 6 for cycle enumeration")));
    }
    let mut checked = 0;
    for k in 2..=n {
        let hit = for_each_cycle(n, k, |w| {
            checked += 1;
            if w.evaluate(m).is_zero() {
                ControlFlow::Break(w.clone())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(w) = hit {
            return Ok(Decision { result: false, witness: Some(Witness::Cycle(w)), checked });
        }
    }
    Ok(Decision { result: true, witness: None, checked })
}

/// True iff every `(n-1)`-minor and every three-entry equation of
/// `R̂[n, n-2, 3]` is nonzero on `M`.
pub fn max_border_rigid_nm2(m: &ExactMatrix) -> Result<Decision> {
    let n = m.nrows();
    if !m.is_square() || n < 4 {
        return Err(Error::InvalidArgument(format!("{}x{}: need a square matrix with n ≥ 4", m.nrows(), m.ncols())));
    }
    let mut checked = 0;
    for rows in IndexSet::subsets(n, n - 1) {
        for cols in IndexSet::subsets(n, n - 1) {
            checked += 1;
            if m.minor(&rows, &cols)?.is_zero() {
                return Ok(Decision { result: false, witness: Some(Witness::Minor { rows, cols }), checked });
            }
        }
    }
    for rows in (1..=n).combinations(3) {
        for cols in (1..=n).permutations(3) {
            let s = Support::new(n, rows.iter().copied().zip(cols.iter().copied()))?;
            let (_, eqs) = nm2_equations(&s)?;
            for p in eqs {
                checked += 1;
                if p.evaluate(m)?.is_zero() {
                    return Ok(Decision { result: false, witness: Some(Witness::Equation(s)), checked });
                }
            }
        }
    }
    Ok(Decision { result: true, witness: None, checked })
}
