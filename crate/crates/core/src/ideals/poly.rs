//! Polynomials that are sums of products of minors.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::scalar::{fmt_rational, parse_rational};
use crate::exact::{ExactMatrix, ExactScalar, IndexSet};

/// How a factor `(I, J)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// `Δ^I_J = M^{I^c}_{J^c}`; survives a change of ambient size.
    Delta,
    /// `M^I_J` itself.
    Entry,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub i: IndexSet,
    pub j: IndexSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: BigRational,
    pub factors: Vec<Factor>,
}

/// `(1^{λ_1}, …, n^{λ_n}) × (1^{μ_1}, …, n^{μ_n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: &[usize]| {
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(k, &c)| if c == 1 { format!("{}", k + 1) } else { format!("{}^{c}", k + 1) })
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({})x({})", part(&self.lambda), part(&self.mu))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinorPolynomial {
    n: usize,
    representation: Representation,
    terms: Vec<Term>,
}

impl MinorPolynomial {
    /// Validates factor shapes against the ambient size `n`.
    pub fn new(n: usize, representation: Representation, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            for f in &t.factors {
                if f.i.len() != f.j.len() {
                    return Err(Error::Dimension(format!("factor ({}, {}) is not square", f.i, f.j)));
                }
                if f.i.last().is_some_and(|x| x > n) || f.j.last().is_some_and(|x| x > n) {
                    return Err(Error::IndexOutOfRange(format!("factor ({}, {}) in size {n}", f.i, f.j)));
                }
            }
        }
        Ok(MinorPolynomial {
            n,
            representation,
            terms,
        })
    }

    /// Builds a Δ-polynomial from products of ordinary minors `M^R_C`, each
    /// given as `(R, C)`.
    pub fn from_m_minors(n: usize, terms: Vec<(i64, Vec<(IndexSet, IndexSet)>)>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(c, fs)| Term {
                coeff: BigRational::from_integer(c.into()),
                factors: fs
                    .into_iter()
                    .map(|(r, c)| Factor {
                        i: r.complement(n),
                        j: c.complement(n),
                    })
                    .collect(),
            })
            .collect();
        Self::new(n, Representation::Delta, terms)
    }

    /// Same as [`MinorPolynomial::from_m_minors`] with digit-string indices,
    /// e.g. `("235", "146")`.
    pub fn from_digit_minors(n: usize, terms: &[(i64, &[(&str, &str)])]) -> Self {
        let terms = terms
            .iter()
            .map(|(c, fs)| {
                (
                    *c,
                    fs.iter()
                        .map(|(r, c)| (IndexSet::from_digits(r), IndexSet::from_digits(c)))
                        .collect(),
                )
            })
            .collect();
        Self::from_m_minors(n, terms).expect("valid digit minors")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Row and column sets of the ordinary minor behind a factor.
    pub fn m_sets(&self, f: &Factor) -> (IndexSet, IndexSet) {
        match self.representation {
            Representation::Delta => (f.i.complement(self.n), f.j.complement(self.n)),
            Representation::Entry => (f.i.clone(), f.j.clone()),
        }
    }

    /// Uniform factor count, if every term has the same number of factors.
    pub fn factor_count(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(|t| t.factors.len());
        let first = it.next()?;
        it.all(|f| f == first).then_some(first)
    }

    /// Δ-polynomials with a uniform factor count can be propagated.
    pub fn is_propagatable(&self) -> bool {
        self.representation == Representation::Delta && self.factor_count().is_some()
    }

    fn term_degree(&self, t: &Term) -> usize {
        t.factors.iter().map(|f| self.m_sets(f).0.len()).sum()
    }

    /// Common degree of all terms, if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(|t| self.term_degree(t));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn term_weight(&self, t: &Term) -> Weight {
        let mut lambda = vec![0; self.n];
        let mut mu = vec![0; self.n];
        for f in &t.factors {
            let (r, c) = self.m_sets(f);
            for i in r.iter() {
                lambda[i - 1] += 1;
            }
            for j in c.iter() {
                mu[j - 1] += 1;
            }
        }
        Weight { lambda, mu }
    }

    /// The torus weight shared by all terms, if there is one.
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.iter().map(|t| self.term_weight(t));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn is_weight_vector(&self) -> bool {
        self.weight().is_some()
    }

    /// Matrix positions `(row, col)` whose variables occur in some factor.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = std::collections::BTreeSet::new();
        for t in &self.terms {
            for f in &t.factors {
                let (r, c) = self.m_sets(f);
                for i in r.iter() {
                    for j in c.iter() {
                        out.insert((i, j));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// The same Δ-symbols read on `Mat_{n+q}`; degree grows by `f·q`.
    pub fn propagate(&self, q: usize) -> Result<Self> {
        if self.representation != Representation::Delta {
            return Err(Error::Precondition("only Δ-polynomials propagate".into()));
        }
        if self.factor_count().is_none() {
            return Err(Error::Precondition("terms have different factor counts".into()));
        }
        Ok(MinorPolynomial {
            n: self.n + q,
            representation: Representation::Delta,
            terms: self.terms.clone(),
        })
    }

    /// `Σ coeff · ∏ factor(M)`; each distinct minor is computed once.
    pub fn evaluate(&self, m: &ExactMatrix) -> Result<ExactScalar> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::Dimension(format!(
                "polynomial on Mat_{} evaluated at a {}x{} matrix",
                self.n,
                m.nrows(),
                m.ncols()
            )));
        }
        let mut cache: HashMap<&Factor, ExactScalar> = HashMap::new();
        let mut acc = ExactScalar::zero();
        for t in &self.terms {
            let mut p = ExactScalar::rational(t.coeff.clone());
            for f in &t.factors {
                let v = match cache.get(f) {
                    Some(v) => v.clone(),
                    None => {
                        let (r, c) = self.m_sets(f);
                        let v = m.minor(&r, &c)?;
                        cache.insert(f, v.clone());
                        v
                    }
                };
                if v.is_zero() {
                    p = ExactScalar::zero();
                    break;
                }
                p = p.try_mul(&v)?;
            }
            acc = acc.try_add(&p)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "coeff": fmt_rational(&t.coeff),
                    "factors": t.factors.iter().map(|f| json!({"I": f.i, "J": f.j})).collect::<Vec<_>>()
                })
            })
            .collect();
        let rep = match self.representation {
            Representation::Delta => "delta",
            Representation::Entry => "entry",
        };
        json!({"n": self.n, "representation": rep, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing n".into()))? as usize;
        let representation = match v.get("representation").and_then(Value::as_str) {
            Some("delta") => Representation::Delta,
            Some("entry") => Representation::Entry,
            other => return Err(Error::Parse(format!("bad representation {other:?}"))),
        };
        let mut terms = Vec::new();
        for t in v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing terms".into()))?
        {
            let coeff = parse_rational(
                t.get("coeff")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("term without coeff".into()))?,
            )?;
            let mut factors = Vec::new();
            for f in t
                .get("factors")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term without factors".into()))?
            {
                let set = |k: &str| -> Result<IndexSet> {
                    let raw: Vec<usize> = serde_json::from_value(
                        f.get(k).cloned().ok_or_else(|| Error::Parse(format!("factor without {k}")))?,
                    )
                    .map_err(|e| Error::Parse(e.to_string()))?;
                    IndexSet::new(raw, n)
                };
                factors.push(Factor { i: set("I")?, j: set("J")? });
            }
            terms.push(Term { coeff, factors });
        }
        Self::new(n, representation, terms)
    }
}

impl fmt::Display for MinorPolynomial {
    /// Δ-polynomials print as `D^{I}_{J}`, entry polynomials as `M^{I}_{J}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.representation {
            Representation::Delta => "D",
            Representation::Entry => "M",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = t.coeff.abs();
            if !a.is_one() || t.factors.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            }
            for fa in &t.factors {
                write!(f, "{sym}^{{{}}}_{{{}}}", fa.i, fa.j)?;
            }
        }
        Ok(())
    }
}

/// Sign of the entry `(i, j)` in the Laplace expansion of `M^R_C`.
pub(crate) fn cofactor_sign(r: &IndexSet, c: &IndexSet, i: usize, j: usize) -> i64 {
    let p = r.position(i).expect("row in minor") + c.position(j).expect("column in minor");
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn term(coeff: i64, factors: Vec<Factor>) -> Term {
    Term {
        coeff: BigRational::from_integer(coeff.into()),
        factors,
    }
}
