//! Exact scalars: big rationals and elements of cyclotomic fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{
    field, invert_mod, is_rational_valued, modulus_as_rational, mul_reduce, substitute_power,
    CyclotomicField,
};
use crate::error::{Error, Result};

/// A rational number or an element of `Q(ω_m)` in the power basis.
///
/// Arithmetic between two cyclotomic values needs equal conductors; rationals
/// combine with anything. Use [`ExactScalar::coerce_to`] to lift explicitly.
#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rational(BigRational),
    Cyclotomic {
        field: Arc<CyclotomicField>,
        coeffs: Vec<BigRational>,
    },
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        ExactScalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `p / q`.
    ///
    /// # Panics
    /// Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        ExactScalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(v: BigRational) -> Self {
        ExactScalar::Rational(v)
    }

    /// Element of `Q(ω_m)` from power-basis coefficients of any length; the
    /// vector is reduced modulo `Φ_m`.
    pub fn cyclotomic(m: u32, coeffs: Vec<BigRational>) -> Self {
        let f = field(m);
        let coeffs = f.reduce(coeffs);
        ExactScalar::Cyclotomic { field: f, coeffs }
    }

    /// The class of `x` in `Q[x]/(Φ_m)`, a primitive `m`-th root of unity.
    pub fn root_of_unity(m: u32) -> Self {
        let f = field(m);
        let coeffs = f.monomial(1);
        ExactScalar::Cyclotomic { field: f, coeffs }
    }

    /// `ω_m^e` for any integer exponent.
    pub fn root_power(m: u32, e: i64) -> Self {
        let f = field(m);
        let coeffs = f.monomial(e.rem_euclid(m as i64) as u64);
        ExactScalar::Cyclotomic { field: f, coeffs }
    }

    /// `None` for rationals.
    pub fn conductor(&self) -> Option<u32> {
        match self {
            ExactScalar::Rational(_) => None,
            ExactScalar::Cyclotomic { field, .. } => Some(field.conductor()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(q) => q.is_zero(),
            ExactScalar::Cyclotomic { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            ExactScalar::Rational(q) => Some(q.clone()),
            ExactScalar::Cyclotomic { coeffs, .. } => {
                if is_rational_valued(coeffs) {
                    Some(coeffs.first().cloned().unwrap_or_else(BigRational::zero))
                } else {
                    None
                }
            }
        }
    }

    /// Power-basis coefficients (a single entry for rationals).
    pub fn coefficients(&self) -> Vec<BigRational> {
        match self {
            ExactScalar::Rational(q) => vec![q.clone()],
            ExactScalar::Cyclotomic { coeffs, .. } => coeffs.clone(),
        }
    }

    /// Lifts into `Q(ω_m)`; requires the current conductor to divide `m`.
    pub fn coerce_to(&self, m: u32) -> Result<Self> {
        match self {
            ExactScalar::Rational(q) => Ok(ExactScalar::cyclotomic(m, vec![q.clone()])),
            ExactScalar::Cyclotomic { field: f, coeffs } => {
                let c = f.conductor();
                if c == m {
                    return Ok(self.clone());
                }
                if m % c != 0 {
                    return Err(Error::NotASubfield { from: c, to: m });
                }
                let target = field(m);
                let coeffs = substitute_power(coeffs, (m / c) as u64, &target);
                Ok(ExactScalar::Cyclotomic {
                    field: target,
                    coeffs,
                })
            }
        }
    }

    /// The automorphism `ω ↦ ω^k`, `gcd(k, m) = 1`. Identity on rationals.
    pub fn galois(&self, k: i64) -> Result<Self> {
        match self {
            ExactScalar::Rational(_) => Ok(self.clone()),
            ExactScalar::Cyclotomic { field: f, coeffs } => {
                let m = f.conductor() as i64;
                let k = k.rem_euclid(m);
                if k.gcd(&m) != 1 {
                    return Err(Error::InvalidArgument(format!(
                        "exponent {k} is not a unit modulo {m}"
                    )));
                }
                Ok(ExactScalar::Cyclotomic {
                    field: f.clone(),
                    coeffs: substitute_power(coeffs, k as u64, f),
                })
            }
        }
    }

    /// Complex conjugation, `ω ↦ ω^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    fn binary(
        &self,
        other: &Self,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        cyc: impl Fn(&Arc<CyclotomicField>, &[BigRational], &[BigRational]) -> Result<Vec<BigRational>>,
    ) -> Result<Self> {
        use ExactScalar::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Ok(Rational(rat(a, b))),
            (Cyclotomic { field: f, coeffs: a }, Rational(b)) => {
                let b = f.reduce(vec![b.clone()]);
                Ok(Cyclotomic {
                    field: f.clone(),
                    coeffs: cyc(f, a, &b)?,
                })
            }
            (Rational(a), Cyclotomic { field: f, coeffs: b }) => {
                let a = f.reduce(vec![a.clone()]);
                Ok(Cyclotomic {
                    field: f.clone(),
                    coeffs: cyc(f, &a, b)?,
                })
            }
            (Cyclotomic { field: f, coeffs: a }, Cyclotomic { field: g, coeffs: b }) => {
                if f.conductor() != g.conductor() {
                    return Err(Error::ConductorMismatch(f.conductor(), g.conductor()));
                }
                Ok(Cyclotomic {
                    field: f.clone(),
                    coeffs: cyc(f, a, b)?,
                })
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.binary(
            other,
            |a, b| a + b,
            |_, a, b| Ok(a.iter().zip(b).map(|(x, y)| x + y).collect()),
        )
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.binary(
            other,
            |a, b| a - b,
            |_, a, b| Ok(a.iter().zip(b).map(|(x, y)| x - y).collect()),
        )
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if let (ExactScalar::Rational(q), c) | (c, ExactScalar::Rational(q)) = (self, other) {
            return Ok(c.scale(q));
        }
        self.binary(other, |a, b| a * b, |f, a, b| Ok(mul_reduce(f, a, b)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            ExactScalar::Rational(q) => Ok(ExactScalar::Rational(q.recip())),
            ExactScalar::Cyclotomic { field: f, coeffs } => {
                let inv = invert_mod(coeffs, &modulus_as_rational(f))?;
                Ok(ExactScalar::Cyclotomic {
                    field: f.clone(),
                    coeffs: f.reduce(inv),
                })
            }
        }
    }

    /// Multiplication by a rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        match self {
            ExactScalar::Rational(a) => ExactScalar::Rational(a * q),
            ExactScalar::Cyclotomic { field, coeffs } => ExactScalar::Cyclotomic {
                field: field.clone(),
                coeffs: coeffs.iter().map(|c| c * q).collect(),
            },
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ExactScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Value equality after lifting both sides to a common conductor.
    pub fn value_eq(&self, other: &Self) -> bool {
        match (self.conductor(), other.conductor()) {
            (None, None) | (Some(_), None) | (None, Some(_)) => {
                match (self.as_rational(), other.as_rational()) {
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                }
            }
            (Some(a), Some(b)) => {
                let l = a.lcm(&b);
                let x = self.coerce_to(l).expect("lcm is a multiple");
                let y = other.coerce_to(l).expect("lcm is a multiple");
                x.coefficients() == y.coefficients()
            }
        }
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.value_eq(other)
    }
}

impl Eq for ExactScalar {}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(v: BigRational) -> Self {
        ExactScalar::Rational(v)
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        ExactScalar::zero()
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.scale(&-BigRational::one())
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
    }
}

impl fmt::Display for ExactScalar {
    /// Rationals print as `p/q`; cyclotomic values as a polynomial in `w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(q) => write!(f, "{}", fmt_rational(q)),
            ExactScalar::Cyclotomic { coeffs, .. } => {
                let mut first = true;
                for (e, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let a = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { "-" } else { "+" })?;
                    }
                    first = false;
                    let mono = match e {
                        0 => String::new(),
                        1 => "w".to_string(),
                        _ => format!("w^{e}"),
                    };
                    if mono.is_empty() {
                        write!(f, "{}", fmt_rational(&a))?;
                    } else if a.is_one() {
                        write!(f, "{mono}")?;
                    } else {
                        write!(f, "{}*{mono}", fmt_rational(&a))?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}
