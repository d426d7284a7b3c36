//! Cyclotomic fields `Q(ω_m) = Q[x]/(Φ_m(x))` in the power basis.
//!
//! `Φ_m` is obtained by exact division of `x^m - 1` by every `Φ_d` with `d | m`,
//! `d < m`. Fields are interned per conductor so that elements can share the
//! reduction data.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    /// Monic `Φ_m`, coefficients from low to high degree.
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(m)`, the number of power-basis coefficients.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_m`.
    pub fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        if coeffs.len() > d {
            for top in (d..coeffs.len()).rev() {
                if coeffs[top].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut coeffs[top], BigRational::zero());
                let base = top - d;
                for (j, m) in self.modulus[..d].iter().enumerate() {
                    if !m.is_zero() {
                        coeffs[base + j] -= &c * BigRational::from_integer(m.clone());
                    }
                }
            }
            coeffs.truncate(d);
        }
        coeffs.resize(d, BigRational::zero());
        coeffs
    }

    /// Coefficients of `x^e` reduced into the field.
    pub fn monomial(&self, e: u64) -> Vec<BigRational> {
        let m = self.conductor as u64;
        let e = (e % m) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        self.reduce(v)
    }
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CyclotomicField>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The interned field of conductor `m`.
///
/// # Panics
/// Panics if `m == 0`.
pub fn field(m: u32) -> Arc<CyclotomicField> {
    assert!(m > 0, "conductor must be positive");
    if let Some(f) = FIELDS.lock().unwrap().get(&m) {
        return f.clone();
    }
    let f = Arc::new(CyclotomicField {
        conductor: m,
        modulus: cyclotomic_polynomial(m),
    });
    FIELDS.lock().unwrap().entry(m).or_insert(f).clone()
}

/// Integer coefficients of `Φ_m`, low to high.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            p = exact_div_monic(&p, field(d).modulus());
        }
    }
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

// Dense univariate helpers over Q, low-to-high coefficients.

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_sub_scaled(a: &mut Vec<BigRational>, b: &[BigRational], c: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (j, bj) in b.iter().enumerate() {
        if !bj.is_zero() {
            a[j + shift] -= c * bj;
        }
    }
    trim(a);
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        poly_sub_scaled(&mut r, b, &c, shift);
        q[shift] = c;
    }
    trim(&mut q);
    (q, r)
}

/// Inverse of a nonzero element `a` of `Q[x]/(f)` by the extended Euclidean
/// algorithm. `f` must be irreducible.
pub(crate) fn invert_mod(a: &[BigRational], f: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    if r1.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r) = poly_divrem(&r0, &r1);
        let mut t2 = t0.clone();
        let qt = poly_mul(&q, &t1);
        poly_sub_scaled(&mut t2, &qt, &BigRational::one(), 0);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
        if r1.is_empty() {
            // gcd has positive degree: f was not irreducible or a shares a factor.
            return Err(Error::DivisionByZero);
        }
    }
    let c = r1[0].clone();
    let mut inv: Vec<BigRational> = t1.into_iter().map(|x| x / &c).collect();
    trim(&mut inv);
    Ok(inv)
}

pub(crate) fn modulus_as_rational(field: &CyclotomicField) -> Vec<BigRational> {
    field
        .modulus
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

pub(crate) fn mul_reduce(
    field: &CyclotomicField,
    a: &[BigRational],
    b: &[BigRational],
) -> Vec<BigRational> {
    field.reduce(poly_mul(a, b))
}

/// Maps `Σ c_i x^i` to `Σ c_i x^{i·k}` and reduces into `target`.
pub(crate) fn substitute_power(
    coeffs: &[BigRational],
    k: u64,
    target: &CyclotomicField,
) -> Vec<BigRational> {
    let m = target.conductor() as u64;
    let mut v = vec![BigRational::zero(); m as usize];
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            v[((i as u64) * k % m) as usize] += c;
        }
    }
    target.reduce(v)
}

pub(crate) fn is_rational_valued(coeffs: &[BigRational]) -> bool {
    coeffs.iter().skip(1).all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..40 {
            assert_eq!(field(m).degree() as u32, totient(m), "m = {m}");
        }
    }

    #[test]
    fn phi_105_has_a_coefficient_two() {
        // First cyclotomic polynomial with a coefficient outside {-1, 0, 1}.
        let p = cyclotomic_polynomial(105);
        assert!(p.iter().any(|c| c == &BigInt::from(-2)));
    }
}
