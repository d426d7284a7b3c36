use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Certificate, RigidityBound};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;

/// Fractional bits of the `log₂` enclosure.
const BITS: u32 = 32;
/// Fixed-point precision of the intermediate squarings.
const WORK: u64 = 96;

/// `lo ≤ log₂(q) ≤ hi` with `hi - lo ≤ 2^-32`, for rational `q ≥ 1`.
///
/// After scaling to `y ∈ [1, 2)` the fractional bits are read off by repeated
/// squaring in fixed point, rounding down for `lo` and up for `hi`.
pub fn log2_enclosure(q: &BigRational) -> Result<(BigRational, BigRational)> {
    if q < &BigRational::one() {
        return Err(Error::InvalidArgument(format!("log₂ enclosure needs q ≥ 1, got {q}")));
    }
    let (num, den) = (q.numer().clone(), q.denom().clone());
    let mut k: i64 = num.bits() as i64 - den.bits() as i64;
    let two = BigRational::from_integer(2.into());
    let pow2 = |e: i64| {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    while q / pow2(k) >= two {
        k += 1;
    }
    while q / pow2(k) < BigRational::one() {
        k -= 1;
    }
    let y = q / pow2(k);
    let one_fp = BigInt::one() << WORK as usize;
    let two_fp = &one_fp << 1usize;
    let scaled = y * BigRational::from_integer(one_fp.clone());
    let frac_bits = |round_up: bool| -> BigInt {
        let mut z = if round_up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
        let mut bits = BigInt::zero();
        for _ in 0..BITS {
            let sq = &z * &z;
            let (mut nz, rem) = sq.div_rem(&one_fp);
            if round_up && !rem.is_zero() {
                nz += 1;
            }
            bits <<= 1usize;
            if nz >= two_fp {
                bits += 1;
                let (h, rem) = nz.div_rem(&BigInt::from(2));
                nz = if round_up && !rem.is_zero() { h + 1 } else { h };
            }
            z = nz;
        }
        bits
    };
    let denom = BigInt::one() << BITS as usize;
    let lo = BigRational::from_integer(k.into()) + BigRational::new(frac_bits(false), denom.clone());
    let hi = BigRational::from_integer(k.into()) + BigRational::new(frac_bits(true) + 1, denom);
    Ok((lo, hi))
}

/// Enclosure of `n²/(4(r+1)) · log₂(n/r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Threshold {
    pub lower: BigRational,
    pub upper: BigRational,
    /// `r ≥ (log₂ n)²`, certified with the upper enclosure of `log₂ n`.
    pub applicable: bool,
}

impl Threshold {
    /// `Rig_r(M) ≥` this value when all `r × r` minors are nonzero.
    pub fn rigidity_floor(&self) -> usize {
        self.lower.ceil().to_integer().to_usize().unwrap_or(0)
    }
}

pub fn shokrollahi_threshold(n: usize, r: usize) -> Result<Threshold> {
    if r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ r < n, got n = {n}, r = {r}")));
    }
    let factor = BigRational::new(BigInt::from(n * n), BigInt::from(4 * (r + 1)));
    let (lo, hi) = log2_enclosure(&BigRational::new(n.into(), r.into()))?;
    let (_, log_n_hi) = log2_enclosure(&BigRational::from_integer(n.into()))?;
    Ok(Threshold {
        lower: &factor * lo,
        upper: &factor * hi,
        applicable: &log_n_hi * &log_n_hi <= BigRational::from_integer(r.into()),
    })
}

/// The minors-nonzero lower bound, claimed only inside its hypotheses.
pub fn threshold_lower(m: &ExactMatrix, r: usize) -> Result<RigidityBound> {
    let n = m.nrows();
    let mut b = RigidityBound::trivial(m, r);
    if r == 0 || r >= n || !m.is_square() {
        return Ok(b);
    }
    let t = shokrollahi_threshold(n, r)?;
    if !t.applicable {
        b.notes.push(format!("threshold bound needs r ≥ (log₂ n)²; not applied at n = {n}, r = {r}"));
        return Ok(b);
    }
    if !m.all_minors_nonzero(r)? {
        b.notes.push(format!("some {r}×{r} minor vanishes; threshold bound not applied"));
        return Ok(b);
    }
    let floor = t.rigidity_floor();
    b.lower = floor;
    b.lower_certificates.push(Certificate::MinorsNonzero { size: r, threshold_floor: floor });
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exact_powers() {
        let (lo, hi) = log2_enclosure(&q(4, 1)).unwrap();
        assert_eq!(lo, q(2, 1));
        assert!(hi > lo && &hi - &lo <= q(1, 1 << 32));
        let t = shokrollahi_threshold(8, 2).unwrap();
        assert_eq!(t.lower, q(32, 3));
        assert_eq!(shokrollahi_threshold(4, 1).unwrap().lower, q(4, 1));
        assert_eq!(shokrollahi_threshold(4, 1).unwrap().rigidity_floor(), 4);
    }

    #[test]
    fn small_for_r_near_n() {
        for n in 2..8 {
            assert!(shokrollahi_threshold(n, n - 1).unwrap().upper < q(n as i64, 1));
        }
        assert!(shokrollahi_threshold(4, 4).is_err());
        assert!(!shokrollahi_threshold(8, 2).unwrap().applicable);
        assert!(shokrollahi_threshold(32, 30).unwrap().applicable);
    }

    proptest! {
        #[test]
        fn encloses_f64(a in 1i64..10_000, b in 1i64..100) {
            prop_assume!(a >= b);
            let (lo, hi) = log2_enclosure(&q(a, b)).unwrap();
            let x = (a as f64 / b as f64).log2();
            let lo = lo.to_f64().unwrap();
            let hi = hi.to_f64().unwrap();
            prop_assert!(lo <= x + 1e-12 && x <= hi + 1e-12);
            prop_assert!(hi - lo <= 2.0f64.powi(-31));
        }
    }
}
