//! Seeded sampling of uniformly distributed irrationals.
//!
//! A sample is the dyadic bracket `(m/2^B, (m+1)/2^B)` with `m` uniform in
//! `1..2^B`. Its certified expansion is the common prefix of every irrational
//! in the bracket. Each `(seed, index)` pair selects its own ChaCha stream, so
//! samples are reproducible individually and in any order.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CfError, Result};
use crate::stream::DigitStream;

pub const MIN_SAMPLE_BITS: u32 = 64;

pub(crate) fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn uniform_below_pow2(rng: &mut ChaCha8Rng, bits: u32) -> BigUint {
    let nbytes = (bits as usize).div_ceil(8);
    let mut buf = vec![0u8; nbytes];
    rng.fill_bytes(&mut buf);
    let excess = nbytes * 8 - bits as usize;
    if excess > 0 {
        buf[nbytes - 1] &= 0xff >> excess;
    }
    BigUint::from_bytes_le(&buf)
}

/// The dyadic bracket of width `2^-bits` for sample `(seed, index)`.
pub fn uniform_bracket(seed: u64, index: u64, bits: u32) -> (BigRational, BigRational) {
    let mut rng = rng_for(seed, index);
    let m = loop {
        let m = uniform_below_pow2(&mut rng, bits);
        if !m.is_zero() {
            break m;
        }
    };
    let hi = dyadic(m.clone() + 1u32, bits);
    (dyadic(m, bits), hi)
}

/// `m / 2^bits` in lowest terms, for `m > 0`.
fn dyadic(m: BigUint, bits: u32) -> BigRational {
    let twos = m.trailing_zeros().unwrap_or(0).min(u64::from(bits));
    BigRational::new_raw(
        BigInt::from(m >> twos),
        BigInt::one() << (u64::from(bits) - twos),
    )
}

/// A certified stream for a uniform random point of `(0, 1)`.
pub fn sample_irrational(seed: u64, index: u64, bits: u32) -> Result<DigitStream> {
    if bits < MIN_SAMPLE_BITS {
        return Err(CfError::domain(format!(
            "sampling needs at least {MIN_SAMPLE_BITS} bits, got {bits}"
        )));
    }
    let (lo, hi) = uniform_bracket(seed, index, bits);
    DigitStream::certified(lo, hi)
}

#[cfg(test)]
mod tests {
    #[test]
    fn dyadic_endpoints_are_reduced() {
        for m in [1u32, 2, 12, 255, 256, 1 << 20] {
            let x = dyadic(BigUint::from(m), 64);
            let reduced = BigRational::new(BigInt::from(m), BigInt::one() << 64u32);
            assert_eq!((x.numer(), x.denom()), (reduced.numer(), reduced.denom()));
        }
    }

    use super::*;
    use crate::stream::StreamEnd;

    #[test]
    fn deterministic_per_seed_and_index() {
        let a = sample_irrational(9, 3, 256).unwrap();
        let b = sample_irrational(9, 3, 256).unwrap();
        assert_eq!(a.prefix_upto(100).0, b.prefix_upto(100).0);
        assert_ne!(uniform_bracket(9, 3, 256), uniform_bracket(9, 4, 256));
        assert_ne!(uniform_bracket(9, 3, 256), uniform_bracket(10, 3, 256));
    }

    #[test]
    fn seed_42_yields_enough_digits() {
        let s = sample_irrational(42, 0, 256).unwrap();
        let (word, end) = s.prefix_upto(10_000);
        assert_eq!(end, Some(StreamEnd::Exhausted));
        assert!(word.len() >= 60, "only {} digits", word.len());
    }

    #[test]
    fn random_kind_matches_index_zero() {
        let r = DigitStream::random(5, 128).unwrap();
        let s = sample_irrational(5, 0, 128).unwrap();
        assert_eq!(r.prefix_upto(1000), s.prefix_upto(1000));
    }

    #[test]
    fn too_few_bits() {
        assert!(sample_irrational(1, 1, 63).is_err());
    }

    #[test]
    fn first_digit_law() {
        // a_1 = k exactly on (1/(k+1), 1/k], so P(a_1 = k) = 1/(k(k+1)).
        let n = 10_000u64;
        let kmax = 8usize;
        let mut counts = vec![0u64; kmax + 1];
        for i in 0..n {
            let d = crate::stream::digit_at(&sample_irrational(2024, i, 64).unwrap(), 1).unwrap();
            let k = usize::try_from(&d).unwrap_or(usize::MAX).min(kmax);
            counts[k] += 1;
        }
        let mut chi2 = 0.0;
        for (k, &observed) in counts.iter().enumerate().skip(1) {
            let p = if k < kmax {
                1.0 / (k as f64 * (k as f64 + 1.0))
            } else {
                1.0 / kmax as f64
            };
            let expected = p * n as f64;
            chi2 += (observed as f64 - expected).powi(2) / expected;
        }
        let dof = (kmax - 1) as f64;
        assert!(chi2 <= dof + 3.0 * (2.0 * dof).sqrt(), "chi2 = {chi2}");
    }
}
