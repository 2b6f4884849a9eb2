//! Distances on sequence space, evaluated on truncated streams.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::stream::DigitStream;

/// Rigorous enclosure `lower <= d(a, b) <= upper` of the product-metric
/// distance `d(a,b) = sum_j 2^-j |a_j - b_j| / (|a_j - b_j| + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceEnclosure {
    pub lower: BigRational,
    pub upper: BigRational,
}

/// The ultrametric `d'(a,b) = 2^-|a ∧ b|`, or only an upper bound when the
/// streams agree through the inspected depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ultrametric {
    Exact(BigRational),
    AtMost(BigRational),
}

fn pow2_inv(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

fn absdiff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

pub fn distance_d(a: &DigitStream, b: &DigitStream, depth: usize) -> Result<DistanceEnclosure> {
    let wa = a.prefix(depth)?;
    let wb = b.prefix(depth)?;
    let mut lower = BigRational::zero();
    for (j, (x, y)) in wa.digits().iter().zip(wb.digits()).enumerate() {
        let diff = absdiff(x, y);
        if diff.is_zero() {
            continue;
        }
        let term = BigRational::new(BigInt::from(diff.clone()), BigInt::from(diff + 1u32));
        lower += term * pow2_inv(j + 1);
    }
    let upper = &lower + pow2_inv(depth);
    Ok(DistanceEnclosure { lower, upper })
}

pub fn distance_dprime(a: &DigitStream, b: &DigitStream, depth: usize) -> Result<Ultrametric> {
    let wa = a.prefix(depth)?;
    let wb = b.prefix(depth)?;
    match wa.digits().iter().zip(wb.digits()).position(|(x, y)| x != y) {
        Some(common) => Ok(Ultrametric::Exact(pow2_inv(common))),
        None => Ok(Ultrametric::AtMost(pow2_inv(depth))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_rational;

    fn s(text: &str) -> DigitStream {
        text.parse().unwrap()
    }

    fn r(text: &str) -> BigRational {
        parse_rational(text).unwrap()
    }

    #[test]
    fn identical_streams() {
        let a = s("[;(1,2)]");
        let d = distance_d(&a, &a, 12).unwrap();
        assert_eq!(d.lower, r("0"));
        assert_eq!(d.upper, r("1/4096"));
        assert_eq!(
            distance_dprime(&a, &a, 16).unwrap(),
            Ultrametric::AtMost(r("1/65536"))
        );
    }

    #[test]
    fn single_mismatch_examples() {
        let ones = s("[;(1)]");
        let b = s("[1,2;(1)]");
        let d = distance_d(&ones, &b, 10).unwrap();
        assert_eq!(d.lower, r("1/8"));
        assert_eq!(distance_dprime(&ones, &b, 10).unwrap(), Ultrametric::Exact(r("1/2")));
        // d = d'/4 on this pair.
        assert_eq!(d.lower * r("4"), r("1/2"));

        let c = s("[2;(1)]");
        let d = distance_d(&ones, &c, 4).unwrap();
        assert_eq!((d.lower, d.upper), (r("1/4"), r("5/16")));
    }

    #[test]
    fn prefix_length_one() {
        let d = distance_dprime(&s("[1,2;(1)]"), &s("[1,3;(1)]"), 8).unwrap();
        assert_eq!(d, Ultrametric::Exact(r("1/2")));
    }

    #[test]
    fn exhaustion_propagates() {
        assert!(distance_d(&s("[1,2]"), &s("[;(1)]"), 3).is_err());
        assert!(distance_dprime(&s("[;(1)]"), &s("[1]"), 3).is_err());
    }
}
