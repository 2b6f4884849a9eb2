//! Certified digit extraction from a rational bracket via the Gauss map.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{CfError, Result};
use crate::numeric::lt_q;
use crate::word::CFWord;

/// Why a certified expansion stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionStatus {
    ReachedMax,
    /// The two endpoints disagree on the next digit.
    PrecisionExhausted,
    /// The bracket was a single rational whose expansion ended.
    TerminatedRational,
}

/// Gauss-map state over a bracket `[lo, hi]`.
///
/// A digit is emitted only when every irrational in the open bracket has it,
/// i.e. when `(1/hi, 1/lo)` contains no integer. A degenerate bracket
/// `lo == hi` runs Euclid's algorithm on the point. Endpoints are kept as
/// integer pairs `num/den`; the map `x -> 1/x - k` is a Euclid step on each
/// pair, so no gcd reductions are needed.
#[derive(Clone, Debug)]
pub(crate) struct GaussBracket {
    lo: (BigUint, BigUint),
    hi: (BigUint, BigUint),
    point: bool,
    stopped: Option<ExpansionStatus>,
}

fn parts(x: &BigRational) -> (BigUint, BigUint) {
    (x.numer().magnitude().clone(), x.denom().magnitude().clone())
}

impl GaussBracket {
    pub(crate) fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if !lo.is_positive() || lt_q(&hi, &lo) || lt_q(&BigRational::one(), &hi) {
            return Err(CfError::domain(format!(
                "bracket [{lo}, {hi}] must satisfy 0 < lo <= hi <= 1"
            )));
        }
        Ok(GaussBracket {
            point: lo.numer() == hi.numer() && lo.denom() == hi.denom(),
            lo: parts(&lo),
            hi: parts(&hi),
            stopped: None,
        })
    }

    pub(crate) fn next_digit(&mut self) -> std::result::Result<BigUint, ExpansionStatus> {
        if let Some(status) = self.stopped {
            return Err(status);
        }
        let step = if self.point {
            self.point_step()
        } else {
            self.interval_step()
        };
        if let Err(status) = step {
            self.stopped = Some(status);
        }
        step
    }

    fn point_step(&mut self) -> std::result::Result<BigUint, ExpansionStatus> {
        let (num, den) = std::mem::take(&mut self.lo);
        if num.is_zero() {
            return Err(ExpansionStatus::TerminatedRational);
        }
        let (k, r) = quot_rem(den, &num);
        self.lo = (r, num);
        Ok(k)
    }

    fn interval_step(&mut self) -> std::result::Result<BigUint, ExpansionStatus> {
        if self.lo.0.is_zero() {
            return Err(ExpansionStatus::PrecisionExhausted);
        }
        let (lo_num, mut lo_den) = std::mem::take(&mut self.lo);
        let (hi_num, hi_den) = std::mem::take(&mut self.hi);
        // k = floor(1/hi); the digit is certified iff 1/lo - k <= 1.
        let (k, hi_rem) = quot_rem(hi_den, &hi_num);
        lo_den -= &k * &lo_num;
        if lo_den > lo_num {
            return Err(ExpansionStatus::PrecisionExhausted);
        }
        // x -> 1/x - k reverses the order of the endpoints.
        self.lo = (hi_rem, hi_num);
        self.hi = (lo_den, lo_num);
        Ok(k)
    }
}

/// `(den / num, den % num)`; small quotients by repeated subtraction.
fn quot_rem(mut den: BigUint, num: &BigUint) -> (BigUint, BigUint) {
    if den.bits() > num.bits() + 3 {
        return den.div_rem(num);
    }
    let mut k = 0u32;
    while &den >= num {
        den -= num;
        k += 1;
    }
    (BigUint::from(k), den)
}

/// Expands the irrationals of `(lo, hi)` (or the single rational `lo == hi`)
/// for at most `max_digits` digits. Every emitted digit is shared by every
/// irrational in the bracket.
pub fn expand_certified(
    lo: &BigRational,
    hi: &BigRational,
    max_digits: usize,
) -> Result<(CFWord, ExpansionStatus)> {
    let mut bracket = GaussBracket::new(lo.clone(), hi.clone())?;
    let mut digits = Vec::new();
    while digits.len() < max_digits {
        match bracket.next_digit() {
            Ok(d) => digits.push(d),
            Err(status) => return Ok((CFWord::from_vec_unchecked(digits), status)),
        }
    }
    Ok((CFWord::from_vec_unchecked(digits), ExpansionStatus::ReachedMax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_rational;
    use crate::word::rational_to_cf;

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn exact_rational_terminates() {
        let (word, status) = expand_certified(&r("2/3"), &r("2/3"), 10).unwrap();
        assert_eq!(word, CFWord::from_u64s(&[1, 2]).unwrap());
        assert_eq!(status, ExpansionStatus::TerminatedRational);
    }

    /// Brute-force oracle: the digits shared by every rational strictly
    /// inside a bracket on a fine grid.
    fn shared_prefix_len(lo: &BigRational, hi: &BigRational, samples: u32) -> usize {
        let mut common: Option<Vec<BigUint>> = None;
        for i in 1..samples {
            let t = BigRational::new(i.into(), samples.into());
            let x = lo + (hi - lo) * t;
            let digits = rational_to_cf(&x).unwrap().into_digits();
            common = Some(match common {
                None => digits,
                Some(c) => c
                    .into_iter()
                    .zip(digits)
                    .take_while(|(a, b)| a == b)
                    .map(|(a, _)| a)
                    .collect(),
            });
        }
        common.unwrap().len()
    }

    #[test]
    fn fibonacci_bracket_exhausts() {
        // 987/1597 < 610/987: consecutive convergents of the golden ratio,
        // the endpoints of the rank-15 interval of (1, 1, ..., 1).
        let (lo, hi) = (r("987/1597"), r("610/987"));
        let (word, status) = expand_certified(&lo, &hi, 20).unwrap();
        assert_eq!(status, ExpansionStatus::PrecisionExhausted);
        assert!(word.digits().iter().all(|d| d.is_one()));
        assert_eq!(word.len(), 15);
        assert_eq!(shared_prefix_len(&lo, &hi, 997), word.len());
    }

    #[test]
    fn first_digit_in_one_third_one_half() {
        let lo = r("1/3") + r("1/1000000");
        let hi = r("1/3") + r("2/1000000");
        let (word, _) = expand_certified(&lo, &hi, 5).unwrap();
        assert_eq!(word.get(1).unwrap(), &BigUint::from(2u32));
    }

    #[test]
    fn respects_max_digits() {
        let (word, status) = expand_certified(&r("1/1000000"), &r("1/1000000"), 0).unwrap();
        assert!(word.is_empty());
        assert_eq!(status, ExpansionStatus::ReachedMax);
    }

    #[test]
    fn bad_brackets() {
        assert!(expand_certified(&r("0"), &r("1/2"), 3).is_err());
        assert!(expand_certified(&r("1/2"), &r("1/3"), 3).is_err());
        assert!(expand_certified(&r("1/2"), &r("3/2"), 3).is_err());
    }

    #[test]
    fn open_boundary_at_reciprocal_integer() {
        // (1/3, 1/2): every irrational has a_1 = 2, and nothing further is certified.
        let (word, status) = expand_certified(&r("1/3"), &r("1/2"), 5).unwrap();
        assert_eq!(word, CFWord::from_u64s(&[2]).unwrap());
        assert_eq!(status, ExpansionStatus::PrecisionExhausted);
    }
}
