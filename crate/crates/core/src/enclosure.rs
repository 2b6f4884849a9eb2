use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::convergent::{convergents, RankInterval};
use crate::error::{CfError, Result};
use crate::numeric::le_q;
use crate::stream::{DigitStream, StreamEnd};
use crate::word::{eval_finite, CFWord};

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn point(x: BigRational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        le_q(&self.lo, x) && le_q(x, &self.hi)
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        le_q(&self.lo, &other.lo) && le_q(&other.hi, &self.hi)
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        le_q(&self.lo, &other.hi) && le_q(&other.lo, &self.hi)
    }

    /// Interval difference `self - other`.
    pub fn minus(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    /// `|x|` over the interval, or `None` if the interval contains 0.
    pub fn abs_separated(&self) -> Option<Enclosure> {
        if self.lo.is_positive() {
            Some(self.clone())
        } else if self.hi.is_negative() {
            Some(Enclosure {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
            })
        } else {
            None
        }
    }
}

impl From<RankInterval> for Enclosure {
    fn from(r: RankInterval) -> Self {
        Enclosure { lo: r.lo, hi: r.hi }
    }
}

/// Closure of the rank interval of a prefix (depth 0 gives `[0, 1]`).
pub fn closure_of_prefix(prefix: &CFWord) -> Enclosure {
    RankInterval::from_table(&convergents(prefix)).into()
}

/// Encloses the value of a stream using its first `depth` digits. A stream
/// that terminates earlier is a rational and is returned as a point; an empty
/// terminated stream denotes 0 (the limit of an exploding first digit).
pub fn enclose_value(stream: &DigitStream, depth: usize) -> Result<Enclosure> {
    let (word, end) = stream.prefix_upto(depth);
    match end {
        None => Ok(closure_of_prefix(&word)),
        Some(StreamEnd::Terminated) if word.is_empty() => Ok(Enclosure::point(BigRational::zero())),
        Some(StreamEnd::Terminated) => Ok(Enclosure::point(eval_finite(&word)?)),
        Some(StreamEnd::Exhausted) => Err(CfError::Exhausted {
            available: word.len(),
        }),
    }
}
