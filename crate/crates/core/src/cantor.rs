//! Cantor's bijection `x = [a_1, a_2, ...] -> ([a_1, a_3, ...], [a_2, a_4, ...])`.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::convergent::{convergents, RankInterval};
use crate::enclosure::Enclosure;
use crate::error::{CfError, Result};
use crate::stream::{lcm, normalize_periodic, unroll_periodic, DigitStream, StreamKind};
use crate::text::format_rational;
use crate::word::{alternate_form, eval_finite, rational_to_cf, CFWord};

/// Odd- and even-indexed digit subsequences of a stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPair {
    pub odd_stream: DigitStream,
    pub even_stream: DigitStream,
}

/// Splits a stream into `(a_1, a_3, ...)` and `(a_2, a_4, ...)`.
///
/// Finite and periodic descriptors split into finite and periodic
/// descriptors; an interleaving splits back into its two sources.
pub fn split(a: &DigitStream) -> SplitPair {
    let (odd_stream, even_stream) = match a.kind() {
        StreamKind::Finite(w) => (
            DigitStream::finite(w.odd_part()),
            DigitStream::finite(w.even_part()),
        ),
        StreamKind::Periodic { preamble, period } => {
            let per_len = if period.len() % 2 == 0 {
                period.len()
            } else {
                2 * period.len()
            };
            let pre_len = preamble.len() + preamble.len() % 2;
            let (pre, per) = unroll_periodic(preamble.digits(), period.digits(), pre_len, per_len);
            let pre = CFWord::from_vec_unchecked(pre);
            let per = CFWord::from_vec_unchecked(per);
            (
                DigitStream::periodic(pre.odd_part(), per.odd_part()).expect("nonempty period"),
                DigitStream::periodic(pre.even_part(), per.even_part()).expect("nonempty period"),
            )
        }
        StreamKind::Interleaved(x, y) => (x.clone(), y.clone()),
        StreamKind::Prefixed { head, rest } => {
            let tail = split(rest);
            // After an odd-length head the tail's first digit lands on an even index.
            let (odd_tail, even_tail) = if head.len() % 2 == 0 {
                (tail.odd_stream, tail.even_stream)
            } else {
                (tail.even_stream, tail.odd_stream)
            };
            (
                DigitStream::prefixed(head.odd_part(), odd_tail),
                DigitStream::prefixed(head.even_part(), even_tail),
            )
        }
        _ => (DigitStream::odd_raw(a.clone()), DigitStream::even_raw(a.clone())),
    };
    SplitPair {
        odd_stream,
        even_stream,
    }
}

/// `c_{2k-1} = a_k`, `c_{2k} = b_k`; the inverse of [`split`].
pub fn interleave(a: &DigitStream, b: &DigitStream) -> DigitStream {
    match (a.kind(), b.kind()) {
        (StreamKind::Finite(x), StreamKind::Finite(y)) => {
            let mut digits = Vec::with_capacity(x.len() + y.len());
            let (xs, ys) = (x.digits(), y.digits());
            for k in 0.. {
                match xs.get(k) {
                    Some(d) => digits.push(d.clone()),
                    None => break,
                }
                match ys.get(k) {
                    Some(d) => digits.push(d.clone()),
                    None => break,
                }
            }
            DigitStream::finite(CFWord::from_vec_unchecked(digits))
        }
        (
            StreamKind::Periodic {
                preamble: pa,
                period: qa,
            },
            StreamKind::Periodic {
                preamble: pb,
                period: qb,
            },
        ) => {
            let pre_len = pa.len().max(pb.len());
            let per_len = lcm(qa.len(), qb.len());
            let (pa, qa) = unroll_periodic(pa.digits(), qa.digits(), pre_len, per_len);
            let (pb, qb) = unroll_periodic(pb.digits(), qb.digits(), pre_len, per_len);
            let zip = |x: Vec<_>, y: Vec<_>| {
                x.into_iter()
                    .zip(y)
                    .flat_map(|(u, v)| [u, v])
                    .collect::<Vec<_>>()
            };
            let (pre, per) = normalize_periodic(zip(pa, pb), zip(qa, qb));
            DigitStream::periodic(
                CFWord::from_vec_unchecked(pre),
                CFWord::from_vec_unchecked(per),
            )
            .expect("nonempty period")
        }
        (StreamKind::Odd(x), StreamKind::Even(y)) if x == y => x.clone(),
        _ => DigitStream::interleaved_raw(a.clone(), b.clone()),
    }
}

/// Digits of `f^{-1}(y1, y2)`.
pub fn inverse_digits(y1: &DigitStream, y2: &DigitStream) -> DigitStream {
    interleave(y1, y2)
}

/// Rank intervals of `f_1` and `f_2` forced by `n` known source digits:
/// ranks `ceil(n/2)` and `floor(n/2)`.
pub fn component_intervals(prefix: &CFWord) -> (RankInterval, RankInterval) {
    (
        RankInterval::from_table(&convergents(&prefix.odd_part())),
        RankInterval::from_table(&convergents(&prefix.even_part())),
    )
}

/// Enclosures of `f_1(x)` and `f_2(x)` from `2 * depth` source digits.
pub fn forward_value(x: &DigitStream, depth: usize) -> Result<(Enclosure, Enclosure)> {
    let (prefix, _) = x.prefix_upto(2 * depth);
    if prefix.len() < 2 * depth {
        return Err(CfError::DepthExhausted {
            max_depth: prefix.len() / 2,
        });
    }
    let (f1, f2) = component_intervals(&prefix);
    Ok((f1.into(), f2.into()))
}

/// One coordinate of a limit point in the discontinuity construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitCoordinate {
    /// The coordinate's expansion was cut by the exploding digit.
    Exact(BigRational),
    /// An infinite expansion; the value is irrational.
    Continued(DigitStream),
}

impl LimitCoordinate {
    fn from_stream(s: DigitStream) -> Result<Self> {
        match s.kind() {
            StreamKind::Finite(w) if w.is_empty() => Ok(LimitCoordinate::Exact(BigRational::default())),
            StreamKind::Finite(w) => Ok(LimitCoordinate::Exact(eval_finite(w)?)),
            _ => Ok(LimitCoordinate::Continued(s)),
        }
    }

    /// Decides `self != other`, using irrationality of infinite expansions.
    fn differs_from(&self, other: &LimitCoordinate) -> Result<bool> {
        use LimitCoordinate::*;
        match (self, other) {
            (Exact(x), Exact(y)) => Ok(x != y),
            (Exact(_), Continued(_)) | (Continued(_), Exact(_)) => Ok(true),
            (Continued(a), Continued(b)) if a.is_periodic() && b.is_periodic() => Ok(a != b),
            (Continued(a), Continued(b)) => {
                for depth in [64usize, 256, 1024] {
                    let ea = crate::enclosure::enclose_value(a, depth)?;
                    let eb = crate::enclosure::enclose_value(b, depth)?;
                    if !ea.intersects(&eb) {
                        return Ok(true);
                    }
                }
                Err(CfError::Precision(
                    "cannot separate the two limit coordinates".into(),
                ))
            }
        }
    }
}

impl fmt::Display for LimitCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitCoordinate::Exact(x) => f.write_str(&format_rational(x)),
            LimitCoordinate::Continued(s) => write!(f, "{s}"),
        }
    }
}

/// Two sequences converging to the same rational whose images under `f`
/// converge to different points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscontinuityWitness {
    pub rational_point: BigRational,
    pub canonical_word: CFWord,
    pub limit_along_canonical: [LimitCoordinate; 2],
    pub limit_along_alternate: [LimitCoordinate; 2],
}

/// `lim_{c -> inf} f([w, c, b_1, b_2, ...])`: the component holding position
/// `|w| + 1` stops at `w`, the other continues with `b_1, b_3, ...`.
fn exploding_limit(word: &CFWord, tail: &DigitStream) -> Result<[LimitCoordinate; 2]> {
    let tail_odd = split(tail).odd_stream;
    let (f1, f2) = if word.len().is_multiple_of(2) {
        (
            DigitStream::finite(word.odd_part()),
            DigitStream::prefixed(word.even_part(), tail_odd),
        )
    } else {
        (
            DigitStream::prefixed(word.odd_part(), tail_odd),
            DigitStream::finite(word.even_part()),
        )
    };
    Ok([LimitCoordinate::from_stream(f1)?, LimitCoordinate::from_stream(f2)?])
}

/// Limits of `f(x_j)` and `f(y_j)` for `x_j = [a_1..a_k, j + [b]]` and
/// `y_j = [a_1..a_k - 1, 1, j + [b]]`, both converging to `x = [a_1..a_k]`.
pub fn discontinuity_witness(x: &BigRational, tail: &DigitStream) -> Result<DiscontinuityWitness> {
    let zero = BigRational::default();
    if x <= &zero || x >= &BigRational::from_integer(1.into()) {
        return Err(CfError::domain(format!("{x} is not in (0,1)")));
    }
    let canonical_word = rational_to_cf(x)?;
    let alternate = alternate_form(&canonical_word)?;
    let limit_along_canonical = exploding_limit(&canonical_word, tail)?;
    let limit_along_alternate = exploding_limit(&alternate, tail)?;
    let differ = limit_along_canonical[0].differs_from(&limit_along_alternate[0])?
        || limit_along_canonical[1].differs_from(&limit_along_alternate[1])?;
    if !differ {
        return Err(CfError::domain(format!(
            "limits along both representations of {x} coincide for this tail"
        )));
    }
    Ok(DiscontinuityWitness {
        rational_point: x.clone(),
        canonical_word,
        limit_along_canonical,
        limit_along_alternate,
    })
}

impl DiscontinuityWitness {
    pub fn limits_differ(&self) -> bool {
        self.limit_along_canonical
            .iter()
            .zip(&self.limit_along_alternate)
            .any(|(a, b)| a.differs_from(b).unwrap_or(false))
    }

    pub fn report(&self) -> WitnessReport {
        WitnessReport {
            rational: format_rational(&self.rational_point),
            canonical_word: self.canonical_word.to_string(),
            limit_canonical: self.limit_along_canonical.clone().map(|c| c.to_string()),
            limit_alternate: self.limit_along_alternate.clone().map(|c| c.to_string()),
        }
    }
}

/// JSON shape of a witness. Irrational limit coordinates are written in
/// stream text form (e.g. `[2;(1)]`), rational ones as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub rational: String,
    pub canonical_word: String,
    pub limit_canonical: [String; 2],
    pub limit_alternate: [String; 2],
}
