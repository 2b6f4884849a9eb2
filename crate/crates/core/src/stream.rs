//! Digit streams: lazily produced sequences of partial quotients.
//!
//! A [`DigitStream`] is an immutable descriptor. Traversal state lives in the
//! [`Digits`] iterator returned by [`DigitStream::digits`], so the same
//! descriptor can be walked any number of times, from any thread, and always
//! yields the same digits. Certified expansions are memoized and shared by
//! clones of a stream, so repeated walks do not redo the Gauss-map work.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{CfError, Result};
use crate::expand::{ExpansionStatus, GaussBracket};
use crate::numeric::{le_q, lt_q};
use crate::sample;
use crate::text::{format_rational, parse_rational};
use crate::word::{parse_digit_list, write_digits, CFWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamKind {
    Finite(CFWord),
    /// `preamble` followed by `period` repeated forever. Stored normalized:
    /// minimal period, shortest preamble.
    Periodic { preamble: CFWord, period: CFWord },
    /// Digits shared by every irrational of the open bracket `(lo, hi)`.
    Certified { lo: BigRational, hi: BigRational },
    /// A uniformly drawn bracket of width `2^-bits`, expanded as `Certified`.
    Random { seed: u64, bits: u32 },
    Prefixed { head: CFWord, rest: DigitStream },
    /// `c_{2k-1} = a_k`, `c_{2k} = b_k`.
    Interleaved(DigitStream, DigitStream),
    Odd(DigitStream),
    Even(DigitStream),
}

#[derive(Clone, Debug)]
pub struct DigitStream {
    kind: Arc<StreamKind>,
    expansion: Option<Arc<Mutex<Expansion>>>,
}

impl PartialEq for DigitStream {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for DigitStream {}

/// Digits of a certified bracket produced so far.
#[derive(Debug)]
struct Expansion {
    bracket: GaussBracket,
    digits: Vec<BigUint>,
    end: Option<StreamEnd>,
}

impl Expansion {
    fn new(lo: BigRational, hi: BigRational) -> Self {
        Expansion {
            bracket: GaussBracket::new(lo, hi).expect("bracket validated at construction"),
            digits: Vec::new(),
            end: None,
        }
    }

    fn digit(&mut self, pos: usize) -> std::result::Result<BigUint, StreamEnd> {
        while self.digits.len() <= pos {
            if let Some(end) = self.end {
                return Err(end);
            }
            match self.bracket.next_digit() {
                Ok(d) => self.digits.push(d),
                Err(ExpansionStatus::TerminatedRational) => self.end = Some(StreamEnd::Terminated),
                Err(_) => self.end = Some(StreamEnd::Exhausted),
            }
        }
        Ok(self.digits[pos].clone())
    }
}

/// How a traversal ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamEnd {
    /// The digit sequence is finite: the stream denotes a rational.
    Terminated,
    /// The source could not certify further digits.
    Exhausted,
}

impl DigitStream {
    fn from_kind(kind: StreamKind) -> Self {
        let expansion = match &kind {
            StreamKind::Certified { lo, hi } => Some(Expansion::new(lo.clone(), hi.clone())),
            StreamKind::Random { seed, bits } => {
                let (lo, hi) = sample::uniform_bracket(*seed, 0, *bits);
                Some(Expansion::new(lo, hi))
            }
            _ => None,
        };
        DigitStream {
            kind: Arc::new(kind),
            expansion: expansion.map(|e| Arc::new(Mutex::new(e))),
        }
    }

    pub fn kind(&self) -> &StreamKind {
        &self.kind
    }

    pub fn finite(word: CFWord) -> Self {
        Self::from_kind(StreamKind::Finite(word))
    }

    pub fn periodic(preamble: CFWord, period: CFWord) -> Result<Self> {
        if period.is_empty() {
            return Err(CfError::domain("periodic stream needs a nonempty period"));
        }
        let (preamble, period) = normalize_periodic(preamble.into_digits(), period.into_digits());
        Ok(Self::from_kind(StreamKind::Periodic {
            preamble: CFWord::from_vec_unchecked(preamble),
            period: CFWord::from_vec_unchecked(period),
        }))
    }

    /// The constant stream `(d, d, d, ...)`.
    pub fn constant(d: u64) -> Result<Self> {
        Self::periodic(CFWord::empty(), CFWord::from_u64s(&[d])?)
    }

    pub fn certified(lo: BigRational, hi: BigRational) -> Result<Self> {
        if !lo.is_positive() || le_q(&hi, &lo) || lt_q(&BigRational::one(), &hi) {
            return Err(CfError::domain(format!(
                "certified bracket ({lo}, {hi}) must satisfy 0 < lo < hi <= 1"
            )));
        }
        Ok(Self::from_kind(StreamKind::Certified { lo, hi }))
    }

    pub fn random(seed: u64, bits: u32) -> Result<Self> {
        if bits < 2 {
            return Err(CfError::domain("random stream needs at least 2 bits"));
        }
        Ok(Self::from_kind(StreamKind::Random { seed, bits }))
    }

    /// `head` followed by the digits of `rest`. Finite and periodic tails are
    /// folded into a single finite or periodic descriptor.
    pub fn prefixed(head: CFWord, rest: DigitStream) -> Self {
        if head.is_empty() {
            return rest;
        }
        match rest.kind() {
            StreamKind::Finite(w) => Self::finite(head.concat(w)),
            StreamKind::Periodic { preamble, period } => {
                Self::periodic(head.concat(preamble), period.clone())
                    .expect("period already validated")
            }
            StreamKind::Prefixed { head: inner, rest } => {
                Self::prefixed(head.concat(inner), rest.clone())
            }
            _ => Self::from_kind(StreamKind::Prefixed { head, rest }),
        }
    }

    pub(crate) fn interleaved_raw(a: DigitStream, b: DigitStream) -> Self {
        Self::from_kind(StreamKind::Interleaved(a, b))
    }

    pub(crate) fn odd_raw(a: DigitStream) -> Self {
        Self::from_kind(StreamKind::Odd(a))
    }

    pub(crate) fn even_raw(a: DigitStream) -> Self {
        Self::from_kind(StreamKind::Even(a))
    }

    /// True when the descriptor is a declared eventually periodic sequence.
    pub fn is_periodic(&self) -> bool {
        matches!(self.kind(), StreamKind::Periodic { .. })
    }

    pub fn digits(&self) -> Digits<'_> {
        Digits {
            cursor: Cursor::new(self),
            end: None,
        }
    }

    /// The first `n` digits, or the number available if fewer.
    pub fn prefix(&self, n: usize) -> Result<CFWord> {
        let (word, _) = self.prefix_upto(n);
        if word.len() < n {
            return Err(CfError::Exhausted {
                available: word.len(),
            });
        }
        Ok(word)
    }

    /// Up to `n` digits together with the reason the traversal stopped early
    /// (`None` if `n` digits were produced).
    pub fn prefix_upto(&self, n: usize) -> (CFWord, Option<StreamEnd>) {
        let mut it = self.digits();
        let digits: Vec<BigUint> = it.by_ref().take(n).collect();
        let end = if digits.len() < n { it.end() } else { None };
        (CFWord::from_vec_unchecked(digits), end)
    }
}

/// The `j`-th digit (1-based).
pub fn digit_at(stream: &DigitStream, j: usize) -> Result<BigUint> {
    if j == 0 {
        return Err(CfError::domain("digit index starts at 1"));
    }
    let mut it = stream.digits();
    match it.nth(j - 1) {
        Some(d) => Ok(d),
        None => Err(CfError::Exhausted {
            available: it.count_emitted(),
        }),
    }
}

/// Iterator over the digits of a stream.
pub struct Digits<'a> {
    cursor: Cursor<'a>,
    end: Option<StreamEnd>,
}

impl Digits<'_> {
    /// Why the iterator stopped, once it has returned `None`.
    pub fn end(&self) -> Option<StreamEnd> {
        self.end
    }

    fn count_emitted(&self) -> usize {
        self.cursor.emitted()
    }
}

impl Iterator for Digits<'_> {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        if self.end.is_some() {
            return None;
        }
        match self.cursor.next() {
            Ok(d) => Some(d),
            Err(end) => {
                self.end = Some(end);
                None
            }
        }
    }
}

enum Cursor<'a> {
    Slice {
        digits: &'a [BigUint],
        pos: usize,
    },
    Periodic {
        preamble: &'a [BigUint],
        period: &'a [BigUint],
        pos: usize,
    },
    Gauss {
        expansion: &'a Mutex<Expansion>,
        emitted: usize,
    },
    Chain {
        head: &'a [BigUint],
        pos: usize,
        rest: Box<Cursor<'a>>,
    },
    Interleave {
        a: Box<Cursor<'a>>,
        b: Box<Cursor<'a>>,
        take_a: bool,
        emitted: usize,
    },
    Stride {
        inner: Box<Cursor<'a>>,
        odd: bool,
        emitted: usize,
    },
}

impl<'a> Cursor<'a> {
    fn new(stream: &'a DigitStream) -> Self {
        match stream.kind() {
            StreamKind::Finite(w) => Cursor::Slice {
                digits: w.digits(),
                pos: 0,
            },
            StreamKind::Periodic { preamble, period } => Cursor::Periodic {
                preamble: preamble.digits(),
                period: period.digits(),
                pos: 0,
            },
            StreamKind::Certified { .. } | StreamKind::Random { .. } => Cursor::Gauss {
                expansion: stream
                    .expansion
                    .as_deref()
                    .expect("certified streams carry an expansion"),
                emitted: 0,
            },
            StreamKind::Prefixed { head, rest } => Cursor::Chain {
                head: head.digits(),
                pos: 0,
                rest: Box::new(Cursor::new(rest)),
            },
            StreamKind::Interleaved(a, b) => Cursor::Interleave {
                a: Box::new(Cursor::new(a)),
                b: Box::new(Cursor::new(b)),
                take_a: true,
                emitted: 0,
            },
            StreamKind::Odd(s) => Cursor::Stride {
                inner: Box::new(Cursor::new(s)),
                odd: true,
                emitted: 0,
            },
            StreamKind::Even(s) => Cursor::Stride {
                inner: Box::new(Cursor::new(s)),
                odd: false,
                emitted: 0,
            },
        }
    }

    fn emitted(&self) -> usize {
        match self {
            Cursor::Slice { pos, .. } | Cursor::Periodic { pos, .. } => *pos,
            Cursor::Chain { pos, rest, .. } => pos + rest.emitted(),
            Cursor::Gauss { emitted, .. }
            | Cursor::Interleave { emitted, .. }
            | Cursor::Stride { emitted, .. } => *emitted,
        }
    }

    fn next(&mut self) -> std::result::Result<BigUint, StreamEnd> {
        match self {
            Cursor::Slice { digits, pos } => {
                let d = digits.get(*pos).cloned().ok_or(StreamEnd::Terminated)?;
                *pos += 1;
                Ok(d)
            }
            Cursor::Periodic {
                preamble,
                period,
                pos,
            } => {
                let d = if *pos < preamble.len() {
                    &preamble[*pos]
                } else {
                    &period[(*pos - preamble.len()) % period.len()]
                };
                *pos += 1;
                Ok(d.clone())
            }
            Cursor::Gauss { expansion, emitted } => {
                let d = expansion
                    .lock()
                    .unwrap_or_else(|e| e.into_inner())
                    .digit(*emitted)?;
                *emitted += 1;
                Ok(d)
            }
            Cursor::Chain { head, pos, rest } => {
                if let Some(d) = head.get(*pos) {
                    *pos += 1;
                    Ok(d.clone())
                } else {
                    rest.next()
                }
            }
            Cursor::Interleave {
                a,
                b,
                take_a,
                emitted,
            } => {
                let d = if *take_a { a.next()? } else { b.next()? };
                *take_a = !*take_a;
                *emitted += 1;
                Ok(d)
            }
            Cursor::Stride {
                inner,
                odd,
                emitted,
            } => {
                if !*odd || *emitted > 0 {
                    inner.next()?;
                }
                let d = inner.next()?;
                *emitted += 1;
                Ok(d)
            }
        }
    }
}

/// Minimal period, then shortest preamble. The result is a unique normal form
/// for the eventually periodic sequence.
pub(crate) fn normalize_periodic(
    mut preamble: Vec<BigUint>,
    mut period: Vec<BigUint>,
) -> (Vec<BigUint>, Vec<BigUint>) {
    let len = period.len();
    if let Some(d) = (1..len).find(|&d| len.is_multiple_of(d) && (d..len).all(|i| period[i] == period[i - d]))
    {
        period.truncate(d);
    }
    while let (Some(p), Some(q)) = (preamble.last(), period.last()) {
        if p != q {
            break;
        }
        preamble.pop();
        period.rotate_right(1);
    }
    (preamble, period)
}

/// Moves digits from the period into the preamble until it has `target` digits.
pub(crate) fn unroll_periodic(
    preamble: &[BigUint],
    period: &[BigUint],
    target_preamble: usize,
    target_period: usize,
) -> (Vec<BigUint>, Vec<BigUint>) {
    debug_assert!(target_period.is_multiple_of(period.len()));
    let mut pre = preamble.to_vec();
    let mut per = period.to_vec();
    while pre.len() < target_preamble {
        pre.push(per[0].clone());
        per.rotate_left(1);
    }
    let reps = target_period / per.len();
    let per = per.iter().cycle().take(reps * per.len()).cloned().collect();
    (pre, per)
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            StreamKind::Finite(w) => write!(f, "{w}"),
            StreamKind::Periodic { preamble, period } => {
                f.write_str("[")?;
                write_digits(f, preamble.digits())?;
                f.write_str(";(")?;
                write_digits(f, period.digits())?;
                f.write_str(")]")
            }
            StreamKind::Certified { lo, hi } => write!(
                f,
                "certified({},{})",
                format_rational(lo),
                format_rational(hi)
            ),
            StreamKind::Random { seed, bits } => write!(f, "random({seed},{bits})"),
            StreamKind::Prefixed { head, rest } => write!(f, "{head}++{rest}"),
            StreamKind::Interleaved(a, b) => write!(f, "interleave({a},{b})"),
            StreamKind::Odd(s) => write!(f, "odd({s})"),
            StreamKind::Even(s) => write!(f, "even({s})"),
        }
    }
}

/// Parses `[a,b,c]`, `[pre;(period)]`, `certified(lo,hi)` or `random(seed,bits)`.
impl FromStr for DigitStream {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(args) = call_args(s, "certified") {
            let (lo, hi) = args
                .split_once(',')
                .ok_or_else(|| CfError::parse("certified(lo,hi) needs two endpoints"))?;
            return Self::certified(parse_rational(lo)?, parse_rational(hi)?);
        }
        if let Some(args) = call_args(s, "random") {
            let (seed, bits) = args
                .split_once(',')
                .ok_or_else(|| CfError::parse("random(seed,bits) needs two arguments"))?;
            let seed = seed
                .trim()
                .parse()
                .map_err(|_| CfError::parse(format!("bad seed {seed:?}")))?;
            let bits = bits
                .trim()
                .parse()
                .map_err(|_| CfError::parse(format!("bad bit count {bits:?}")))?;
            return Self::random(seed, bits);
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| CfError::parse(format!("unrecognized stream {s:?}")))?;
        match inner.split_once(';') {
            None => Ok(Self::finite(CFWord::new(parse_digit_list(inner)?)?)),
            Some((pre, per)) => {
                let per = per
                    .trim()
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| CfError::parse(format!("period must be parenthesized in {s:?}")))?;
                Self::periodic(
                    CFWord::new(parse_digit_list(pre)?)?,
                    CFWord::new(parse_digit_list(per)?)?,
                )
            }
        }
    }
}

fn call_args<'s>(s: &'s str, name: &str) -> Option<&'s str> {
    s.strip_prefix(name)?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')
}
