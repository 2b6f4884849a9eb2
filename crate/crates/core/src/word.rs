//! Finite continued fractions `[a_1, ..., a_n] = 1/(a_1 + 1/(a_2 + ...))`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CfError, Result};

/// A finite sequence of positive partial quotients.
///
/// The empty word is allowed as a building block (an empty preamble, a
/// prefix of length zero) but it does not denote a rational.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CFWord(Vec<BigUint>);

impl CFWord {
    pub fn new(digits: Vec<BigUint>) -> Result<Self> {
        if let Some(pos) = digits.iter().position(|d| d.is_zero()) {
            return Err(CfError::domain(format!(
                "partial quotient a_{} is 0; digits must be >= 1",
                pos + 1
            )));
        }
        Ok(CFWord(digits))
    }

    pub fn from_u64s(digits: &[u64]) -> Result<Self> {
        Self::new(digits.iter().map(|&d| BigUint::from(d)).collect())
    }

    /// Caller guarantees every digit is positive.
    pub(crate) fn from_vec_unchecked(digits: Vec<BigUint>) -> Self {
        debug_assert!(digits.iter().all(|d| !d.is_zero()));
        CFWord(digits)
    }

    pub fn empty() -> Self {
        CFWord(Vec::new())
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<BigUint> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `j`-th partial quotient, 1-based.
    pub fn get(&self, j: usize) -> Option<&BigUint> {
        j.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn last(&self) -> Option<&BigUint> {
        self.0.last()
    }

    /// Last digit >= 2 unless the word is `[1]`.
    pub fn is_canonical(&self) -> bool {
        match self.0.as_slice() {
            [] => false,
            [_] => true,
            [.., last] => !last.is_one(),
        }
    }

    pub fn push(&mut self, digit: BigUint) -> Result<()> {
        if digit.is_zero() {
            return Err(CfError::domain("partial quotient 0"));
        }
        self.0.push(digit);
        Ok(())
    }

    pub fn prefix(&self, n: usize) -> CFWord {
        CFWord(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn concat(&self, other: &CFWord) -> CFWord {
        let mut digits = self.0.clone();
        digits.extend_from_slice(&other.0);
        CFWord(digits)
    }

    /// Odd-indexed digits `a_1, a_3, ...`.
    pub fn odd_part(&self) -> CFWord {
        CFWord(self.0.iter().step_by(2).cloned().collect())
    }

    /// Even-indexed digits `a_2, a_4, ...`.
    pub fn even_part(&self) -> CFWord {
        CFWord(self.0.iter().skip(1).step_by(2).cloned().collect())
    }
}

impl fmt::Display for CFWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_digits(f, &self.0)?;
        f.write_str("]")
    }
}

pub(crate) fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[BigUint]) -> fmt::Result {
    for (i, d) in digits.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

pub(crate) fn parse_digit_list(s: &str) -> Result<Vec<BigUint>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let d: BigUint = tok
                .parse()
                .map_err(|_| CfError::parse(format!("bad digit {tok:?}")))?;
            if d.is_zero() {
                return Err(CfError::parse("partial quotient 0"));
            }
            Ok(d)
        })
        .collect()
}

impl FromStr for CFWord {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| CfError::parse(format!("expected [a1,...,an], got {s:?}")))?;
        if inner.contains(';') {
            return Err(CfError::parse("periodic form is not a finite word"));
        }
        Ok(CFWord(parse_digit_list(inner)?))
    }
}

/// Evaluates `[a_1, ..., a_n]` from the innermost digit outwards.
pub fn eval_finite(word: &CFWord) -> Result<BigRational> {
    let mut rev = word.digits().iter().rev();
    let last = rev
        .next()
        .ok_or_else(|| CfError::domain("cannot evaluate the empty word"))?;
    let mut value = BigRational::new(BigInt::one(), BigInt::from(last.clone()));
    for a in rev {
        value = (BigRational::from_integer(BigInt::from(a.clone())) + value).recip();
    }
    Ok(value)
}

/// Euclid's algorithm; the result is canonical.
pub fn rational_to_cf(x: &BigRational) -> Result<CFWord> {
    if !x.is_positive() || x > &BigRational::one() {
        return Err(CfError::domain(format!("{x} is not in (0,1]")));
    }
    // x = p/q with 0 < p <= q
    let mut p = x.numer().magnitude().clone();
    let mut q = x.denom().magnitude().clone();
    let mut digits = Vec::new();
    loop {
        let (a, r) = q.div_rem(&p);
        digits.push(a);
        if r.is_zero() {
            break;
        }
        q = std::mem::replace(&mut p, r);
    }
    Ok(CFWord(digits))
}

/// `[a_1, ..., a_n] -> [a_1, ..., a_n - 1, 1]`.
pub fn alternate_form(word: &CFWord) -> Result<CFWord> {
    let last = word
        .last()
        .ok_or_else(|| CfError::domain("empty word has no alternate form"))?;
    if last.is_one() {
        return Err(CfError::domain(format!(
            "{word} ends in 1; no alternate form in this direction"
        )));
    }
    let mut digits = word.0.clone();
    let n = digits.len();
    digits[n - 1] -= 1u32;
    digits.push(BigUint::one());
    Ok(CFWord(digits))
}
