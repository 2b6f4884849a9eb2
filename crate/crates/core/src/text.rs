//! Text forms shared by the CLI and the JSON reports.
//!
//! Rationals are always written as `numerator/denominator` in lowest terms,
//! including integers (`1/1`, `0/1`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{CfError, Result};

pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| CfError::parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| CfError::parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(CfError::parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Fixed-point decimal rendering, truncated toward zero after `places` digits.
pub fn format_decimal(x: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = (x.abs() * BigRational::from_integer(scale.clone())).to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part, width = places)
}

/// Parses a plain decimal literal such as `0.123456` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(CfError::parse(format!("empty decimal {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CfError::parse(format!("bad decimal {s:?}")));
    }
    let mantissa: BigInt = digits.parse().unwrap_or_default();
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let x = BigRational::new(mantissa, den);
    Ok(if neg { -x } else { x })
}

/// Formats an `f64` with 12 significant digits.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}
