//! Pointwise Hölder regularity of the two components of Cantor's bijection.
//!
//! For `y` sharing exactly `n` leading digits with `x = [a_1, a_2, ...]`, the
//! log-ratio `log|f_i(x) - f_i(y)| / log|x - y|` is bracketed by explicit
//! digit sums ([`holder_band`]). Almost surely these sums behave like
//! `log K_0` and `log K_1`, which gives the band of [`ae_band`].
//!
//! The band formulas use `ceil(n/2)` (for `f_1`) and `floor(n/2)` (for `f_2`)
//! exactly as stated for every `n`. They are derived for the case where each
//! component of `y` leaves the component of `x` right after their shared
//! prefix; see [`slope_sample`].

use std::f64::consts::LN_2;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use serde::{Deserialize, Serialize};

use crate::cantor::split;
use crate::enclosure::{enclose_value, Enclosure};
use crate::error::{CfError, Result};
use crate::numeric::{le_q, ln_biguint, ln_rational, ln_shift_ratio, KahanSum};
use crate::stream::{DigitStream, StreamKind};
use crate::word::CFWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    F1,
    F2,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::F1 => "f1",
            Component::F2 => "f2",
        })
    }
}

impl std::str::FromStr for Component {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => Ok(Component::F1),
            "f2" => Ok(Component::F2),
            other => Err(CfError::parse(format!("unknown component {other:?}"))),
        }
    }
}

/// An upper bound that may be vacuous.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UpperBound {
    Finite(f64),
    /// The denominator `sum log a_j` vanished (all of `a_1..a_n` equal 1).
    Infinite,
}

impl UpperBound {
    pub fn value(self) -> f64 {
        match self {
            UpperBound::Finite(v) => v,
            UpperBound::Infinite => f64::INFINITY,
        }
    }
}

/// Two-sided bound on the log-ratio at depth `n`, with its correction terms.
#[derive(Clone, Debug, PartialEq)]
pub struct HolderBand {
    pub component: Component,
    pub depth: usize,
    pub lower: f64,
    pub upper: UpperBound,
    pub c1: f64,
    pub c2: f64,
    /// The two sides of `lower = lower_numerator / lower_denominator`.
    pub lower_numerator: f64,
    pub lower_denominator: f64,
    /// `upper = upper_numerator / upper_denominator` when the latter is positive.
    pub upper_numerator: f64,
    pub upper_denominator: f64,
}

impl HolderBand {
    /// Whether `slope` lies in `[lower - eps, upper + eps]`.
    pub fn admits(&self, slope: f64, eps: f64) -> bool {
        slope >= self.lower - eps && slope <= self.upper.value() + eps
    }

    pub fn to_json(&self) -> serde_json::Value {
        let upper = match self.upper {
            UpperBound::Finite(v) => serde_json::json!(v),
            UpperBound::Infinite => serde_json::json!("inf"),
        };
        serde_json::json!({
            "component": self.component,
            "n": self.depth,
            "lower": self.lower,
            "upper": upper,
            "c1": self.c1,
            "c2": self.c2,
        })
    }
}

/// Number of digits of `a` that [`holder_band`] reads at depth `n`.
pub fn band_digits_needed(component: Component, n: usize) -> usize {
    match component {
        Component::F1 => (n + 3).max(2 * n.div_ceil(2) + 5),
        Component::F2 => (n + 3).max(2 * (n / 2) + 6),
    }
}

struct DigitLogs<'a> {
    digits: &'a [BigUint],
}

impl DigitLogs<'_> {
    /// `a_j`, 1-based.
    fn a(&self, j: usize) -> &BigUint {
        &self.digits[j - 1]
    }

    fn ln(&self, j: usize) -> f64 {
        ln_biguint(self.a(j))
    }

    fn ln_plus_one(&self, j: usize) -> f64 {
        ln_biguint(&(self.a(j) + 1u32))
    }

    /// `log 2 / 2 + log max((a_i + 2)/(a_i + 1), (a_k + 2)/(a_k + 1))`.
    fn correction(&self, i: usize, k: usize) -> f64 {
        LN_2 / 2.0 + ln_shift_ratio(self.a(i)).max(ln_shift_ratio(self.a(k)))
    }
}

fn sum(iter: impl Iterator<Item = f64>) -> f64 {
    let mut acc = KahanSum::default();
    iter.for_each(|x| acc.add(x));
    acc.value()
}

/// Evaluates the band from an explicit digit prefix (at least
/// [`band_digits_needed`] digits).
pub fn holder_band_from_digits(word: &CFWord, n: usize, component: Component) -> Result<HolderBand> {
    if n == 0 {
        return Err(CfError::domain("band depth n must be >= 1"));
    }
    let need = band_digits_needed(component, n);
    if word.len() < need {
        return Err(CfError::Exhausted {
            available: word.len(),
        });
    }
    let d = DigitLogs {
        digits: word.digits(),
    };
    let nf = n as f64;
    let c1 = d.correction(n + 2, n + 3);
    let lower_den = sum((1..=n + 3).map(|j| d.ln_plus_one(j))) / nf + c1 / nf;
    let upper_den = sum((1..=n).map(|j| d.ln(j))) / nf;

    let (lower_num, upper_num, c2) = match component {
        Component::F1 => {
            let m = n.div_ceil(2);
            let c2 = d.correction(2 * m + 3, 2 * m + 5);
            let lower_num = sum((1..=m).map(|j| d.ln(2 * j - 1))) / nf;
            let upper_num =
                sum((1..=m + 3).map(|j| d.ln_plus_one(2 * j - 1))) / nf + c2 / (2.0 * nf);
            (lower_num, upper_num, c2)
        }
        Component::F2 => {
            let m = n / 2;
            let c2 = d.correction(2 * m + 4, 2 * m + 6);
            let lower_num = sum((1..=m).map(|j| d.ln(2 * j))) / nf;
            let upper_num = sum((1..=m + 3).map(|j| d.ln_plus_one(2 * j))) / nf + c2 / nf;
            (lower_num, upper_num, c2)
        }
    };
    let upper = if upper_den > 0.0 {
        UpperBound::Finite(upper_num / upper_den)
    } else {
        UpperBound::Infinite
    };
    Ok(HolderBand {
        component,
        depth: n,
        lower: lower_num / lower_den,
        upper,
        c1,
        c2,
        lower_numerator: lower_num,
        lower_denominator: lower_den,
        upper_numerator: upper_num,
        upper_denominator: upper_den,
    })
}

pub fn holder_band(a: &DigitStream, n: usize, component: Component) -> Result<HolderBand> {
    let word = a.prefix(band_digits_needed(component, n))?;
    holder_band_from_digits(&word, n, component)
}

pub fn holder_band_f1(a: &DigitStream, n: usize) -> Result<HolderBand> {
    holder_band(a, n, Component::F1)
}

pub fn holder_band_f2(a: &DigitStream, n: usize) -> Result<HolderBand> {
    holder_band(a, n, Component::F2)
}

/// An observed log-ratio `log|f_i(x) - f_i(y)| / log|x - y|`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeSample {
    pub n: usize,
    pub component: Component,
    /// `+inf` when `f_i(x) = f_i(y)` exactly.
    pub slope: f64,
    pub x_desc: String,
    pub y_desc: String,
    /// Width of the interval known to contain the exact log-ratio.
    pub enclosure_width_bound: f64,
}

const SLOPE_MAX_DEPTH: usize = 1 << 13;

fn component_stream(s: &DigitStream, component: Component) -> DigitStream {
    let pair = split(s);
    match component {
        Component::F1 => pair.odd_stream,
        Component::F2 => pair.even_stream,
    }
}

/// Separated `|u - v|` whose relative width is at most `precision`.
fn separated_gap(u: &Enclosure, v: &Enclosure, precision: &BigRational) -> Option<Enclosure> {
    let gap = u.minus(v).abs_separated()?;
    le_q(&gap.width(), &(&gap.lo * precision)).then_some(gap)
}

/// Structural equality of the values of two streams, when decidable.
fn provably_equal(a: &DigitStream, b: &DigitStream) -> bool {
    matches!(
        (a.kind(), b.kind()),
        (StreamKind::Periodic { .. }, StreamKind::Periodic { .. })
            | (StreamKind::Finite(_), StreamKind::Finite(_))
    ) && a == b
}

/// Measures the log-ratio for `x`, `y` sharing exactly `n >= 1` digits.
///
/// Values are enclosed with rank intervals, deepening until the enclosures of
/// `|x - y|` and `|f_i(x) - f_i(y)|` are separated from 0 with relative width
/// at most `precision`.
pub fn slope_sample(
    x: &DigitStream,
    y: &DigitStream,
    n: usize,
    component: Component,
    precision: f64,
) -> Result<SlopeSample> {
    if n == 0 {
        return Err(CfError::domain("slope samples need a shared prefix, n >= 1"));
    }
    let px = x.prefix(n + 1)?;
    let py = y.prefix(n + 1)?;
    let shared = px
        .digits()
        .iter()
        .zip(py.digits())
        .take_while(|(u, v)| u == v)
        .count();
    if shared != n {
        return Err(CfError::domain(format!(
            "x and y share {shared} leading digits, expected exactly {n}"
        )));
    }
    let precision_q = BigRational::from_f64(precision)
        .filter(|p| p > &BigRational::zero())
        .ok_or_else(|| CfError::domain("precision must be a positive number"))?;

    let cx = component_stream(x, component);
    let cy = component_stream(y, component);
    let sample = |slope: f64, width: f64| SlopeSample {
        n,
        component,
        slope,
        x_desc: x.to_string(),
        y_desc: y.to_string(),
        enclosure_width_bound: width,
    };
    if provably_equal(&cx, &cy) {
        return Ok(sample(f64::INFINITY, 0.0));
    }

    let mut depth = n + 16;
    loop {
        let gaps = (|| -> Result<Option<(Enclosure, Enclosure)>> {
            let dx = separated_gap(&enclose_value(x, depth)?, &enclose_value(y, depth)?, &precision_q);
            let df = separated_gap(&enclose_value(&cx, depth)?, &enclose_value(&cy, depth)?, &precision_q);
            Ok(dx.zip(df))
        })();
        match gaps {
            Ok(Some((dx, df))) => {
                let (slope, width) = log_ratio(&df, &dx);
                return Ok(sample(slope, width));
            }
            Ok(None) if depth < SLOPE_MAX_DEPTH => depth *= 2,
            Ok(None) | Err(CfError::Exhausted { .. }) => {
                return Err(CfError::Precision(format!(
                    "enclosures not separated at depth {depth}; evaluate the streams deeper"
                )))
            }
            Err(e) => return Err(e),
        }
    }
}

/// Midpoint and width of the range of `ln(num) / ln(den)` over the two enclosures.
fn log_ratio(num: &Enclosure, den: &Enclosure) -> (f64, f64) {
    let (n_lo, n_hi) = (ln_rational(&num.lo), ln_rational(&num.hi));
    let (d_lo, d_hi) = (ln_rational(&den.lo), ln_rational(&den.hi));
    let candidates = [n_lo / d_lo, n_lo / d_hi, n_hi / d_lo, n_hi / d_hi];
    let lo = candidates.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = candidates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // f64 rounding of the logs themselves.
    let rounding = 1e-12 * (1.0 + hi.abs());
    ((lo + hi) / 2.0, hi - lo + rounding)
}

/// Truncated Khintchine-type product `log K_k = sum_j log(j + k)/log 2 * log(1 + 1/(j(j + 2)))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KhintchineResult {
    pub k: u32,
    pub log_value: f64,
    pub truncation_j: u64,
    /// Upper bound on the omitted terms `j > truncation_j`.
    pub tail_bound: f64,
    /// False when the requested tail could not be reached within the term cap.
    pub converged: bool,
}

/// Largest truncation [`khintchine`] will sum to.
pub const KHINTCHINE_MAX_TERMS: u64 = 1 << 30;

/// `sum_{j > J} log(j + k) / (log 2 * j (j + 2))`, bounded through
/// `log(1 + u) <= u`, `log(t + k) <= log t + k/t` and the integral test.
pub fn khintchine_tail_bound(k: u32, truncation_j: u64) -> f64 {
    let j = truncation_j.max(3) as f64;
    ((j.ln() + 1.0) / j + f64::from(k) / (2.0 * j * j)) / LN_2
}

/// `sum_{j = from}^{to} log(j + k)/log 2 * log(1 + 1/(j(j + 2)))`, smallest terms first.
pub fn khintchine_partial_sum(k: u32, from: u64, to: u64) -> f64 {
    let mut acc = KahanSum::default();
    let k = f64::from(k);
    for j in (from.max(1)..=to).rev() {
        let jf = j as f64;
        let term = (jf + k).ln() * (1.0 / (jf * (jf + 2.0))).ln_1p();
        acc.add(term);
    }
    acc.value() / LN_2
}

pub fn khintchine(k: u32, target_tail: f64) -> Result<KhintchineResult> {
    if target_tail.is_nan() || target_tail <= 0.0 {
        return Err(CfError::domain("target tail must be positive"));
    }
    let mut hi = 4u64;
    while khintchine_tail_bound(k, hi) > target_tail && hi < KHINTCHINE_MAX_TERMS {
        hi = (hi * 2).min(KHINTCHINE_MAX_TERMS);
    }
    let converged = khintchine_tail_bound(k, hi) <= target_tail;
    let truncation_j = if converged {
        // Smallest J meeting the target; the bound is decreasing in J.
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if khintchine_tail_bound(k, mid) <= target_tail {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    } else {
        hi
    };
    Ok(KhintchineResult {
        k,
        log_value: khintchine_partial_sum(k, 1, truncation_j),
        truncation_j,
        tail_bound: khintchine_tail_bound(k, truncation_j),
        converged,
    })
}

/// Almost-everywhere range of both Hölder exponents.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AeBand {
    pub lower: f64,
    pub upper: f64,
    pub log_k0: f64,
    pub log_k1: f64,
}

pub const AE_BAND_TAIL: f64 = 1e-7;

/// `[log K_0 / (2 log K_1), log K_1 / (2 log K_0)]` from precomputed constants.
pub fn ae_band_from(k0: &KhintchineResult, k1: &KhintchineResult) -> AeBand {
    AeBand {
        lower: k0.log_value / (2.0 * k1.log_value),
        upper: k1.log_value / (2.0 * k0.log_value),
        log_k0: k0.log_value,
        log_k1: k1.log_value,
    }
}

pub fn ae_band() -> AeBand {
    let k0 = khintchine(0, AE_BAND_TAIL).expect("positive tail");
    let k1 = khintchine(1, AE_BAND_TAIL).expect("positive tail");
    ae_band_from(&k0, &k1)
}

/// Partial means of `log(a_j + k)` over all, even- and odd-indexed digits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErgodicReport {
    pub depth: usize,
    pub k: u32,
    pub mean_all: f64,
    pub mean_even: f64,
    pub mean_odd: f64,
}

impl ErgodicReport {
    pub const CSV_HEADER: &'static str = "depth,k,mean_all,mean_even,mean_odd";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.depth, self.k, self.mean_all, self.mean_even, self.mean_odd
        )
    }
}

pub fn ergodic_averages(a: &DigitStream, n: usize, k: u32) -> Result<ErgodicReport> {
    if n == 0 {
        return Err(CfError::domain("ergodic depth must be >= 1"));
    }
    let word = a.prefix(2 * n)?;
    Ok(ergodic_from_digits(&word, n, k))
}

pub(crate) fn ergodic_from_digits(word: &CFWord, n: usize, k: u32) -> ErgodicReport {
    let shift = BigUint::from(k);
    let logs: Vec<f64> = word.digits()[..2 * n]
        .iter()
        .map(|a| ln_biguint(&(a + &shift)))
        .collect();
    let nf = n as f64;
    ErgodicReport {
        depth: n,
        k,
        mean_all: sum(logs[..n].iter().copied()) / nf,
        mean_even: sum(logs.iter().skip(1).step_by(2).copied()) / nf,
        mean_odd: sum(logs.iter().step_by(2).copied()) / nf,
    }
}

/// `a_j = 2^j` for even `j`, `1` for odd `j`, materialized to `n` digits.
pub fn multifractal_example(n: usize) -> Result<DigitStream> {
    if n == 0 {
        return Err(CfError::domain("depth must be >= 1"));
    }
    let digits = (1..=n)
        .map(|j| {
            if j % 2 == 0 {
                BigUint::one() << j
            } else {
                BigUint::one()
            }
        })
        .collect();
    Ok(DigitStream::finite(CFWord::from_vec_unchecked(digits)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> DigitStream {
        text.parse().unwrap()
    }

    /// Direct transcription of the band sums on u64 digits, for cross-checks.
    fn band_oracle(a: &[u64], n: usize, f1: bool) -> (f64, f64) {
        let ln = |j: usize| (a[j - 1] as f64).ln();
        let ln1 = |j: usize| (a[j - 1] as f64 + 1.0).ln();
        let ratio = |j: usize| (a[j - 1] as f64 + 2.0) / (a[j - 1] as f64 + 1.0);
        let nf = n as f64;
        let c1 = LN_2 / 2.0 + ratio(n + 2).max(ratio(n + 3)).ln();
        let den_lo: f64 = (1..=n + 3).map(ln1).sum::<f64>() / nf + c1 / nf;
        let den_hi: f64 = (1..=n).map(ln).sum::<f64>() / nf;
        let (num_lo, num_hi) = if f1 {
            let m = n.div_ceil(2);
            let c2 = LN_2 / 2.0 + ratio(2 * m + 3).max(ratio(2 * m + 5)).ln();
            (
                (1..=m).map(|j| ln(2 * j - 1)).sum::<f64>() / nf,
                (1..=m + 3).map(|j| ln1(2 * j - 1)).sum::<f64>() / nf + c2 / (2.0 * nf),
            )
        } else {
            let m = n / 2;
            let c2 = LN_2 / 2.0 + ratio(2 * m + 4).max(ratio(2 * m + 6)).ln();
            (
                (1..=m).map(|j| ln(2 * j)).sum::<f64>() / nf,
                (1..=m + 3).map(|j| ln1(2 * j)).sum::<f64>() / nf + c2 / nf,
            )
        };
        (num_lo / den_lo, num_hi / den_hi)
    }

    #[test]
    fn all_ones_band_is_vacuous() {
        let ones = s("[;(1)]");
        for n in [1, 2, 7, 40] {
            for band in [holder_band_f1(&ones, n).unwrap(), holder_band_f2(&ones, n).unwrap()] {
                assert_eq!(band.lower, 0.0);
                assert_eq!(band.upper, UpperBound::Infinite);
                assert!(band.c1 >= LN_2 / 2.0 && band.c2 >= LN_2 / 2.0);
                assert_eq!(band.to_json()["upper"], "inf");
            }
        }
    }

    #[test]
    fn band_matches_oracle_on_small_digits() {
        let digits: Vec<u64> = vec![3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4];
        let word = CFWord::from_u64s(&digits).unwrap();
        let stream = DigitStream::finite(word);
        for n in 1..=12 {
            for (component, f1) in [(Component::F1, true), (Component::F2, false)] {
                let band = holder_band(&stream, n, component).unwrap();
                let (lo, hi) = band_oracle(&digits, n, f1);
                assert!((band.lower - lo).abs() < 1e-12, "n={n} {component}");
                assert!((band.upper.value() - hi).abs() < 1e-12, "n={n} {component}");
                assert!(band.lower <= band.upper.value());
            }
        }
    }

    #[test]
    fn band_needs_enough_digits() {
        let short = s("[2,3,4,5]");
        assert_eq!(
            holder_band_f1(&short, 2).unwrap_err(),
            CfError::Exhausted { available: 4 }
        );
        assert!(holder_band_f1(&s("[;(2)]"), 0).is_err());
        assert_eq!(band_digits_needed(Component::F1, 3), 9);
        assert_eq!(band_digits_needed(Component::F2, 3), 8);
    }

    #[test]
    fn multifractal_digits() {
        let m = multifractal_example(6).unwrap();
        assert_eq!(m.to_string(), "[1,4,1,16,1,64]");
        assert_eq!(split(&m).odd_stream.to_string(), "[1,1,1]");
        assert!(multifractal_example(0).is_err());
    }

    #[test]
    fn multifractal_band_collapses() {
        let m = multifractal_example(900).unwrap();
        let b400 = holder_band_f1(&m, 400).unwrap();
        let b800 = holder_band_f1(&m, 800).unwrap();
        assert_eq!(b400.lower, 0.0);
        assert!(b400.upper.value() <= 0.02, "{:?}", b400.upper);
        assert!(b800.upper.value() <= b400.upper.value());
        // Oracle: numerator ~ (201 + 1) log 2 / n + C2/(2n) over denominator
        // log 2 * (2 + 4 + ... + 400)/n, computed with exact integer sums.
        let n = 400.0;
        let even_sum: f64 = (1..=200).map(|i| (2 * i) as f64).sum();
        let num = (203.0 * LN_2) / n + b400.c2 / (2.0 * n);
        let den = LN_2 * even_sum / n;
        assert!((b400.upper.value() - num / den).abs() < 1e-12);

        let f2 = holder_band_f2(&m, 400).unwrap();
        assert!(f2.lower > 0.0 && f2.upper.value().is_finite());
        assert!(f2.lower <= f2.upper.value());
    }

    #[test]
    fn slope_example_golden_f1() {
        let x = s("[;(1)]");
        let y = s("[1,1,1,2;(1)]");
        let sample = slope_sample(&x, &y, 3, Component::F1, 1e-12).unwrap();
        // Digit 4 is even-indexed, so f_1(x) = f_1(y).
        assert_eq!(sample.slope, f64::INFINITY);
        assert!(holder_band_f1(&x, 3).unwrap().admits(sample.slope, 1e-6));
        let f2 = slope_sample(&x, &y, 3, Component::F2, 1e-12).unwrap();
        assert!(f2.slope.is_finite());
        assert!(holder_band_f2(&x, 3).unwrap().admits(f2.slope, 1e-6));
    }

    #[test]
    fn slope_example_silver_f2() {
        let x = s("[;(2)]");
        let y = s("[2,2,2,3;(2)]");
        let sample = slope_sample(&x, &y, 3, Component::F2, 1e-12).unwrap();
        let band = holder_band_f2(&x, 3).unwrap();
        assert!(sample.slope.is_finite() && sample.enclosure_width_bound < 1e-9);
        assert!(band.admits(sample.slope, 1e-6), "{sample:?} {band:?}");
        // Shared prefix must be exact.
        assert!(slope_sample(&x, &y, 4, Component::F2, 1e-12).is_err());
    }

    #[test]
    fn slope_rejects_empty_prefix() {
        let x = s("[;(1)]");
        let y = s("[2;(1)]");
        assert!(matches!(
            slope_sample(&x, &y, 0, Component::F1, 1e-12),
            Err(CfError::Domain(_))
        ));
    }

    #[test]
    fn khintchine_first_term_vanishes() {
        assert_eq!(khintchine_partial_sum(0, 1, 1), 0.0);
    }

    #[test]
    fn khintchine_tail_is_honored() {
        for k in [0, 1] {
            let r = khintchine(k, 1e-5).unwrap();
            assert!(r.converged && r.tail_bound <= 1e-5);
            let extra = khintchine_partial_sum(k, r.truncation_j + 1, 2 * r.truncation_j);
            assert!(extra >= 0.0 && extra < r.tail_bound);
        }
    }

    #[test]
    fn khintchine_rejects_bad_tail() {
        assert!(khintchine(0, 0.0).is_err());
        assert!(khintchine(0, f64::NAN).is_err());
    }

    #[test]
    fn ergodic_examples() {
        let ones = s("[;(1)]");
        let r = ergodic_averages(&ones, 10, 0).unwrap();
        assert_eq!((r.mean_all, r.mean_even, r.mean_odd), (0.0, 0.0, 0.0));
        let r = ergodic_averages(&ones, 10, 1).unwrap();
        for v in [r.mean_all, r.mean_even, r.mean_odd] {
            assert!((v - LN_2).abs() < 1e-15);
        }
        let r = ergodic_averages(&s("[;(1,2)]"), 10, 0).unwrap();
        assert!((r.mean_all - LN_2 / 2.0).abs() < 1e-15);
        assert!((r.mean_even - LN_2).abs() < 1e-15);
        assert_eq!(r.mean_odd, 0.0);
        assert_eq!(r.csv_row().split(',').count(), 5);
        assert!(ergodic_averages(&s("[1,2,3]"), 2, 0).is_err());
    }
}
