//! Verification suites run as batch experiments.
//!
//! | suite      | `samples`                | `depth`                       |
//! |------------|--------------------------|-------------------------------|
//! | identities | random words             | maximum word length           |
//! | bijection  | streams                  | digits per stream             |
//! | sandwich   | `(x, y, n)` triples      | maximum shared prefix `n` (≤ 60) |
//! | khintchine | Monte-Carlo points       | digits per point              |
//! | ergodic    | Monte-Carlo points       | terms per mean                |
//! | witness    | unused                   | maximum denominator           |
//! | band       | unused                   | unused                        |
//! | metric     | pairs                    | truncation depth              |

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{gen, OutputFormat, RunConfig};
use crate::cantor::{component_intervals, discontinuity_witness, interleave, split};
use crate::convergent::{convergents, rank_interval, RankInterval};
use crate::enclosure::{enclose_value, Enclosure};
use crate::error::{CfError, Result};
use crate::metric::{distance_d, distance_dprime, Ultrametric};
use crate::numeric::{ln_biguint, KahanSum};
use crate::regularity::{
    ae_band_from, ergodic_from_digits, holder_band, holder_band_f1, khintchine,
    khintchine_partial_sum, multifractal_example, slope_sample, Component, UpperBound,
    AE_BAND_TAIL,
};
use crate::sample::sample_irrational;
use crate::stream::DigitStream;
use crate::text::format_rational;
use crate::word::{eval_finite, rational_to_cf, CFWord};

pub const LOG_K0: f64 = 0.987849056;
pub const LOG_K1: f64 = 1.409785988;
pub const KHINTCHINE_TOLERANCE: f64 = 1e-4;
pub const AE_LOWER: f64 = 0.3504;
pub const AE_UPPER: f64 = 0.7136;
pub const AE_TOLERANCE: f64 = 1e-3;
pub const MEAN_TOLERANCE: f64 = 0.05;
pub const PARITY_MEAN_TOLERANCE: f64 = 0.08;
pub const SANDWICH_EPS: f64 = 1e-6;
pub const SANDWICH_PRECISION: f64 = 1e-9;
pub const SANDWICH_MAX_N: usize = 60;
pub const FUNCTORIALITY_MAX_N: usize = 200;
pub const MAX_IDENTITY_DIGIT: u64 = gen::MAX_WORD_DIGIT;
pub const ROUNDTRIP_MAX_DENOMINATOR: u64 = 200;

const MAX_LISTED_FAILURES: usize = 10;
const SECOND_STREAM_SEED: u64 = 0x5851_f42d_4c95_7f2d;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Bijection,
    Sandwich,
    Khintchine,
    Ergodic,
    Witness,
    Band,
    Metric,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Identities,
        Suite::Bijection,
        Suite::Sandwich,
        Suite::Khintchine,
        Suite::Ergodic,
        Suite::Witness,
        Suite::Band,
        Suite::Metric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Bijection => "bijection",
            Suite::Sandwich => "sandwich",
            Suite::Khintchine => "khintchine",
            Suite::Ergodic => "ergodic",
            Suite::Witness => "witness",
            Suite::Band => "band",
            Suite::Metric => "metric",
        }
    }

    /// Default `(samples, depth, bits)` for the suite.
    pub fn default_scale(self) -> (usize, usize, u32) {
        match self {
            Suite::Identities => (1000, 50, 1024),
            Suite::Bijection => (1000, 2000, 8192),
            Suite::Sandwich => (10_000, SANDWICH_MAX_N, 1024),
            Suite::Khintchine | Suite::Ergodic => (200, 500, 8192),
            Suite::Witness => (1, 50, 1024),
            Suite::Band => (1, 1, 1024),
            Suite::Metric => (10_000, 40, 1024),
        }
    }

    pub fn default_config(self, seed: u64) -> RunConfig {
        let (samples, depth, bits) = self.default_scale();
        RunConfig {
            seed,
            samples,
            depth,
            bits,
            ..RunConfig::default()
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CfError::parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportConfig {
    pub seed: u64,
    pub samples: usize,
    pub depth: usize,
    pub bits: u32,
}

/// Outcome of one suite. Contains no timing data, so equal configurations
/// give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub pass: bool,
    pub config: ReportConfig,
    pub metrics: Map<String, Value>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub precision_exhausted: bool,
}

impl VerifyReport {
    /// 0 on pass, 3 when the suite stopped for lack of precision, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match (self.pass, self.precision_exhausted) {
            (true, _) => 0,
            (false, true) => 3,
            (false, false) => 1,
        }
    }

    pub fn metric(&self, key: &str) -> Option<&Value> {
        self.metrics.get(key)
    }

    pub fn metric_f64(&self, key: &str) -> Option<f64> {
        self.metrics.get(key).and_then(Value::as_f64)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// `key,value` rows for the scalar fields and metrics.
    pub fn to_csv(&self) -> String {
        let mut out = format!("key,value\nsuite,{}\npass,{}\n", self.suite, self.pass);
        for (key, value) in &self.metrics {
            out.push_str(&format!("{key},{value}\n"));
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Collects check outcomes for a suite.
#[derive(Default)]
struct Checks {
    metrics: Map<String, Value>,
    failures: Vec<String>,
    failure_count: usize,
}

impl Checks {
    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.metrics.insert(key.to_string(), value.into());
    }

    fn fail(&mut self, message: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(message.into());
        }
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(message());
        }
    }
}

/// Runs `suite` without writing anything.
pub fn run_suite(config: &RunConfig, suite: Suite) -> Result<VerifyReport> {
    config.validate()?;
    let mut checks = Checks::default();
    let outcome = match suite {
        Suite::Identities => identities(config, &mut checks),
        Suite::Bijection => bijection(config, &mut checks),
        Suite::Sandwich => sandwich(config, &mut checks),
        Suite::Khintchine => khintchine_suite(config, &mut checks),
        Suite::Ergodic => ergodic(config, &mut checks),
        Suite::Witness => witness(config, &mut checks),
        Suite::Band => band(config, &mut checks),
        Suite::Metric => metric(config, &mut checks),
    };
    let (error, precision_exhausted) = match &outcome {
        Ok(()) => (None, false),
        Err(e) => (Some(e.to_string()), e.is_precision()),
    };
    checks.set("failure_count", checks.failure_count);
    Ok(VerifyReport {
        schema_version: 1,
        suite,
        pass: outcome.is_ok() && checks.failure_count == 0,
        config: ReportConfig {
            seed: config.seed,
            samples: config.samples,
            depth: config.depth,
            bits: config.bits,
        },
        metrics: checks.metrics,
        failures: checks.failures,
        error,
        precision_exhausted,
    })
}

/// Runs `suite` and writes its report, also when the suite fails.
pub fn cmd_verify(config: &RunConfig, suite: Suite) -> Result<VerifyReport> {
    let report = run_suite(config, suite)?;
    config.emit(&report.render(config.output_format))?;
    Ok(report)
}

fn int(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

fn sign(j: usize) -> BigInt {
    if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn ratio(p: &BigUint, q: &BigUint) -> BigRational {
    BigRational::new(int(p), int(q))
}

/// Exact convergent identities for one word; returns the first violated one.
pub fn word_identity_violation(word: &CFWord) -> Option<String> {
    let table = convergents(word);
    let n = word.len() as isize;
    let (mut prod_lo, mut prod_hi) = (BigUint::one(), BigUint::one());
    for j in 1..=n {
        let (p, q) = (int(table.p(j)), int(table.q(j)));
        let (p1, q1) = (int(table.p(j - 1)), int(table.q(j - 1)));
        let (p2, q2) = (int(table.p(j - 2)), int(table.q(j - 2)));
        let a = word.get(j as usize).expect("index within word");
        let ju = j as usize;
        if &p * &q1 - &p1 * &q != -sign(ju) {
            return Some(format!("{word}: p_j q_(j-1) - p_(j-1) q_j at j={j}"));
        }
        if &p * &q2 - &p2 * &q != sign(ju) * int(a) {
            return Some(format!("{word}: p_j q_(j-2) - p_(j-2) q_j at j={j}"));
        }
        let gap = BigRational::new(p1.clone(), q1.clone()) - BigRational::new(p.clone(), q.clone());
        if gap != BigRational::new(sign(ju), &q * &q1) {
            return Some(format!("{word}: convergent gap at j={j}"));
        }
        prod_lo *= a;
        prod_hi *= a + 1u32;
        if !(prod_lo <= *table.q(j) && *table.q(j) <= prod_hi) {
            return Some(format!("{word}: q-product bounds at j={j}"));
        }
    }
    let value = ratio(table.p(n), table.q(n));
    if eval_finite(word).ok() != Some(value) {
        return Some(format!("{word}: eval differs from p_n/q_n"));
    }
    // Even-indexed convergents increase, odd-indexed decrease, evens below odds.
    let conv: Vec<BigRational> = (1..=n).map(|j| ratio(table.p(j), table.q(j))).collect();
    let evens: Vec<_> = conv.iter().skip(1).step_by(2).collect();
    let odds: Vec<_> = conv.iter().step_by(2).collect();
    if !evens.windows(2).all(|w| w[0] < w[1]) || !odds.windows(2).all(|w| w[0] > w[1]) {
        return Some(format!("{word}: convergents not monotone by parity"));
    }
    if let (Some(max_even), Some(min_odd)) = (evens.last(), odds.last()) {
        if max_even >= min_odd {
            return Some(format!("{word}: even convergent above odd convergent"));
        }
    }
    let interval = rank_interval(word).expect("word is nonempty");
    let qn = int(table.q(n));
    if interval.measure != &interval.hi - &interval.lo
        || interval.measure > BigRational::new(BigInt::one(), &qn * &qn)
    {
        return Some(format!("{word}: rank interval measure"));
    }
    if word.len() >= 2 {
        let parent = rank_interval(&word.prefix(word.len() - 1)).expect("nonempty");
        if !parent.contains_interval(&interval) || parent.measure <= interval.measure {
            return Some(format!("{word}: rank intervals not nested"));
        }
    }
    None
}

fn identities(config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let mut rationals = 0u64;
    for q in 1..=ROUNDTRIP_MAX_DENOMINATOR {
        for p in 1..=q {
            if p.gcd(&q) != 1 {
                continue;
            }
            rationals += 1;
            let x = BigRational::new(p.into(), q.into());
            let back = rational_to_cf(&x).and_then(|w| eval_finite(&w));
            checks.check(back.as_ref() == Ok(&x), || format!("roundtrip of {p}/{q}"));
        }
    }
    checks.set("rationals", rationals);
    let max_len = config.depth;
    for i in 0..config.samples {
        let mut rng = gen::rng(config.seed, i as u64);
        let len = rand::Rng::gen_range(&mut rng, 1..=max_len);
        let word = gen::random_word(&mut rng, len, MAX_IDENTITY_DIGIT);
        if let Some(message) = word_identity_violation(&word) {
            checks.fail(message);
        }
    }
    checks.set("words", config.samples);
    checks.set("max_word_length", max_len);
    Ok(())
}

fn interleave_words(a: &CFWord, b: &CFWord) -> CFWord {
    let mut digits = Vec::with_capacity(a.len() + b.len());
    for j in 0..a.len().max(b.len()) {
        digits.extend(a.digits().get(j).cloned());
        digits.extend(b.digits().get(j).cloned());
    }
    CFWord::new(digits).expect("digits are positive")
}

/// Sample `i` of the bijection suite: a finite word for even `i`, a certified
/// random stream for odd `i`.
fn bijection_stream(config: &RunConfig, i: u64, seed: u64) -> Result<DigitStream> {
    if i.is_multiple_of(2) {
        let mut rng = gen::rng(seed, i);
        Ok(DigitStream::finite(gen::random_word(&mut rng, config.depth, MAX_IDENTITY_DIGIT)))
    } else {
        sample_irrational(seed, i, config.bits)
    }
}

fn bijection(config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let d = config.depth;
    let functorial = config.samples.div_ceil(10);
    let max_n = d.min(FUNCTORIALITY_MAX_N);
    let mut functoriality_checks = 0u64;
    for i in 0..config.samples as u64 {
        let s = bijection_stream(config, i, config.seed)?;
        let t = bijection_stream(config, i, config.seed ^ SECOND_STREAM_SEED)?;
        let w = s.prefix(d)?;
        let v = t.prefix(d)?;
        let pair = split(&s);
        let odd = pair.odd_stream.prefix(d.div_ceil(2))?;
        let even = pair.even_stream.prefix(d / 2)?;
        checks.check(odd == w.odd_part() && even == w.even_part(), || {
            format!("split of sample {i} differs from its odd/even digits")
        });
        let back = interleave(&pair.odd_stream, &pair.even_stream).prefix(d)?;
        checks.check(back == w, || format!("interleave(split(s)) != s for sample {i}"));
        let joined = interleave(&s, &t);
        checks.check(joined.prefix(2 * d)? == interleave_words(&w, &v), || {
            format!("interleave digits wrong for sample {i}")
        });
        let again = split(&joined);
        checks.check(
            again.odd_stream.prefix(d)? == w && again.even_stream.prefix(d)? == v,
            || format!("split(interleave(s, t)) != (s, t) for sample {i}"),
        );
        if (i as usize) < functorial {
            functoriality_checks += rank_functoriality(&s, &w, &v, i, max_n, checks)?;
        }
    }
    checks.set("streams", config.samples);
    checks.set("digits_per_stream", d);
    checks.set("functoriality_streams", functorial.min(config.samples));
    checks.set("functoriality_max_n", max_n);
    checks.set("functoriality_checks", functoriality_checks);
    Ok(())
}

/// `f(I_n(x))` lies in `I_ceil(n/2)(f_1 x) x I_floor(n/2)(f_2 x)`, checked on an
/// irrational point of `I_n(x)` for every `n <= max_n`.
fn rank_functoriality(
    s: &DigitStream,
    w: &CFWord,
    tail_source: &CFWord,
    i: u64,
    max_n: usize,
    checks: &mut Checks,
) -> Result<u64> {
    let pair = split(s);
    let odd = pair.odd_stream.prefix(max_n.div_ceil(2))?;
    let even = pair.even_stream.prefix(max_n / 2)?;
    let tail = DigitStream::periodic(
        tail_source.prefix(3.min(tail_source.len())),
        CFWord::from_u64s(&[1, 2])?,
    )?;
    for n in 1..=max_n {
        let prefix = w.prefix(n);
        let (r1, r2) = component_intervals(&prefix);
        let e1 = RankInterval::from_table(&convergents(&odd.prefix(n.div_ceil(2))));
        let e2 = RankInterval::from_table(&convergents(&even.prefix(n / 2)));
        checks.check(r1 == e1 && r2 == e2, || {
            format!("component intervals of sample {i} at n={n}")
        });
        let z = DigitStream::prefixed(prefix, tail.clone());
        let zs = split(&z);
        let depth = n / 2 + 8;
        let z1 = enclose_value(&zs.odd_stream, depth)?;
        let z2 = enclose_value(&zs.even_stream, depth)?;
        checks.check(
            Enclosure::from(r1).contains_enclosure(&z1) && Enclosure::from(r2).contains_enclosure(&z2),
            || format!("f(I_n) escapes the component rank intervals, sample {i}, n={n}"),
        );
    }
    Ok(max_n as u64)
}

fn sandwich(config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let max_n = config.depth.min(SANDWICH_MAX_N);
    let mut infinite = 0u64;
    let mut max_upper_excess = f64::NEG_INFINITY;
    let mut max_lower_excess = f64::NEG_INFINITY;
    let mut max_width = 0f64;
    for i in 0..config.samples as u64 {
        let (x, y, n) = gen::sandwich_triple(config.seed, i, max_n);
        for component in [Component::F1, Component::F2] {
            let band = holder_band(&x, n, component)?;
            let sample = slope_sample(&x, &y, n, component, SANDWICH_PRECISION)?;
            max_width = max_width.max(sample.enclosure_width_bound);
            max_lower_excess = max_lower_excess.max(band.lower - sample.slope);
            let above = match band.upper {
                UpperBound::Finite(u) if sample.slope.is_finite() => {
                    max_upper_excess = max_upper_excess.max(sample.slope - u);
                    sample.slope > u + SANDWICH_EPS
                }
                UpperBound::Finite(_) => {
                    infinite += 1;
                    true
                }
                UpperBound::Infinite => false,
            };
            let below = sample.slope < band.lower - SANDWICH_EPS;
            checks.check(!above && !below, || {
                format!(
                    "{component} x={x} y={y} n={n}: slope {} outside [{}, {}]",
                    sample.slope,
                    band.lower,
                    band.upper.value()
                )
            });
        }
    }
    checks.set("triples", config.samples);
    checks.set("max_n", max_n);
    checks.set("epsilon", SANDWICH_EPS);
    checks.set("infinite_slopes", infinite);
    checks.set("max_slope_minus_upper", finite_or_null(max_upper_excess));
    checks.set("max_lower_minus_slope", finite_or_null(max_lower_excess));
    checks.set("max_enclosure_width", max_width);
    Ok(())
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Grand means over `samples` uniform points of `(1/n) sum log a_j` and
/// `(1/n) sum log(a_j + 1)` for the first `n = depth` digits.
fn monte_carlo_means(config: &RunConfig) -> Result<(f64, f64)> {
    let (mut k0, mut k1) = (KahanSum::default(), KahanSum::default());
    for i in 0..config.samples as u64 {
        let word = sample_irrational(config.seed, i, config.bits)?.prefix(config.depth)?;
        let (mut s0, mut s1) = (KahanSum::default(), KahanSum::default());
        for a in word.digits() {
            s0.add(ln_biguint(a));
            s1.add(ln_biguint(&(a + 1u32)));
        }
        k0.add(s0.value() / config.depth as f64);
        k1.add(s1.value() / config.depth as f64);
    }
    let n = config.samples as f64;
    Ok((k0.value() / n, k1.value() / n))
}

fn khintchine_suite(config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let mut results = Vec::new();
    for (k, expected) in [(0u32, LOG_K0), (1, LOG_K1)] {
        let r = khintchine(k, AE_BAND_TAIL)?;
        let extension = khintchine_partial_sum(k, r.truncation_j + 1, 2 * r.truncation_j);
        checks.check(r.converged, || format!("k={k}: tail target not reached"));
        checks.check((r.log_value - expected).abs() <= KHINTCHINE_TOLERANCE, || {
            format!("log K_{k} = {} differs from {expected}", r.log_value)
        });
        checks.check(extension.abs() < r.tail_bound, || {
            format!("k={k}: doubling J moved the sum by {extension} > {}", r.tail_bound)
        });
        checks.set(&format!("log_k{k}"), r.log_value);
        checks.set(&format!("log_k{k}_error"), r.log_value - expected);
        checks.set(&format!("truncation_j_k{k}"), r.truncation_j);
        checks.set(&format!("tail_bound_k{k}"), r.tail_bound);
        checks.set(&format!("doubling_change_k{k}"), extension);
        results.push(r);
    }
    let ae = ae_band_from(&results[0], &results[1]);
    check_ae_band(ae.lower, ae.upper, checks);
    let (mean0, mean1) = monte_carlo_means(config)?;
    checks.set("grand_mean", mean0);
    checks.set("grand_mean_shifted", mean1);
    checks.check((mean0 - LOG_K0).abs() < MEAN_TOLERANCE, || {
        format!("grand mean {mean0} not within {MEAN_TOLERANCE} of {LOG_K0}")
    });
    checks.check((mean1 - LOG_K1).abs() < MEAN_TOLERANCE, || {
        format!("shifted grand mean {mean1} not within {MEAN_TOLERANCE} of {LOG_K1}")
    });
    Ok(())
}

fn check_ae_band(lower: f64, upper: f64, checks: &mut Checks) {
    checks.set("ae_lower", lower);
    checks.set("ae_upper", upper);
    checks.set("ae_product", lower * upper);
    checks.check((lower * upper - 0.25).abs() <= 1e-9, || {
        format!("ae band product {} != 1/4", lower * upper)
    });
    checks.check(lower < 0.5 && 0.5 < upper, || "ae band misses 1/2".to_string());
    checks.check(
        (lower - AE_LOWER).abs() <= AE_TOLERANCE && (upper - AE_UPPER).abs() <= AE_TOLERANCE,
        || format!("ae band ({lower}, {upper}) not within {AE_TOLERANCE} of ({AE_LOWER}, {AE_UPPER})"),
    );
}

fn ergodic(config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let n = config.depth;
    let mut sums = [[KahanSum::default(); 3]; 2];
    for i in 0..config.samples as u64 {
        let word = sample_irrational(config.seed, i, config.bits)?.prefix(2 * n)?;
        for (k, row) in sums.iter_mut().enumerate() {
            let r = ergodic_from_digits(&word, n, k as u32);
            row[0].add(r.mean_all);
            row[1].add(r.mean_even);
            row[2].add(r.mean_odd);
        }
    }
    let count = config.samples as f64;
    for (k, expected) in [(0usize, LOG_K0), (1, LOG_K1)] {
        for (m, (name, tolerance)) in [
            ("all", MEAN_TOLERANCE),
            ("even", PARITY_MEAN_TOLERANCE),
            ("odd", PARITY_MEAN_TOLERANCE),
        ]
        .into_iter()
        .enumerate()
        {
            let mean = sums[k][m].value() / count;
            checks.set(&format!("mean_{name}_k{k}"), mean);
            checks.check((mean - expected).abs() < tolerance, || {
                format!("k={k} {name}: grand mean {mean} not within {tolerance} of {expected}")
            });
        }
    }
    checks.set("samples", config.samples);
    checks.set("terms", n);
    Ok(())
}

fn witness(config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let ones = DigitStream::constant(1)?;
    let mut rationals = 0u64;
    let mut witnesses = 0u64;
    for q in 2..=config.depth as u64 {
        for p in 1..q {
            if p.gcd(&q) != 1 {
                continue;
            }
            rationals += 1;
            let x = BigRational::new(p.into(), q.into());
            let mut rng = gen::rng(config.seed, rationals);
            let random_tail = DigitStream::periodic(
                gen::random_word(&mut rng, 2, 9),
                gen::random_word(&mut rng, 2, 9),
            )?;
            for tail in [&ones, &random_tail] {
                witnesses += 1;
                match discontinuity_witness(&x, tail) {
                    Ok(w) => checks.check(w.limits_differ(), || {
                        format!("limits coincide at {} with tail {tail}", format_rational(&x))
                    }),
                    Err(e) => checks.fail(format!("{}: {e}", format_rational(&x))),
                }
            }
        }
    }
    checks.set("rationals", rationals);
    checks.set("witnesses", witnesses);
    checks.set("max_denominator", config.depth);
    Ok(())
}

fn band(_config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let k0 = khintchine(0, AE_BAND_TAIL)?;
    let k1 = khintchine(1, AE_BAND_TAIL)?;
    let ae = ae_band_from(&k0, &k1);
    check_ae_band(ae.lower, ae.upper, checks);
    let point = multifractal_example(810)?;
    let u400 = holder_band_f1(&point, 400)?.upper.value();
    let u800 = holder_band_f1(&point, 800)?.upper.value();
    checks.set("multifractal_upper_400", u400);
    checks.set("multifractal_upper_800", u800);
    checks.check(u400 <= 0.02, || format!("upper bound at n=400 is {u400} > 0.02"));
    checks.check(u800 <= u400, || format!("upper bound grew from {u400} to {u800}"));
    Ok(())
}

fn metric(config: &RunConfig, checks: &mut Checks) -> Result<()> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let mut min_ratio = f64::INFINITY;
    for i in 0..config.samples as u64 {
        let (a, b) = gen::metric_pair(config.seed, i, config.depth);
        let d = distance_d(&a, &b, config.depth)?;
        let dp = match distance_dprime(&a, &b, config.depth)? {
            Ultrametric::Exact(v) => v,
            Ultrametric::AtMost(_) => {
                checks.fail(format!("pair {i} agrees through depth {}", config.depth));
                continue;
            }
        };
        checks.check(&quarter * &dp <= d.lower && d.upper < dp, || {
            format!("pair {i}: d in [{}, {}], d' = {}", d.lower, d.upper, dp)
        });
        if !d.lower.is_zero() {
            min_ratio = min_ratio.min(crate::numeric::ln_rational(&(&d.lower / &dp)).exp());
        }
    }
    checks.set("pairs", config.samples);
    checks.set("depth", config.depth);
    checks.set("min_d_lower_over_dprime", finite_or_null(min_ratio));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(samples: usize, depth: usize) -> RunConfig {
        RunConfig {
            seed: 3,
            samples,
            depth,
            bits: 4096,
            ..RunConfig::default()
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn identity_checks_accept_a_valid_word() {
        let w = CFWord::from_u64s(&[3, 1, 4, 1, 5]).unwrap();
        assert_eq!(word_identity_violation(&w), None);
    }

    #[test]
    fn witness_suite_on_small_denominators() {
        let report = run_suite(&small(1, 3), Suite::Witness).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.metric("rationals"), Some(&json!(3)));
    }

    #[test]
    fn small_suites_pass_and_are_reproducible() {
        for suite in [Suite::Identities, Suite::Bijection, Suite::Sandwich, Suite::Metric] {
            let config = small(20, 30);
            let a = run_suite(&config, suite).unwrap();
            let b = run_suite(&config, suite).unwrap();
            assert!(a.pass, "{}", a.to_json());
            assert_eq!(a.to_json(), b.to_json());
            assert_eq!(a.exit_code(), 0);
        }
    }

    #[test]
    fn exhausted_precision_maps_to_exit_code_3() {
        let config = RunConfig {
            samples: 2,
            depth: 60,
            bits: 180,
            ..RunConfig::default()
        };
        let report = run_suite(&config, Suite::Ergodic).unwrap();
        assert!(!report.pass);
        assert_eq!(report.exit_code(), 3);
        assert!(report.error.is_some());
    }
}
