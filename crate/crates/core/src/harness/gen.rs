//! Seeded generators for suite inputs. Every generator is a pure function of
//! `(seed, index)`.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::sample::rng_for;
use crate::stream::DigitStream;
use crate::word::CFWord;

pub const MAX_WORD_DIGIT: u64 = 1_000_000;

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    rng_for(seed, index)
}

/// A digit with the tail `P(a >= k) ~ 1/k` of a uniform point, capped at `max`.
pub fn gauss_like_digit(rng: &mut ChaCha8Rng, max: u64) -> u64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    ((1.0 / u).floor() as u64).clamp(1, max)
}

/// A digit whose logarithm is uniform on `[0, ln max]`.
pub fn log_uniform_digit(rng: &mut ChaCha8Rng, max: u64) -> u64 {
    let t: f64 = rng.gen_range(0.0..=(max as f64).ln());
    (t.exp().floor() as u64).clamp(1, max)
}

/// Mostly small digits with occasional large ones.
pub fn mixed_digit(rng: &mut ChaCha8Rng, max: u64) -> u64 {
    if rng.gen_bool(0.8) {
        gauss_like_digit(rng, max)
    } else {
        log_uniform_digit(rng, max)
    }
}

pub fn random_digits(rng: &mut ChaCha8Rng, len: usize, max: u64) -> Vec<u64> {
    (0..len).map(|_| mixed_digit(rng, max)).collect()
}

pub fn random_word(rng: &mut ChaCha8Rng, len: usize, max: u64) -> CFWord {
    CFWord::from_vec_unchecked(
        random_digits(rng, len, max)
            .into_iter()
            .map(BigUint::from)
            .collect(),
    )
}

fn word_of(digits: &[u64]) -> CFWord {
    CFWord::from_vec_unchecked(digits.iter().copied().map(BigUint::from).collect())
}

fn periodic_with(rng: &mut ChaCha8Rng, preamble: &[u64], max: u64) -> DigitStream {
    let period_len = rng.gen_range(1..=4);
    let period = random_digits(rng, period_len, max);
    DigitStream::periodic(word_of(preamble), word_of(&period)).expect("digits are positive")
}

fn other_digit(rng: &mut ChaCha8Rng, avoid: u64, max: u64) -> u64 {
    loop {
        let d = mixed_digit(rng, max);
        if d != avoid {
            return d;
        }
    }
}

/// An eventually periodic pair `(x, y)` sharing exactly `n` digits, with
/// `1 <= n <= max_n`. The streams also differ at position `n + 2`, so each
/// component of `y` leaves the rank interval of the matching component of `x`
/// right after the part forced by the shared prefix.
pub fn sandwich_triple(seed: u64, index: u64, max_n: usize) -> (DigitStream, DigitStream, usize) {
    let mut rng = rng(seed, index);
    let n = rng.gen_range(1..=max_n.max(1));
    let max = if rng.gen_bool(0.9) { 50 } else { MAX_WORD_DIGIT };
    let x_pre = random_digits(&mut rng, n + 2, max);
    let mut y_pre = x_pre[..n].to_vec();
    y_pre.push(other_digit(&mut rng, x_pre[n], max));
    y_pre.push(other_digit(&mut rng, x_pre[n + 1], max));
    let x = periodic_with(&mut rng, &x_pre, max);
    let y = periodic_with(&mut rng, &y_pre, max);
    (x, y, n)
}

/// Two finite words of length `depth` that disagree somewhere.
pub fn metric_pair(seed: u64, index: u64, depth: usize) -> (DigitStream, DigitStream) {
    let mut rng = rng(seed, index);
    let a = random_digits(&mut rng, depth, 20);
    let mut b = a.clone();
    let first = rng.gen_range(0..depth);
    for (j, digit) in b.iter_mut().enumerate().skip(first) {
        if j == first || rng.gen_bool(0.5) {
            *digit = other_digit(&mut rng, a[j], 20);
        }
    }
    (
        DigitStream::finite(word_of(&a)),
        DigitStream::finite(word_of(&b)),
    )
}
