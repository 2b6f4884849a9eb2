use std::cmp::Ordering;
use std::f64::consts::LN_2;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Exact comparison by cross-multiplication. The `Ord` of `BigRational`
/// recurses through continued-fraction steps, which is slow for close values.
pub fn cmp_q(a: &BigRational, b: &BigRational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

pub fn lt_q(a: &BigRational, b: &BigRational) -> bool {
    cmp_q(a, b) == Ordering::Less
}

pub fn le_q(a: &BigRational, b: &BigRational) -> bool {
    cmp_q(a, b) != Ordering::Greater
}

/// Natural log of a positive big integer, to f64 precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().expect("64-bit value fits in f64");
    top.ln() + shift as f64 * LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    assert!(x.is_positive(), "log of non-positive rational");
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

/// `ln((a + 2) / (a + 1)) = ln(1 + 1/(a + 1))`.
pub fn ln_shift_ratio(a: &BigUint) -> f64 {
    let inv = 1.0 / (a + 1u32).to_f64().unwrap_or(f64::INFINITY);
    inv.ln_1p()
}

/// Kahan-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
