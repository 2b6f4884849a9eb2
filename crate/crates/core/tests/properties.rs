use cantor_core::cantor::{component_intervals, forward_value, split};
use cantor_core::enclosure::{enclose_value, Enclosure};
use cantor_core::metric::{distance_d, distance_dprime, Ultrametric};
use cantor_core::regularity::holder_band_from_digits;
use cantor_core::{
    convergents, eval_finite, expand_certified, interleave, rank_interval, rational_to_cf,
    BigInt, BigRational, BigUint, CFWord, Component, DigitStream,
};
use proptest::prelude::*;

fn word(digits: &[u64]) -> CFWord {
    CFWord::from_u64s(digits).unwrap()
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn digits(max: u64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max, len)
}

/// Convergents by the recurrence in `u128`.
fn small_convergents(a: &[u64]) -> Vec<(u128, u128)> {
    let (mut p, mut q) = ((1u128, 0u128), (0u128, 1u128));
    let mut out = Vec::new();
    for &d in a {
        let d = u128::from(d);
        p = (p.1, d * p.1 + p.0);
        q = (q.1, d * q.1 + q.0);
        out.push((p.1, q.1));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn convergents_match_a_u128_recurrence(a in digits(50, 1..=12)) {
        let table = convergents(&word(&a));
        for (j, (p, q)) in small_convergents(&a).into_iter().enumerate() {
            let j = j as isize + 1;
            prop_assert_eq!(table.p(j), &BigUint::from(p));
            prop_assert_eq!(table.q(j), &BigUint::from(q));
        }
        let (p, q) = *small_convergents(&a).last().unwrap();
        prop_assert_eq!(
            eval_finite(&word(&a)).unwrap(),
            BigRational::new(BigInt::from(p), BigInt::from(q))
        );
    }

    #[test]
    fn determinant_identities_of_the_table(a in digits(1_000_000, 1..=40)) {
        let table = convergents(&word(&a));
        let int = |x: &BigUint| BigInt::from(x.clone());
        for j in 1..=a.len() as isize {
            let sign = BigInt::from(if j % 2 == 0 { 1 } else { -1 });
            let (p, q) = (int(table.p(j)), int(table.q(j)));
            let (p1, q1) = (int(table.p(j - 1)), int(table.q(j - 1)));
            let (p2, q2) = (int(table.p(j - 2)), int(table.q(j - 2)));
            prop_assert_eq!(&p * &q1 - &p1 * &q, -sign.clone());
            prop_assert_eq!(&p * &q2 - &p2 * &q, sign * BigInt::from(a[j as usize - 1]));
        }
    }

    #[test]
    fn q_is_sandwiched_by_digit_products(a in digits(1_000_000, 1..=30)) {
        let table = convergents(&word(&a));
        let mut lo = BigUint::from(1u32);
        let mut hi = BigUint::from(1u32);
        for (j, &d) in a.iter().enumerate() {
            lo *= d;
            hi *= d + 1;
            let qj = table.q(j as isize + 1);
            prop_assert!(&lo <= qj && qj <= &hi);
        }
    }

    #[test]
    fn euclid_roundtrip(p in 1u64..10_000, extra in 0u64..10_000) {
        let x = q(p as i64, (p + extra) as i64);
        let w = rational_to_cf(&x).unwrap();
        prop_assert!(w.is_canonical());
        prop_assert_eq!(eval_finite(&w).unwrap(), x);
    }

    #[test]
    fn rank_intervals_nest_and_shrink(a in digits(1000, 1..=20), k in 1u64..1000) {
        let w = word(&a);
        let parent = rank_interval(&w).unwrap();
        let mut extended = a.clone();
        extended.push(k);
        let child = rank_interval(&word(&extended)).unwrap();
        prop_assert!(parent.contains_interval(&child));
        prop_assert!(child.measure < parent.measure);
        prop_assert_eq!(&parent.measure, &(&parent.hi - &parent.lo));
        let qn = BigInt::from(convergents(&w).q(a.len() as isize).clone());
        prop_assert!(parent.measure <= BigRational::new(BigInt::from(1), &qn * &qn));
        // A rational with a longer expansion lies strictly inside.
        let mut longer = extended.clone();
        longer.push(2);
        prop_assert!(parent.contains(&eval_finite(&word(&longer)).unwrap()));
    }

    #[test]
    fn certified_digits_agree_with_interior_rationals(
        a in 1i64..1_000_000,
        width in 1i64..1000,
        t in 1i64..1000,
    ) {
        let den = 1_000_000 + 1000;
        let lo = q(a, den);
        let hi = q(a + width, den);
        let (w, _) = expand_certified(&lo, &hi, 64).unwrap();
        // An interior rational: lo + t/1000 * (hi - lo).
        let inner = &lo + (&hi - &lo) * q(t, 1000);
        let expansion = rational_to_cf(&inner).unwrap();
        for (j, d) in w.digits().iter().enumerate() {
            if j + 1 < expansion.len() {
                prop_assert_eq!(d, &expansion.digits()[j]);
            }
        }
    }

    #[test]
    fn split_and_interleave_are_inverse_on_words(a in digits(100, 0..=40), b in digits(100, 0..=40)) {
        let n = a.len().min(b.len());
        let (a, b) = (&a[..n], &b[..n]);
        let joined = interleave(
            &DigitStream::finite(CFWord::from_u64s(a).unwrap()),
            &DigitStream::finite(CFWord::from_u64s(b).unwrap()),
        );
        let pair = split(&joined);
        prop_assert_eq!(pair.odd_stream.prefix_upto(n + 1).0, word_or_empty(a));
        prop_assert_eq!(pair.even_stream.prefix_upto(n + 1).0, word_or_empty(b));
        let back = interleave(&pair.odd_stream, &pair.even_stream);
        prop_assert_eq!(back, joined);
    }

    #[test]
    fn split_and_interleave_are_inverse_on_periodic_streams(
        pa in digits(9, 0..=4), ra in digits(9, 1..=3),
        pb in digits(9, 0..=4), rb in digits(9, 1..=3),
    ) {
        let x = DigitStream::periodic(word_or_empty(&pa), word(&ra)).unwrap();
        let y = DigitStream::periodic(word_or_empty(&pb), word(&rb)).unwrap();
        let joined = interleave(&x, &y);
        prop_assert!(joined.is_periodic());
        let pair = split(&joined);
        prop_assert_eq!(&pair.odd_stream, &x);
        prop_assert_eq!(&pair.even_stream, &y);
        let expected: Vec<u64> = x.prefix(20).unwrap().digits().iter()
            .zip(y.prefix(20).unwrap().digits())
            .flat_map(|(u, v)| [u.try_into().unwrap(), v.try_into().unwrap()])
            .collect();
        prop_assert_eq!(joined.prefix(40).unwrap(), word(&expected));
    }

    #[test]
    fn image_of_a_rank_interval_stays_in_the_component_intervals(
        a in digits(30, 1..=30),
        tail in digits(30, 1..=4),
    ) {
        let prefix = word(&a);
        let (r1, r2) = component_intervals(&prefix);
        let x = DigitStream::prefixed(prefix, DigitStream::periodic(CFWord::empty(), word(&tail)).unwrap());
        let (e1, e2) = forward_value(&x, a.len() + 4).unwrap();
        prop_assert!(Enclosure::from(r1).contains_enclosure(&e1));
        prop_assert!(Enclosure::from(r2).contains_enclosure(&e2));
    }

    #[test]
    fn metric_comparison_holds(a in digits(20, 30..=30), b in digits(20, 30..=30)) {
        prop_assume!(a != b);
        let (sa, sb) = (DigitStream::finite(word(&a)), DigitStream::finite(word(&b)));
        let d = distance_d(&sa, &sb, 30).unwrap();
        let Ultrametric::Exact(dp) = distance_dprime(&sa, &sb, 30).unwrap() else {
            panic!("distinct words of equal length differ somewhere");
        };
        prop_assert!(q(1, 4) * &dp <= d.lower);
        prop_assert!(d.upper < dp);
    }

    #[test]
    fn growing_an_odd_digit_never_lowers_the_f1_numerator(
        a in digits(1000, 20..=20),
        n in 1usize..=12,
        j in 0usize..6,
        bump in 1u64..1000,
    ) {
        let before = holder_band_from_digits(&word(&a), n, Component::F1).unwrap();
        let mut grown = a.clone();
        grown[2 * j] += bump;
        let after = holder_band_from_digits(&word(&grown), n, Component::F1).unwrap();
        prop_assert!(after.lower_numerator >= before.lower_numerator);
    }

    #[test]
    fn band_matches_a_direct_formula_evaluation(a in digits(1000, 20..=20), n in 1usize..=12) {
        let ln = |j: usize| (a[j - 1] as f64).ln();
        let ln1 = |j: usize| (a[j - 1] as f64 + 1.0).ln();
        let shift = |j: usize| ((a[j - 1] as f64 + 2.0) / (a[j - 1] as f64 + 1.0)).ln();
        let nf = n as f64;
        let c1 = std::f64::consts::LN_2 / 2.0 + shift(n + 2).max(shift(n + 3));
        let den: f64 = (1..=n + 3).map(ln1).sum::<f64>() / nf + c1 / nf;
        let m = n.div_ceil(2);
        let lower: f64 = (1..=m).map(|i| ln(2 * i - 1)).sum::<f64>() / nf / den;
        let c2 = std::f64::consts::LN_2 / 2.0 + shift(2 * m + 3).max(shift(2 * m + 5));
        let upper = ((1..=m + 3).map(|i| ln1(2 * i - 1)).sum::<f64>() / nf + c2 / (2.0 * nf))
            / ((1..=n).map(ln).sum::<f64>() / nf);
        let band = holder_band_from_digits(&word(&a), n, Component::F1).unwrap();
        prop_assert!((band.lower - lower).abs() <= 1e-12 * (1.0 + lower.abs()));
        if upper.is_finite() {
            prop_assert!((band.upper.value() - upper).abs() <= 1e-12 * (1.0 + upper.abs()));
        } else {
            prop_assert!(band.upper.value().is_infinite());
        }
    }
}

fn word_or_empty(digits: &[u64]) -> CFWord {
    if digits.is_empty() {
        CFWord::empty()
    } else {
        word(digits)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `[;(k)]` is the positive root of `x^2 + k x - 1`; its enclosures must
    /// bracket a sign change of that polynomial and shrink with depth.
    #[test]
    fn quadratic_shadow_of_constant_streams(k in 1i64..50, depth in 2usize..60) {
        let stream = DigitStream::constant(k as u64).unwrap();
        let e = enclose_value(&stream, depth).unwrap();
        let poly = |x: &BigRational| x * x + q(k, 1) * x - q(1, 1);
        let (at_lo, at_hi) = (poly(&e.lo), poly(&e.hi));
        prop_assert!(at_lo < q(0, 1) && at_hi > q(0, 1));
        let deeper = enclose_value(&stream, depth + 1).unwrap();
        prop_assert!(e.contains_enclosure(&deeper));
        prop_assert!(deeper.width() < e.width());
    }

    /// f is continuous at irrationals: points sharing n digits have images
    /// whose components share the forced rank intervals.
    #[test]
    fn continuity_shadow_at_irrationals(
        a in digits(20, 2..=40),
        tx in digits(20, 1..=3),
        ty in digits(20, 1..=3),
        change in 1u64..20,
    ) {
        let n = a.len();
        let x = DigitStream::prefixed(word(&a), DigitStream::periodic(CFWord::empty(), word(&tx)).unwrap());
        let mut other = vec![tx[0] + change];
        other.extend(&ty);
        let y = DigitStream::prefixed(word(&a), DigitStream::periodic(CFWord::empty(), word(&other)).unwrap());
        let (r1, r2) = component_intervals(&word(&a));
        let (fx, fy) = (forward_value(&x, n + 4).unwrap(), forward_value(&y, n + 4).unwrap());
        let gap1 = fx.0.minus(&fy.0);
        let gap2 = fx.1.minus(&fy.1);
        let bound1 = &r1.measure;
        let bound2 = &r2.measure;
        prop_assert!(gap1.hi <= *bound1 && -gap1.lo.clone() <= *bound1);
        prop_assert!(gap2.hi <= *bound2 && -gap2.lo.clone() <= *bound2);
    }
}
