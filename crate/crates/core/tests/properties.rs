//! Cross-module property checks: randomized invariants plus a few heavier
//! deterministic facts that tie evaluation, zeta, density, and the greedy
//! construction together.

use altdiv::closure::enumerate_values;
use altdiv::density::{self, Verdict};
use altdiv::eval::{alt_sigma, alt_sigma_prime_power, log_depth, log_depth_limit};
use altdiv::greedy::approximate_target;
use altdiv::order::exponent_order;
use altdiv::zeta::{euler_tail_product, zeta};
use altdiv::{FactoredInteger, Precision};
use proptest::prelude::*;

fn prec() -> Precision {
    Precision::default()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn euler_partial_product_approaches_inverse_zeta() {
    // Dropping the tail factors overestimates 1/zeta(2) by at most
    // sum_{i > M} p_i^-2 < sum_{n > p_M} n^-2 < 1/p_M.
    let prec = prec();
    let ps = altdiv::primes::first_primes(100_000, &prec).unwrap();
    let mut prod = 1.0f64;
    for &p in &ps {
        prod *= 1.0 - (p as f64).powi(-2);
    }
    let inv_zeta = 1.0 / zeta(2.0, &prec).unwrap();
    let p_last = *ps.last().unwrap() as f64;
    assert!(prod >= inv_zeta - 1e-12);
    assert!(
        prod - inv_zeta <= 1.0 / p_last,
        "excess {} above the tail bound {}",
        prod - inv_zeta,
        1.0 / p_last
    );
}

#[test]
fn values_live_strictly_between_inverse_zeta_and_one() {
    let prec = prec();
    let inv_zeta = 1.0 / zeta(2.0, &prec).unwrap();
    let vals = enumerate_values(2.0, 100_000).unwrap();
    for (i, &v) in vals.iter().enumerate() {
        assert!(v > inv_zeta, "n = {}: {v} <= {inv_zeta}", i + 1);
        assert!(v <= 1.0, "n = {}", i + 1);
    }
    assert_eq!(vals[0], 1.0);
}

#[test]
fn emitted_gaps_contain_no_enumerated_values() {
    let prec = prec();
    for &(r, n_max) in &[(2.0f64, 100_000usize), (3.5, 100_000)] {
        let rep = density::density_check(r, &prec).unwrap();
        assert_eq!(rep.verdict, Verdict::NotDense);
        assert!(!rep.gaps.is_empty());
        let vals = enumerate_values(r, n_max).unwrap();
        for gap in &rep.gaps {
            let inside = vals
                .iter()
                .filter(|&&v| v > gap.lower && v < gap.upper)
                .count();
            assert_eq!(
                inside, 0,
                "r = {r}: {inside} values inside ({}, {})",
                gap.lower, gap.upper
            );
        }
    }
}

#[test]
fn limit_depth_series_diverges_only_below_one() {
    let prec = prec();
    let ps = altdiv::primes::first_primes(10_000, &prec).unwrap();
    // r < 1: the total depth available grows without bound...
    let sum_07: f64 = ps.iter().map(|&p| log_depth_limit(0.7, p)).sum();
    assert!(sum_07 > 10.0, "r = 0.7 partial sum {sum_07}");
    // ...while r > 1 keeps it bounded by log(zeta(r)/zeta(2r)).
    let sum_12: f64 = ps.iter().map(|&p| log_depth_limit(1.2, p)).sum();
    let bound = (zeta(1.2, &prec).unwrap() / zeta(2.4, &prec).unwrap()).ln();
    assert!(sum_12 < bound, "r = 1.2 partial sum {sum_12} vs bound {bound}");
}

#[test]
fn criterion_approaches_inverse_zeta() {
    let prec = prec();
    let f = density::criterion(10_000, 2.0, &prec).unwrap();
    let inv_zeta = 1.0 / zeta(2.0, &prec).unwrap();
    assert!(
        (f - inv_zeta).abs() < 1e-4,
        "criterion(10^4, 2) = {f} vs 1/zeta(2) = {inv_zeta}"
    );
}

#[test]
fn tail_product_complements_the_head() {
    // prod_{i<=m}(1 - p_i^-r) * tail(m) reassembles 1/zeta(r).
    let prec = prec();
    for &r in &[1.3, 2.0, 4.0] {
        let inv_zeta = 1.0 / zeta(r, &prec).unwrap();
        let ps = altdiv::primes::first_primes(25, &prec).unwrap();
        let mut head = 1.0f64;
        for (i, &p) in ps.iter().enumerate() {
            head *= 1.0 - (p as f64).powf(-r);
            let tail = euler_tail_product(r, i + 1, &prec).unwrap();
            assert!((head * tail - inv_zeta).abs() <= 1e-11, "r={r} m={}", i + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplicative_over_coprime_splits(a in 2u64..5000, b in 2u64..5000, t in -3.0f64..1.5) {
        prop_assume!(gcd(a, b) == 1);
        let fa = FactoredInteger::factor(a).unwrap();
        let fb = FactoredInteger::factor(b).unwrap();
        let fab = FactoredInteger::factor(a * b).unwrap();
        let lhs = alt_sigma(t, &fab);
        let rhs = alt_sigma(t, &fa) * alt_sigma(t, &fb);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn prime_power_values_stay_in_range(r in 1.05f64..5.0, pi in 0usize..25, alpha in 0u32..60) {
        let p = altdiv::primes::first_primes(25, &prec()).unwrap()[pi];
        let y = (p as f64).powf(-r);
        let s = alt_sigma_prime_power(-r, p, alpha);
        prop_assert!(s <= 1.0 + 1e-15);
        if alpha >= 1 {
            prop_assert!(s >= 1.0 - y - 1e-15);
        } else {
            prop_assert!(s == 1.0);
        }
        let l = altdiv::eval::log_depth_prime_power(r, p, alpha);
        prop_assert!(l >= 0.0);
        // parity decides the side of the limit
        let lim = log_depth_limit(r, p);
        if alpha == 0 {
            prop_assert!(l == 0.0);
        } else if alpha % 2 == 1 {
            prop_assert!(l >= lim);
        } else {
            prop_assert!(l <= lim);
        }
    }

    #[test]
    fn exponent_order_is_a_total_order(a in 0u32..300, b in 0u32..300, c in 0u32..300) {
        use std::cmp::Ordering;
        // antisymmetry
        prop_assert_eq!(exponent_order(a, b), exponent_order(b, a).reverse());
        prop_assert_eq!(exponent_order(a, a), Ordering::Equal);
        // transitivity of <=
        let le = |x, y| exponent_order(x, y) != Ordering::Greater;
        if le(a, b) && le(b, c) {
            prop_assert!(le(a, c));
        }
    }

    #[test]
    fn greedy_traces_hold_their_invariants(u in 0.001f64..0.999) {
        let prec = prec();
        let x = u * zeta(1.6, &prec).unwrap().ln();
        let trace = approximate_target(1.6, x, 50, &prec).unwrap();
        prop_assert!(trace.residual >= 0.0);
        let mut last = 0.0f64;
        for step in &trace.steps {
            prop_assert!(step.partial >= last);
            prop_assert!(step.partial <= x);
            last = step.partial;
        }
        for pair in trace.result.factors().windows(2) {
            prop_assert!(pair[0].0 < pair[1].0);
        }
        prop_assert!(trace.result.factors().iter().all(|&(_, a)| a >= 1));
        let replay = log_depth(1.6, &trace.result);
        prop_assert!((replay - (x - trace.residual)).abs() <= 1e-9);
    }

    #[test]
    fn factored_integer_display_parse_round_trip(n in 1u64..1_000_000) {
        let f = FactoredInteger::factor(n).unwrap();
        let s = f.to_string();
        let back: FactoredInteger = s.parse().unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.value(), Some(n));
    }

    #[test]
    fn zeta_bracket_contains_brute_force(r in 1.05f64..6.0) {
        // Independent coarse oracle: direct sum plus one-sided integral bounds.
        let m = 50_000u64;
        let mut sum = 0.0f64;
        for n in (1..=m).rev() {
            sum += (n as f64).powf(-r);
        }
        let lo = sum + ((m + 1) as f64).powf(1.0 - r) / (r - 1.0);
        let hi = sum + (m as f64).powf(1.0 - r) / (r - 1.0);
        let v = zeta(r, &prec()).unwrap();
        prop_assert!(v >= lo - 1e-10 && v <= hi + 1e-10, "{v} outside [{lo}, {hi}]");
    }
}
