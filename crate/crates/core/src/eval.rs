//! Evaluation of the alternating divisor functions and their log-depth
//! companions.
//!
//! `alt_sigma(t, n)` is the multiplicative function taking the value
//! `1 - p^t + p^2t - ... +- p^(alpha*t)` on `p^alpha`; equivalently the sum of
//! `liouville(d) * d^t` over the divisors d of n. At `t = 1` it is OEIS
//! A061020. For `t = -r < 0` every value lies in `(0, 1]`, and
//! `log_depth(r, n) = -ln(alt_sigma(-r, n))` measures, additively, how far
//! below 1 the value sits.

use crate::factored::FactoredInteger;

/// `(-y)^k`, sign resolved by the parity of k.
#[inline]
pub(crate) fn signed_neg_pow(y: f64, k: u32) -> f64 {
    let mag = y.powi(k as i32);
    if k.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// The alternating divisor function on a prime power.
///
/// Closed form `(1 - (-p^t)^(alpha+1)) / (1 + p^t)`; when `p^t` is within
/// 1e-4 of 1 the geometric-series denominator loses accuracy relative to the
/// term size, so the sum is evaluated directly instead.
pub fn alt_sigma_prime_power(t: f64, p: u64, alpha: u32) -> f64 {
    debug_assert!(p >= 2);
    if alpha == 0 {
        return 1.0;
    }
    let y = (p as f64).powf(t);
    if (y - 1.0).abs() < 1e-4 {
        // Horner form of sum_{j=0}^{alpha} (-y)^j.
        let mut acc = 1.0;
        for _ in 0..alpha {
            acc = acc * (-y) + 1.0;
        }
        return acc;
    }
    (1.0 - signed_neg_pow(y, alpha + 1)) / (1.0 + y)
}

/// The alternating divisor function on an arbitrary integer, by
/// multiplicativity.
pub fn alt_sigma(t: f64, n: &FactoredInteger) -> f64 {
    n.factors()
        .iter()
        .map(|&(p, a)| alt_sigma_prime_power(t, p, a))
        .product()
}

/// `-ln(alt_sigma(-r, p^alpha))`, computed in log1p form so that values
/// crowding the exponent limit keep their relative separation.
///
/// Nonnegative for every `r > 0`; exactly 0 at `alpha = 0`.
pub fn log_depth_prime_power(r: f64, p: u64, alpha: u32) -> f64 {
    debug_assert!(r > 0.0 && p >= 2);
    if alpha == 0 {
        return 0.0;
    }
    let y = (p as f64).powf(-r);
    (y).ln_1p() - (-signed_neg_pow(y, alpha + 1)).ln_1p()
}

/// `-ln(alt_sigma(-r, n))`, additive over the prime factorization.
pub fn log_depth(r: f64, n: &FactoredInteger) -> f64 {
    n.factors()
        .iter()
        .map(|&(p, a)| log_depth_prime_power(r, p, a))
        .sum()
}

/// Supremum of `log_depth_prime_power(r, p, .)` over all exponents:
/// `ln(1 + p^-r)`. Odd exponents approach it from above, even ones from
/// below; no finite exponent attains it.
pub fn log_depth_limit(r: f64, p: u64) -> f64 {
    debug_assert!(r > 0.0 && p >= 2);
    (p as f64).powf(-r).ln_1p()
}
