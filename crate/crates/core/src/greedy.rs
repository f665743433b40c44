//! Greedy construction of integers whose alternating divisor value
//! approximates a target, one prime at a time.
//!
//! Walking the primes in order, each step spends as much of the remaining
//! log-depth gap as a single exponent can: the heaviest exponent (under
//! [`crate::order::exponent_order`]) whose log depth still fits. In the dense
//! regime the leftover gap shrinks toward zero; past the density threshold it
//! can stall inside a proven gap interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{log_depth, log_depth_limit, log_depth_prime_power, signed_neg_pow};
use crate::factored::FactoredInteger;
use crate::order::exponent_order;
use crate::{primes, zeta, Precision};

/// Upper bound on any exponent search walk; beyond it the search reports
/// failure instead of looping.
pub const EXPONENT_SCAN_CAP: u32 = 10_000;

/// Even depth of the escalating-exponent tail recorded when a target is hit
/// exactly at an exponent limit.
pub const LIMIT_TAIL_DEPTH: u32 = 64;

/// Outcome of one greedy step at a fixed prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentChoice {
    /// The heaviest exponent whose log depth fits in the gap (0 if nothing
    /// positive fits).
    Take(u32),
    /// The gap coincides with the exponent limit within tolerance: every odd
    /// exponent overshoots, every even one undershoots, and the escalating
    /// tail applies.
    LimitHit,
}

/// Picks the exponent for one prime given the remaining gap.
///
/// The candidate is solved in closed form from the geometric series, then
/// verified against the exact log-depth comparison and nudged by parity-2
/// steps; a capped walk guards the few cases where rounding spoils the
/// closed-form estimate.
pub fn greedy_exponent(r: f64, p: u64, gap: f64, prec: &Precision) -> Result<ExponentChoice> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidArgument(format!("r must be positive, got {r}")));
    }
    if p < 2 {
        return Err(Error::InvalidArgument(format!("p must be at least 2, got {p}")));
    }
    if !gap.is_finite() || gap < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gap must be finite and nonnegative, got {gap}"
        )));
    }

    let limit = log_depth_limit(r, p);
    if (gap - limit).abs() <= prec.abs_tol {
        return Ok(ExponentChoice::LimitHit);
    }
    let l1 = log_depth_prime_power(r, p, 1);
    if gap >= l1 {
        return Ok(ExponentChoice::Take(1));
    }

    let y = (p as f64).powf(-r);
    let fits = |k: u32| log_depth_prime_power(r, p, k) <= gap;

    if gap > limit {
        // Smallest odd k >= 3 with L(p^k) <= gap. Along odd exponents L
        // decreases, and L(p^k) <= gap  <=>  y^(k+1) <= 1 - e^-gap (1+y).
        let b = -(-gap).exp_m1() - y * (-gap).exp();
        let mut k: u32 = 3;
        if b > 0.0 {
            let kf = b.ln() / y.ln() - 1.0;
            if kf.is_finite() && kf > 3.0 {
                let floor = (kf.floor() as u32).min(EXPONENT_SCAN_CAP);
                k = if floor % 2 == 1 { floor } else { floor + 1 };
                // allow for rounding in kf: step back, the walks re-center
                k = k.saturating_sub(4).max(3);
                if k.is_multiple_of(2) {
                    k += 1;
                }
            }
        }
        while !fits(k) {
            k += 2;
            if k > EXPONENT_SCAN_CAP {
                return Err(Error::InvalidArgument(format!(
                    "exponent search exceeded {EXPONENT_SCAN_CAP} at p={p}, r={r}"
                )));
            }
        }
        while k >= 5 && fits(k - 2) {
            k -= 2;
        }
        Ok(ExponentChoice::Take(k))
    } else {
        // Largest even k with L(p^k) <= gap. Along even exponents L
        // increases, and L(p^k) <= gap  <=>  y^(k+1) >= e^-gap (1+y) - 1.
        let b = y * (-gap).exp() + (-gap).exp_m1();
        let mut k: u32 = 0;
        if b > 0.0 {
            let kf = b.ln() / y.ln() - 1.0;
            if kf.is_finite() && kf > 0.0 {
                let f = (kf.floor() as u32).min(EXPONENT_SCAN_CAP);
                k = if f.is_multiple_of(2) { f } else { f - 1 };
                k = k.saturating_add(4).min(EXPONENT_SCAN_CAP);
                if k % 2 == 1 {
                    k -= 1;
                }
            }
        }
        while k >= 2 && !fits(k) {
            k -= 2;
        }
        loop {
            let next = k + 2;
            if next > EXPONENT_SCAN_CAP {
                return Err(Error::InvalidArgument(format!(
                    "exponent search exceeded {EXPONENT_SCAN_CAP} at p={p}, r={r}"
                )));
            }
            if fits(next) {
                k = next;
            } else {
                break;
            }
        }
        Ok(ExponentChoice::Take(k))
    }
}

/// One row of the greedy ledger. `exponent` is -1 exactly when the step
/// landed on an exponent limit and handed over to the escalating tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub prime_index: usize,
    pub prime: u64,
    pub exponent: i64,
    /// Accumulated log depth after this step.
    pub partial: f64,
}

/// Escalating even-exponent tail recorded after a limit hit: the partial sums
/// climb toward the target without crossing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitTail {
    pub prime_index: usize,
    pub prime: u64,
    /// Final (even) exponent actually kept in the result.
    pub depth: u32,
    /// Accumulated log depth at exponents 2, 4, ..., depth.
    pub partials: Vec<f64>,
}

/// Full record of a greedy approximation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxTrace {
    pub r: f64,
    pub target: f64,
    pub steps: Vec<TraceStep>,
    pub limit_tail: Option<LimitTail>,
    pub result: FactoredInteger,
    /// Leftover gap `target - log_depth(result)`; never negative.
    pub residual: f64,
}

/// Greedily builds an integer N from the first `n_primes` primes so that
/// `log_depth(r, N)` approaches `x` from below.
///
/// Requires `r > 1` and `0 < x < ln(zeta(r))`, the open interval of depths
/// attainable by integers. The accumulated depth never exceeds the target,
/// and a fresh evaluation of the result is asserted to agree with the
/// accumulated ledger to within 1e-9.
pub fn approximate_target(
    r: f64,
    x: f64,
    n_primes: usize,
    prec: &Precision,
) -> Result<ApproxTrace> {
    if n_primes == 0 {
        return Err(Error::InvalidArgument("n_primes must be at least 1".into()));
    }
    let log_zeta = zeta::zeta(r, prec)?.ln();
    if !x.is_finite() || !(x > 0.0 && x < log_zeta) {
        return Err(Error::TargetOutOfRange { x, limit: log_zeta });
    }

    let mut c = 0.0f64;
    let mut steps = Vec::new();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut limit_tail = None;

    for idx in 1..=n_primes {
        let p = primes::nth_prime(idx, prec)?;
        let gap = x - c;
        match greedy_exponent(r, p, gap, prec)? {
            ExponentChoice::Take(a) => {
                if a > 0 {
                    // min() guards the one-ulp overshoot a rounded sum can
                    // produce when the step exactly fills the gap
                    c = (c + log_depth_prime_power(r, p, a)).min(x);
                    factors.push((p, a));
                }
                steps.push(TraceStep {
                    prime_index: idx,
                    prime: p,
                    exponent: a as i64,
                    partial: c,
                });
            }
            ExponentChoice::LimitHit => {
                steps.push(TraceStep {
                    prime_index: idx,
                    prime: p,
                    exponent: -1,
                    partial: c,
                });
                let mut depth = LIMIT_TAIL_DEPTH;
                while depth > 0 && c + log_depth_prime_power(r, p, depth) > x {
                    depth -= 2;
                }
                let partials: Vec<f64> = (2..=depth)
                    .step_by(2)
                    .map(|j| c + log_depth_prime_power(r, p, j))
                    .collect();
                if depth > 0 {
                    c = (c + log_depth_prime_power(r, p, depth)).min(x);
                    factors.push((p, depth));
                }
                limit_tail = Some(LimitTail {
                    prime_index: idx,
                    prime: p,
                    depth,
                    partials,
                });
                break;
            }
        }
    }

    let result = FactoredInteger::from_pairs(factors)?;
    let replay = log_depth(r, &result);
    assert!(
        (replay - c).abs() <= 1e-9,
        "greedy ledger {c} drifted from re-evaluation {replay}"
    );
    Ok(ApproxTrace {
        r,
        target: x,
        steps,
        limit_tail,
        result,
        residual: x - c,
    })
}

/// Checks that the combinatorial exponent order agrees with the analytic one
/// for every exponent pair up to `k_max`.
///
/// The analytic sign is taken from the exact reformulation
/// `sign(L(p^k1) - L(p^k2)) = sign((-y)^(k1+1) - (-y)^(k2+1))`, which stays
/// correct until the powers underflow f64 entirely; pairs whose difference
/// underflows to zero are unresolvable at this precision and are skipped.
/// Whenever the rounded log depths themselves are separated by more than a
/// few ulps, their direct comparison is enforced as well.
pub fn verify_order_agreement(r: f64, p: u64, k_max: u32) -> bool {
    let y = (p as f64).powf(-r);
    for k1 in 0..k_max {
        for k2 in (k1 + 1)..=k_max {
            let want = exponent_order(k1, k2);
            let d = signed_neg_pow(y, k1 + 1) - signed_neg_pow(y, k2 + 1);
            if d != 0.0 {
                let ok = match want {
                    std::cmp::Ordering::Greater => d > 0.0,
                    std::cmp::Ordering::Less => d < 0.0,
                    std::cmp::Ordering::Equal => false,
                };
                if !ok {
                    return false;
                }
            }
            let l1 = log_depth_prime_power(r, p, k1);
            let l2 = log_depth_prime_power(r, p, k2);
            let resolution = 8.0 * f64::EPSILON * l1.abs().max(l2.abs());
            if (l1 - l2).abs() > resolution {
                let ok = match want {
                    std::cmp::Ordering::Greater => l1 > l2,
                    std::cmp::Ordering::Less => l1 < l2,
                    std::cmp::Ordering::Equal => false,
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks `|L(p^(k+2)) - L(p^k)| < L(p^2)` for all primes up to `p_max` and
/// exponents `1 <= k <= k_max`: past the first power, bumping an exponent by
/// 2 never moves the log depth as much as introducing the square of the
/// prime would. (At k = 0 the two sides coincide exactly, so the strict
/// bound starts at k = 1.)
// A NaN step must land in the failure branch, which `!(step < bound)` does
// and `step >= bound` would not.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn verify_exponent_step_bound(
    r: f64,
    p_max: u64,
    k_max: u32,
    prec: &Precision,
) -> Result<bool> {
    let mut i = 1;
    loop {
        let p = primes::nth_prime(i, prec)?;
        if p > p_max {
            return Ok(true);
        }
        let square_depth = log_depth_prime_power(r, p, 2);
        for k in 1..=k_max {
            let step = (log_depth_prime_power(r, p, k + 2) - log_depth_prime_power(r, p, k))
                .abs();
            if !(step < square_depth) {
                return Ok(false);
            }
        }
        i += 1;
    }
}
