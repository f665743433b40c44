//! Heuristic exploration of the closure of the value set: enumerate the
//! function over an initial segment of the integers, sort, and merge
//! near-adjacent values into candidate intervals.
//!
//! Finite enumeration can only ever lower-bound the closure, so every
//! estimate is explicitly labeled heuristic; proven statements about gaps
//! come from [`crate::density`], not from here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::alt_sigma_prime_power;
use crate::{primes, zeta, Precision};

/// Hard cap on enumeration size; beyond this the sieve and value table stop
/// fitting comfortably in memory.
pub const MAX_ENUMERATION: usize = 100_000_000;

/// Candidate component structure of the closure, from finite enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureEstimate {
    pub r: f64,
    pub n_max: usize,
    /// The merge threshold actually used (resolved from the default when the
    /// caller did not fix one).
    pub gap_threshold: f64,
    pub sorted_value_count: usize,
    /// Closed intervals [lo, hi], ascending and pairwise disjoint.
    pub component_intervals: Vec<(f64, f64)>,
    pub component_count: usize,
    pub note: String,
}

/// Evaluates the function at exponent `-r` for every `n <= n_max`, in index
/// order (entry 0 is n = 1).
///
/// A smallest-prime-factor sieve turns the evaluation into one multiplicative
/// extension per integer, so the whole table costs barely more than the
/// sieve itself.
pub fn enumerate_values(r: f64, n_max: usize) -> Result<Vec<f64>> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "enumeration requires finite r > 0, got {r}"
        )));
    }
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    if n_max > MAX_ENUMERATION {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} exceeds the enumeration cap {MAX_ENUMERATION}"
        )));
    }
    let spf = primes::spf_sieve(n_max);
    let mut vals = vec![0.0f64; n_max + 1];
    vals[1] = 1.0;
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut m = n;
        let mut alpha = 0u32;
        while m % p == 0 {
            m /= p;
            alpha += 1;
        }
        vals[n] = vals[m] * alt_sigma_prime_power(-r, p as u64, alpha);
    }
    vals.remove(0);
    Ok(vals)
}

/// Enumerates, sorts, and merges values into candidate closure components:
/// adjacent sorted values further apart than `gap_threshold` start a new
/// interval.
///
/// With `gap_threshold = None` the threshold defaults to 10x the median
/// adjacent spacing of the sorted sample — scale-free, but still arbitrary;
/// the component count is a heuristic reading of the sample, not a proven
/// count.
pub fn closure_components(
    r: f64,
    n_max: usize,
    gap_threshold: Option<f64>,
    prec: &Precision,
) -> Result<ClosureEstimate> {
    if !r.is_finite() || r <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "closure exploration requires r > 1, got {r}"
        )));
    }
    if n_max < 1000 {
        return Err(Error::InvalidArgument(format!(
            "n_max must be at least 1000 for a meaningful sample, got {n_max}"
        )));
    }
    if let Some(t) = gap_threshold {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "gap threshold must be positive, got {t}"
            )));
        }
    }

    let mut values = enumerate_values(r, n_max)?;
    values.sort_unstable_by(f64::total_cmp);
    let sorted_value_count = values.len();

    let threshold = match gap_threshold {
        Some(t) => t,
        None => {
            let mut spacings: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
            let mid = spacings.len() / 2;
            let (_, median, _) = spacings.select_nth_unstable_by(mid, f64::total_cmp);
            let median = *median;
            if median > 0.0 {
                10.0 * median
            } else {
                // degenerate sample (mass of duplicates): fall back to the
                // mean spacing, i.e. range over count
                let range = values[values.len() - 1] - values[0];
                let mean = range / (values.len() - 1) as f64;
                if mean > 0.0 {
                    10.0 * mean
                } else {
                    1e-12
                }
            }
        }
    };

    let mut intervals: Vec<(f64, f64)> = Vec::new();
    let mut start = values[0];
    let mut prev = values[0];
    for &v in &values[1..] {
        if v - prev > threshold {
            intervals.push((start, prev));
            start = v;
        }
        prev = v;
    }
    intervals.push((start, prev));

    // all values live in (1/zeta(r), 1]; the estimate must as well
    let inv_zeta = 1.0 / zeta::zeta(r, prec)?;
    debug_assert!(intervals.first().unwrap().0 > inv_zeta);
    debug_assert!(intervals.last().unwrap().1 <= 1.0);

    let component_count = intervals.len();
    Ok(ClosureEstimate {
        r,
        n_max,
        gap_threshold: threshold,
        sorted_value_count,
        component_intervals: intervals,
        component_count,
        note: format!(
            "HEURISTIC: finite enumeration up to n = {n_max} lower-bounds the closure; \
             component structure depends on the merge threshold"
        ),
    })
}
