//! Toolkit for alternating divisor functions and the structure of their value
//! sets.
//!
//! The central object is the multiplicative function whose value on a prime
//! power is the alternating sum `1 - p^t + p^2t - ... +- p^(alpha*t)`; see
//! [`eval::alt_sigma`]. For negative exponents `t = -r` the values of every
//! positive integer fall in `(0, 1]`, and for `r > 1` they are confined to
//! `(1/zeta(r), 1]`. The crate answers, numerically but with certified error
//! bounds where it matters, questions about that value set:
//!
//! * [`eval`] evaluates the function and its additive companion (the negative
//!   logarithm of the value, called the log depth here).
//! * [`zeta`] provides the Riemann zeta function on the real ray `r > 1` with
//!   a certified bracket, plus tail Euler products.
//! * [`order`] and [`greedy`] rank prime-power exponents by the log-depth
//!   mass they consume and greedily build integers whose value approximates a
//!   target.
//! * [`density`] decides whether the value set is dense in its confining
//!   interval, locates the threshold exponent where density is lost, and
//!   exhibits certified gap intervals beyond it.
//! * [`closure`] explores the value set empirically by bulk enumeration.

pub mod closure;
pub mod density;
pub mod error;
pub mod eval;
pub mod factored;
pub mod greedy;
pub mod order;
pub mod primes;
pub mod zeta;

pub use error::{Error, Result};
pub use factored::FactoredInteger;

use serde::{Deserialize, Serialize};

/// Working parameters shared by the numeric routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    /// Absolute tolerance for certified quantities (zeta brackets, verdict
    /// margins, limit detection in the greedy construction).
    pub abs_tol: f64,
    /// Cap on how many primes a single computation may pull from the
    /// process-wide cache.
    pub max_primes: usize,
}

impl Precision {
    pub fn new(abs_tol: f64, max_primes: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol < 1.0) {
            return Err(Error::InvalidPrecision(format!(
                "abs_tol must lie in (0, 1), got {abs_tol}"
            )));
        }
        if max_primes < 100 {
            return Err(Error::InvalidPrecision(format!(
                "max_primes must be at least 100, got {max_primes}"
            )));
        }
        Ok(Self { abs_tol, max_primes })
    }

    /// Same cap, tighter tolerance; never loosens.
    pub fn tightened(&self, abs_tol: f64) -> Self {
        Self {
            abs_tol: abs_tol.min(self.abs_tol),
            max_primes: self.max_primes,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_primes: 1_000_000,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_validation() {
        assert!(Precision::new(1e-12, 1_000_000).is_ok());
        assert!(Precision::new(0.0, 1000).is_err());
        assert!(Precision::new(1.5, 1000).is_err());
        assert!(Precision::new(-1e-9, 1000).is_err());
        assert!(Precision::new(1e-12, 99).is_err());
    }

    #[test]
    fn precision_default_matches_contract() {
        let p = Precision::default();
        assert_eq!(p.abs_tol, 1e-12);
        assert_eq!(p.max_primes, 1_000_000);
    }
}
