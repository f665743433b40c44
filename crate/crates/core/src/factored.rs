//! Integers carried as validated prime factorizations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes;

/// Decimal inputs above this bound must be given as explicit factorizations;
/// below it, trial division by primes up to 10^6 is exhaustive.
pub const MAX_DECIMAL_INPUT: u64 = 1_000_000_000_000;

/// A positive integer represented by its prime factorization.
///
/// Invariants: primes strictly increasing, every base prime, every exponent
/// at least 1. The empty factorization is the integer 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u32)>", into = "Vec<(u64, u32)>")]
pub struct FactoredInteger {
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self { factors: Vec::new() }
    }

    /// Validates and adopts `(prime, exponent)` pairs.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        let mut last = 0u64;
        for &(p, a) in &pairs {
            if p <= last {
                return Err(Error::InvalidFactorization(format!(
                    "primes must be strictly increasing; {p} follows {last}"
                )));
            }
            if !primes::is_prime(p) {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            if a == 0 {
                return Err(Error::InvalidFactorization(format!(
                    "exponent of {p} must be at least 1"
                )));
            }
            last = p;
        }
        Ok(Self { factors: pairs })
    }

    /// Factors a plain integer by trial division. Limited to
    /// [`MAX_DECIMAL_INPUT`]; anything larger must arrive pre-factored.
    pub fn factor(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFactorization("0 has no factorization".into()));
        }
        if n > MAX_DECIMAL_INPUT {
            return Err(Error::InvalidFactorization(format!(
                "{n} exceeds {MAX_DECIMAL_INPUT}; supply an explicit factorization like \"p^a*q^b\""
            )));
        }
        let mut rest = n;
        let mut factors = Vec::new();
        let mut d = 2u64;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                let mut a = 0u32;
                while rest.is_multiple_of(d) {
                    rest /= d;
                    a += 1;
                }
                factors.push((d, a));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        // Whatever survives trial division up to sqrt is prime.
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The plain integer value, if it fits in u64.
    pub fn value(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for &(p, a) in &self.factors {
            for _ in 0..a {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }
}

impl From<FactoredInteger> for Vec<(u64, u32)> {
    fn from(n: FactoredInteger) -> Self {
        n.factors
    }
}

impl TryFrom<Vec<(u64, u32)>> for FactoredInteger {
    type Error = Error;
    fn try_from(pairs: Vec<(u64, u32)>) -> Result<Self> {
        Self::from_pairs(pairs)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, a)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FactoredInteger {
    type Err = Error;

    /// Parses an explicit factorization literal such as `2^2*3` or
    /// `2^2 * 3^1`. A bare `1` is the empty factorization.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let mut pairs = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (p_str, a_str) = match part.split_once('^') {
                Some((p, a)) => (p.trim(), a.trim()),
                None => (part, "1"),
            };
            let p: u64 = p_str.parse().map_err(|_| {
                Error::InvalidFactorization(format!("cannot parse base {p_str:?}"))
            })?;
            let a: u32 = a_str.parse().map_err(|_| {
                Error::InvalidFactorization(format!("cannot parse exponent {a_str:?}"))
            })?;
            pairs.push((p, a));
        }
        Self::from_pairs(pairs)
    }
}
