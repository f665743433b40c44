//! The total order on prime-power exponents induced by log-depth mass.
//!
//! For any prime p and any r > 0, `log_depth_prime_power(r, p, k)` ranks the
//! exponents the same way: 1 is heaviest, then 3, 5, 7, ... descending toward
//! the limit; every odd exponent outranks every even one; among the evens the
//! larger is heavier; 0 is lightest. This module encodes that ranking purely
//! combinatorially, so it can be checked against the analytic one.

use std::cmp::Ordering;

/// Compares two exponents by the log-depth mass they consume.
/// `Greater` means k1 is the heavier (preferred) exponent.
pub fn exponent_order(k1: u32, k2: u32) -> Ordering {
    match (k1 % 2 == 1, k2 % 2 == 1) {
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (true, true) => k2.cmp(&k1),
        (false, false) => k1.cmp(&k2),
    }
}

/// Exponent newtype ordered by [`exponent_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentRank(pub u32);

impl Ord for ExponentRank {
    fn cmp(&self, other: &Self) -> Ordering {
        exponent_order(self.0, other.0)
    }
}

impl PartialOrd for ExponentRank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
