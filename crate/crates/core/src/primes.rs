//! Process-wide prime cache, lazily extended by a segmented sieve.
//!
//! Reads are concurrent; extension takes the write lock and re-checks, so
//! racing readers never duplicate work or observe a partially sieved segment.

use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::Precision;

static CACHE: RwLock<Vec<u64>> = RwLock::new(Vec::new());

const BOOTSTRAP_LIMIT: u64 = 1 << 16;
const SEGMENT: u64 = 1 << 16;

/// The i-th prime, 1-based: `nth_prime(1) == 2`.
pub fn nth_prime(i: usize, prec: &Precision) -> Result<u64> {
    if i == 0 {
        return Err(Error::InvalidArgument("prime indices are 1-based".into()));
    }
    if i > prec.max_primes {
        return Err(Error::PrimeIndexOutOfRange {
            index: i,
            max: prec.max_primes,
        });
    }
    {
        let cache = CACHE.read().unwrap();
        if let Some(&p) = cache.get(i - 1) {
            return Ok(p);
        }
    }
    extend_to(i);
    Ok(CACHE.read().unwrap()[i - 1])
}

/// The first k primes, in order.
pub fn first_primes(k: usize, prec: &Precision) -> Result<Vec<u64>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    nth_prime(k, prec)?;
    Ok(CACHE.read().unwrap()[..k].to_vec())
}

fn extend_to(need: usize) {
    let mut cache = CACHE.write().unwrap();
    if cache.is_empty() {
        bootstrap(&mut cache);
    }
    while cache.len() < need {
        let lo = cache.last().unwrap() + 1;
        let hi = lo + SEGMENT;
        // After the bootstrap the cache holds every prime below lo, and
        // lo > 256 guarantees lo^2 > hi, so the base primes never run out.
        let base: Vec<u64> = cache
            .iter()
            .copied()
            .take_while(|&p| p * p < hi)
            .collect();
        let mut composite = vec![false; SEGMENT as usize];
        for p in base {
            let mut j = lo.div_ceil(p) * p;
            if j < p * p {
                j = p * p;
            }
            while j < hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        for (off, &c) in composite.iter().enumerate() {
            if !c {
                cache.push(lo + off as u64);
            }
        }
    }
}

fn bootstrap(cache: &mut Vec<u64>) {
    let n = BOOTSTRAP_LIMIT as usize;
    let mut composite = vec![false; n];
    let mut i = 2;
    while i * i < n {
        if !composite[i] {
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    cache.extend((2..n).filter(|&v| !composite[v]).map(|v| v as u64));
}

/// Deterministic Miller-Rabin primality test for u64.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be exact for every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Smallest-prime-factor table for 0..=n_max; spf[0] and spf[1] are unused.
pub(crate) fn spf_sieve(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            spf[i] = i as u32;
            let mut j = i * i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}
