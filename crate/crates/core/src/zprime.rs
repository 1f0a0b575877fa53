//! Primality relative to a universe.
//!
//! A number is z-prime when no value *present in the universe* strictly
//! between 1 and itself divides it. With `1 2 7 4 5 6 7 8 9` the numeral 3
//! is gone, so 9 is z-prime. One is z-prime unless an opaque symbol is
//! present: an opaque has no fixed value, so it is treated as a potential
//! divisor of every number and no number is z-prime next to one. (The
//! narrower reading, where an opaque only disqualifies 1, is not used.)

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::universe::{Symbol, Universe};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZPrimeError {
    #[error("z-primality is only defined for n >= 1, got {0}")]
    DomainError(i64),
}

impl ZPrimeError {
    pub fn kind(&self) -> &'static str {
        "DomainError"
    }
}

/// The values that exist in a universe, and whether an opaque symbol exists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorPool {
    pub values: BTreeSet<i64>,
    pub has_opaque: bool,
}

impl DivisorPool {
    /// Pool with the given values and no opaque symbols.
    pub fn from_values(values: impl IntoIterator<Item = i64>) -> Self {
        Self {
            values: values.into_iter().collect(),
            has_opaque: false,
        }
    }
}

pub fn divisor_pool(u: &Universe) -> DivisorPool {
    let mut pool = DivisorPool::default();
    for sym in u.symbols() {
        match sym {
            Symbol::Numeral(v) => {
                pool.values.insert(*v);
            }
            Symbol::Opaque(_) => pool.has_opaque = true,
        }
    }
    pool
}

pub fn is_z_prime(n: i64, pool: &DivisorPool) -> Result<bool, ZPrimeError> {
    if n < 1 {
        return Err(ZPrimeError::DomainError(n));
    }
    if pool.has_opaque {
        return Ok(false);
    }
    Ok(!has_pooled_divisor(n, pool))
}

/// Whether some pool value `d` with `1 < d < n` divides `n`.
fn has_pooled_divisor(n: i64, pool: &DivisorPool) -> bool {
    if n <= 3 {
        return false;
    }
    // Scan whichever is smaller: the pool slice, or the divisor pairs up to sqrt(n).
    let root = isqrt(n as u64) as i64;
    let pool_len = pool.values.range(2..n).take(root as usize + 1).count();
    if pool_len as i64 <= root {
        return pool.values.range(2..n).any(|&d| n % d == 0);
    }
    (2..=root).any(|d| n % d == 0 && (pool.values.contains(&d) || pool.values.contains(&(n / d))))
}

fn isqrt(n: u64) -> u64 {
    // binary search for the largest r with r * r <= n
    let (mut lo, mut hi) = (0u64, 1u64 << 32);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if mid.checked_mul(mid).is_some_and(|sq| sq <= n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Distinct occupant values of `u` that are z-prime, in first-occurrence order.
/// Values below 1 are skipped.
pub fn z_primes(u: &Universe) -> Vec<i64> {
    let pool = divisor_pool(u);
    if pool.has_opaque {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    u.symbols()
        .filter_map(Symbol::as_numeral)
        .filter(|&v| v >= 1 && seen.insert(v))
        .filter(|&v| !has_pooled_divisor(v, &pool))
        .collect()
}
