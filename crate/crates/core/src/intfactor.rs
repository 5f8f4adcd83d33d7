//! Trial division over the rational integers.
//!
//! Everything here works at desk scale: norms of `π₅ⁿ ± 1` for `n ≤ 20` stay
//! below `10¹⁵`, so a divisor bound of `10⁷` always finishes the job.

use crate::error::{Error, Result};

/// Default largest trial divisor.
pub const DEFAULT_TRIAL_BOUND: u64 = 10_000_000;

/// Factors `n` into `(prime, exponent)` pairs in increasing prime order.
///
/// Fails with [`Error::Resource`] when a cofactor survives every divisor up
/// to `bound` and is not provably prime (i.e. `bound² < cofactor`).
pub fn factor(n: u128, bound: u64) -> Result<Vec<(u128, u32)>> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    if let Ok(small) = u64::try_from(n) {
        return Ok(factor_u64(small, bound)?
            .into_iter()
            .map(|(p, e)| (p as u128, e))
            .collect());
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if d > bound as u128 {
            return Err(cofactor_error(n, bound));
        }
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

fn factor_u64(mut n: u64, bound: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d.saturating_mul(d) <= n {
        if d > bound {
            return Err(cofactor_error(n as u128, bound));
        }
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

fn cofactor_error(n: u128, bound: u64) -> Error {
    Error::Resource {
        what: format!("trial division bound {bound} exhausted; unfactored cofactor {n}"),
        cofactor: Some(n.to_string()),
    }
}

/// Primality by trial division; only meant for small inputs such as field
/// characteristics.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u128, bound: u64) -> Result<Vec<u128>> {
    Ok(factor(n, bound)?.into_iter().map(|(p, _)| p).collect())
}
