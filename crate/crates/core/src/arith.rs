//! Small exact integer helpers shared by the counting code.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Binomial coefficient, `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow)?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// `C(n; k_1, ..., k_r)` with `n = sum k_i`.
pub fn multinomial(parts: &[u64]) -> Result<u128> {
    let mut total = 0u64;
    let mut acc: u128 = 1;
    for &k in parts {
        total += k;
        acc = acc
            .checked_mul(binomial(total, k)?)
            .ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Rational Catalan number `C(a+b, a) / (a+b)`.
pub fn rational_catalan(a: u32, b: u32) -> Result<u128> {
    let n = a as u64 + b as u64;
    Ok(binomial(n, a as u64)? / n as u128)
}

pub fn factorial(n: u64) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or(Error::Overflow))
}

pub fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp).ok_or(Error::Overflow)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn moebius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}
