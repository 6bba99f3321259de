//! Integer polynomials in `q`, q-analogs of integers, factorials and
//! binomials, and exact evaluation at roots of unity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::arith::{divisors, moebius};
use crate::error::{Error, Result};

/// A polynomial with `i128` coefficients, ascending powers of `q`, with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<i128>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        QPoly::new(vec![c])
    }

    /// `c q^k`.
    pub fn monomial(c: i128, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        QPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Result<i128> {
        self.coeffs.iter().try_fold(0i128, |s, &c| s.checked_add(c).ok_or(Error::Overflow))
    }

    pub fn add(&self, other: &QPoly) -> Result<QPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &QPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        let coeffs = (0..n)
            .map(|i| get(self, i).checked_add(get(other, i)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(QPoly::new(coeffs))
    }

    pub fn mul(&self, other: &QPoly) -> Result<QPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(QPoly::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                let t = x.checked_mul(y).ok_or(Error::Overflow)?;
                out[i + j] = out[i + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(QPoly::new(out))
    }

    /// Quotient and remainder by a divisor whose leading coefficient is `±1`.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let lead = *divisor.coeffs.last().ok_or(Error::NonDivisible)?;
        if lead.abs() != 1 {
            return Err(Error::NonDivisible);
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![0i128; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * lead;
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &y) in divisor.coeffs.iter().enumerate() {
                let t = c.checked_mul(y).ok_or(Error::Overflow)?;
                rem[k + j] = rem[k + j].checked_sub(t).ok_or(Error::Overflow)?;
            }
        }
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonDivisible)
        }
    }

    /// `[n]_q = 1 + q + ... + q^{n-1}`.
    pub fn q_int(n: u32) -> QPoly {
        QPoly::new(vec![1; n as usize])
    }

    /// `[n]!_q = [1]_q [2]_q ... [n]_q`.
    pub fn q_factorial(n: u32) -> Result<QPoly> {
        (1..=n).try_fold(QPoly::one(), |acc, i| acc.mul(&QPoly::q_int(i)))
    }

    /// Gaussian binomial, built one factor at a time with exact division so
    /// intermediate values stay polynomials.
    pub fn q_binomial(n: u32, k: u32) -> Result<QPoly> {
        if k > n {
            return Ok(QPoly::zero());
        }
        let k = k.min(n - k);
        let mut acc = QPoly::one();
        for i in 1..=k {
            acc = acc.mul(&QPoly::q_int(n - k + i))?.div_exact(&QPoly::q_int(i))?;
        }
        Ok(acc)
    }

    /// Exact value at `ζ^e` for `ζ` a primitive `m`-th root of unity.
    pub fn eval_at_root(&self, m: u32, e: u64) -> Result<i128> {
        CycValue::of(self, m, e)?.to_integer()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let c = c.abs();
            match k {
                0 => write!(f, "{c}")?,
                _ if c != 1 => write!(f, "{c}")?,
                _ => {}
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, QPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, QPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_m`, from `Φ_m = ∏_{d|m} (q^d - 1)^{μ(m/d)}`; cached per order.
pub fn cyclotomic(m: u32) -> Result<QPoly> {
    if m == 0 {
        return Err(Error::BadDivisor { d: 0, modulus: 0 });
    }
    if let Some(p) = cyclotomic_cache().lock().expect("cache lock").get(&m) {
        return Ok(p.clone());
    }
    let (mut num, mut den) = (QPoly::one(), QPoly::one());
    for d in divisors(m as u64) {
        let factor = QPoly::monomial(1, d as usize).add(&QPoly::constant(-1))?;
        match moebius(m as u64 / d) {
            1 => num = num.mul(&factor)?,
            -1 => den = den.mul(&factor)?,
            _ => {}
        }
    }
    let phi = num.div_exact(&den)?;
    cyclotomic_cache().lock().expect("cache lock").insert(m, phi.clone());
    Ok(phi)
}

/// An element of `Z[ζ_m]`, stored as its remainder modulo `Φ_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycValue {
    pub m: u32,
    pub residues: Vec<i128>,
}

impl CycValue {
    /// The class of `X(ζ^e)`.
    pub fn of(x: &QPoly, m: u32, e: u64) -> Result<CycValue> {
        let phi = cyclotomic(m)?;
        let mut folded = vec![0i128; m as usize];
        for (k, &c) in x.coeffs().iter().enumerate() {
            let slot = ((k as u128 * e as u128) % m as u128) as usize;
            folded[slot] = folded[slot].checked_add(c).ok_or(Error::Overflow)?;
        }
        let (_, rem) = QPoly::new(folded).div_rem(&phi)?;
        let mut residues = rem.coeffs;
        residues.resize(phi.degree().unwrap_or(0), 0);
        Ok(CycValue { m, residues })
    }

    /// The value as an integer; fails when the class has a non-constant part.
    pub fn to_integer(&self) -> Result<i128> {
        if self.residues.iter().skip(1).any(|&c| c != 0) {
            return Err(Error::NotInteger);
        }
        Ok(self.residues.first().copied().unwrap_or(0))
    }
}
