//! Exact integer and modular arithmetic shared by the rest of the crate.
//!
//! Everything is backed by [`BigInt`]: complete homogeneous sums grow like
//! `max|l|^r` and overflow machine words almost immediately.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring selector: `0` is ℤ, `m >= 2` is ℤ/m.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus(BigInt);

impl Modulus {
    pub fn integers() -> Self {
        Modulus(BigInt::zero())
    }

    pub fn new(m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if m.is_zero() {
            return Ok(Modulus(m));
        }
        if m < BigInt::from(2) {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    pub fn is_integers(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    /// Canonical representative: unchanged over ℤ, in `[0, m)` otherwise.
    pub fn reduce(&self, v: &BigInt) -> BigInt {
        if self.is_integers() {
            v.clone()
        } else {
            v.mod_floor(&self.0)
        }
    }

    pub fn inverse(&self, v: &BigInt) -> Option<BigInt> {
        if self.is_integers() {
            if v.abs().is_one() {
                Some(v.clone())
            } else {
                None
            }
        } else {
            let ext = self.reduce(v).extended_gcd(&self.0);
            if ext.gcd.is_one() {
                Some(ext.x.mod_floor(&self.0))
            } else {
                None
            }
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integers() {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.0)
        }
    }
}

/// An element of ℤ or ℤ/m.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigInt,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: impl Into<BigInt>, modulus: Modulus) -> Self {
        let value = modulus.reduce(&value.into());
        Residue { value, modulus }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn into_value(self) -> BigInt {
        self.value
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// gcd of the absolute values; `0` iff every entry is zero (or the list is empty).
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// p-adic valuation of a nonzero integer.
pub fn nu(p: u64, n: &BigInt) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.is_zero() {
        return Err(Error::InfiniteValuation);
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// `C(n, r) mod p` by Lucas' theorem: the product of digit binomials in base `p`.
pub fn lucas_binom(n: u64, r: u64, p: u64) -> Result<Residue> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = Modulus::new(p)?;
    if r > n {
        return Ok(Residue::new(0, modulus));
    }
    let (mut n, mut r) = (n, r);
    let mut acc: u64 = 1;
    while r > 0 || n > 0 {
        let (nd, rd) = (n % p, r % p);
        if rd > nd {
            return Ok(Residue::new(0, modulus));
        }
        acc = mul_mod(acc, small_binom_mod(nd, rd, p), p);
        n /= p;
        r /= p;
    }
    Ok(Residue::new(acc, modulus))
}

// C(a, b) mod p for 0 <= b <= a < p.
fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = mul_mod(num, a - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_upto(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let b = bound as usize;
    let mut composite = vec![false; b + 1];
    let mut primes = Vec::new();
    for i in 2..=b {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= b {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Distinct prime divisors of `n > 0`, ascending (trial division).
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Odd primes in `[3, bound]`.
pub fn odd_primes_upto(bound: u64) -> Vec<u64> {
    primes_upto(bound).into_iter().filter(|&p| p != 2).collect()
}
