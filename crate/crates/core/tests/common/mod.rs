//! Oracles written without the library: plain integer enumeration, exact binomials and
//! naive polynomial products.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

/// `h_r(l)` by enumerating nondecreasing index sequences `i_1 <= ... <= i_r`.
pub fn h_enum(ell: &[i64], r: usize) -> BigInt {
    fn go(ell: &[i64], start: usize, left: usize, acc: BigInt) -> BigInt {
        if left == 0 {
            return acc;
        }
        (start..ell.len())
            .map(|i| go(ell, i, left - 1, &acc * ell[i]))
            .sum()
    }
    go(ell, 0, r, BigInt::one())
}

pub fn binom(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    (0..r).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `sum_{i=0}^{d} l1^i l2^{d-i}`.
pub fn phi_sum(l1: i64, l2: i64, d: u32) -> BigInt {
    (0..=d)
        .map(|i| Pow::pow(BigInt::from(l1), i) * Pow::pow(BigInt::from(l2), d - i))
        .sum()
}

pub fn gcd(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn is_primitive(v: &[i64]) -> bool {
    gcd(v) == 1
}

/// Coefficients of `(1 - a y)^e` in `y`, `len` terms, by the generalized binomial theorem.
fn binomial_series(a: i64, e: i64, len: usize) -> Vec<BigInt> {
    let a = BigInt::from(a);
    (0..len as u64)
        .map(|i| {
            if e >= 0 {
                binom(e as u64, i) * Pow::pow(-&a, i as u32)
            } else {
                binom((-e) as u64 + i - 1, i) * Pow::pow(&a, i as u32)
            }
        })
        .collect()
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b[..a.len() - i].iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficient of `x^{2i}` in the tangent (`sign = 1`) or normal (`sign = -1`) Pontrjagin
/// series of `P_l W_{n,2}`, over `Z`.
pub fn pontrjagin_coeff(n: i64, l1: i64, l2: i64, sign: i64, i: usize) -> BigInt {
    let len = i + 1;
    let y = convolve(
        &convolve(&binomial_series(l1 * l1, sign * n, len), &binomial_series(l2 * l2, sign * n, len)),
        &binomial_series((l2 - l1) * (l2 - l1), -sign, len),
    );
    y[i].clone()
}

pub fn mod_p(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    u64::try_from(&r).unwrap()
}

/// Smallest `r` in `(n-k, n]` with `h_r(l) != 0 mod p`, from the enumeration oracle.
pub fn height_oracle(n: usize, ell: &[i64], p: u64) -> Option<usize> {
    (n - ell.len() + 1..=n).find(|&r| mod_p(&h_enum(ell, r), p) != 0)
}

/// Poincaré series of `Z/p[x]/(x^N) ⊗ Λ(y_j : j in window, j != N)` by direct expansion.
pub fn poincare_oracle(n: usize, k: usize, height: usize) -> Vec<u64> {
    let mut poly = vec![0u64; 2 * height - 1];
    for i in 0..height {
        poly[2 * i] = 1;
    }
    for j in n - k + 1..=n {
        if j == height {
            continue;
        }
        let d = 2 * j - 1;
        let mut next = vec![0u64; poly.len() + d];
        for (e, c) in poly.iter().enumerate() {
            next[e] += c;
            next[e + d] += c;
        }
        poly = next;
    }
    poly
}

pub fn primes_upto(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)).collect()
}
