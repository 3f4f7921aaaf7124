//! Total Pontrjagin classes (modulo 2-torsion) of `P_l W_{n,2}`, as series in `x`.
//!
//! Tangent: `(1 - l1^2 x^2)^n (1 - l2^2 x^2)^n (1 - (l2 - l1)^2 x^2)^{-1}`.
//! Stable normal bundle: the inverse of that.

use num_bigint::BigInt;

use crate::error::Result;
use crate::ring::Modulus;
use crate::series::TruncatedSeries;
use crate::weights::WeightTuple;

// (1 - a x^2)^e
fn factor(a: &BigInt, e: i64, modulus: &Modulus, truncation: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::binomial(-a, 2, truncation, modulus.clone())?.pow(e)
}

fn product(
    n: usize,
    ell: &WeightTuple,
    modulus: &Modulus,
    truncation: usize,
    sign: i64,
) -> Result<TruncatedSeries> {
    let (l1, l2) = ell.pair()?;
    let n = n as i64;
    let diff = l2 - l1;
    factor(&(l1 * l1), sign * n, modulus, truncation)?
        .mul(&factor(&(l2 * l2), sign * n, modulus, truncation)?)?
        .mul(&factor(&(&diff * &diff), -sign, modulus, truncation)?)
}

pub fn tangent_pontrjagin(
    n: usize,
    ell: &WeightTuple,
    modulus: &Modulus,
    truncation: usize,
) -> Result<TruncatedSeries> {
    product(n, ell, modulus, truncation, 1)
}

pub fn normal_pontrjagin(
    n: usize,
    ell: &WeightTuple,
    modulus: &Modulus,
    truncation: usize,
) -> Result<TruncatedSeries> {
    product(n, ell, modulus, truncation, -1)
}
