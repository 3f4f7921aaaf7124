//! Weight tuples of the circle action and their symmetric-function invariants.
//!
//! The central quantity is the complete homogeneous sum
//! `h_r(l_1..l_k) = sum over |I| = r of l_1^{i_1} ... l_k^{i_k}`,
//! which is, up to the sign `(-1)^r`, the `r`-th Chern class of the complement of
//! `xi^{l_1} + ... + xi^{l_k}` over complex projective space.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::ring::{gcd_all, Modulus};
use crate::series::TruncatedSeries;

/// A primitive (gcd 1), nonempty integer tuple. Zero entries are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightTuple {
    weights: Vec<BigInt>,
}

impl WeightTuple {
    pub fn validate(raw: Vec<BigInt>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyWeights);
        }
        let g = gcd_all(&raw);
        if !g.is_one() {
            return Err(Error::NotPrimitive(g));
        }
        Ok(WeightTuple { weights: raw })
    }

    pub fn from_i64(raw: &[i64]) -> Result<Self> {
        Self::validate(raw.iter().map(|&l| BigInt::from(l)).collect())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    /// The pair `(l1, l2)` for the two-weight constructions.
    pub fn pair(&self) -> Result<(&BigInt, &BigInt)> {
        match self.weights.as_slice() {
            [a, b] => Ok((a, b)),
            w => Err(Error::NeedTwoWeights(w.len())),
        }
    }

    pub fn negated(&self) -> Self {
        WeightTuple {
            weights: self.weights.iter().map(|l| -l).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        WeightTuple {
            weights: self.weights.iter().rev().cloned().collect(),
        }
    }
}

impl fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// `[h_0, h_1, ..., h_{r_max}]`, using `h_r(l_1..l_j) = h_r(l_1..l_{j-1}) + l_j h_{r-1}(l_1..l_j)`.
pub fn h_table(ell: &WeightTuple, r_max: usize) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); r_max + 1];
    table[0] = BigInt::one();
    for l in ell.weights() {
        for r in 1..=r_max {
            let (lo, hi) = table.split_at_mut(r);
            hi[0] += l * &lo[r - 1];
        }
    }
    table
}

/// Complete homogeneous symmetric sum `h_r(ell)`.
pub fn h(ell: &WeightTuple, r: usize) -> BigInt {
    h_table(ell, r).pop().unwrap_or_default()
}

/// `h_r` by explicit enumeration of exponent vectors. Only for cross-checking.
pub fn h_bruteforce(ell: &WeightTuple, r: usize) -> Result<BigInt> {
    let k = ell.len();
    if r > 12 || k > 6 {
        return Err(Error::OracleRangeExceeded { r, k });
    }
    let mut exps = vec![0u32; k];
    let mut total = BigInt::zero();
    enumerate_compositions(&mut exps, 0, r as u32, &mut |e| {
        let term = ell
            .weights()
            .iter()
            .zip(e)
            .fold(BigInt::one(), |acc, (l, &i)| acc * Pow::pow(l, i));
        total += term;
    });
    Ok(total)
}

fn enumerate_compositions(exps: &mut [u32], pos: usize, remaining: u32, visit: &mut dyn FnMut(&[u32])) {
    if pos == exps.len() - 1 {
        exps[pos] = remaining;
        visit(exps);
        return;
    }
    for i in 0..=remaining {
        exps[pos] = i;
        enumerate_compositions(exps, pos + 1, remaining - i, visit);
    }
}

/// `(l1^{d+1} - l2^{d+1}) / (l1 - l2)`, with the polynomial limit `(d+1) l^d` when `l1 = l2`.
pub fn phi(l1: &BigInt, l2: &BigInt, d: u32) -> BigInt {
    if l1 == l2 {
        return BigInt::from(d + 1) * Pow::pow(l1, d);
    }
    let num = Pow::pow(l1, d + 1) - Pow::pow(l2, d + 1);
    let (q, r) = num.div_rem(&(l1 - l2));
    debug_assert!(r.is_zero());
    q
}

/// `prod_j (1 + l_j x)` over ℤ.
pub fn total_chern(ell: &WeightTuple, truncation: usize) -> Result<TruncatedSeries> {
    ell.weights().iter().try_fold(
        TruncatedSeries::one(truncation, Modulus::integers())?,
        |acc, l| acc.mul(&TruncatedSeries::binomial(l.clone(), 1, truncation, Modulus::integers())?),
    )
}

/// `prod_j (1 + l_j x)^{-1}`; the coefficient of `x^j` is `(-1)^j h_j(ell)`.
pub fn complement_chern(ell: &WeightTuple, truncation: usize) -> Result<TruncatedSeries> {
    total_chern(ell, truncation)?.inv()
}
