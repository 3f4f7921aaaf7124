//! Dense power series in one indeterminate `x`, truncated at a fixed order.
//!
//! Index `i` holds the coefficient of `x^i`. The topological degree of `x` is 2,
//! but that only matters when reporting; arithmetic never looks at it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Modulus, Residue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    // invariant: every entry is canonical for `modulus`; len() is the truncation order
    coeffs: Vec<BigInt>,
    modulus: Modulus,
}

impl TruncatedSeries {
    /// Builds a series from leading coefficients, zero-padding (or cutting) to `truncation`.
    pub fn new(coeffs: Vec<BigInt>, truncation: usize, modulus: Modulus) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::ZeroTruncation);
        }
        let mut coeffs = coeffs;
        coeffs.resize(truncation, BigInt::zero());
        for c in coeffs.iter_mut() {
            *c = modulus.reduce(c);
        }
        Ok(TruncatedSeries { coeffs, modulus })
    }

    pub fn from_i64(coeffs: &[i64], truncation: usize, modulus: Modulus) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), truncation, modulus)
    }

    pub fn one(truncation: usize, modulus: Modulus) -> Result<Self> {
        Self::new(vec![BigInt::one()], truncation, modulus)
    }

    /// `1 + c x^power`.
    pub fn binomial(c: BigInt, power: usize, truncation: usize, modulus: Modulus) -> Result<Self> {
        let mut s = Self::one(truncation, modulus)?;
        if power < truncation {
            s.coeffs[power] = s.modulus.reduce(&(&s.coeffs[power] + c));
        }
        Ok(s)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<Residue> {
        self.coeffs
            .get(i)
            .map(|c| Residue::new(c.clone(), self.modulus.clone()))
            .ok_or(Error::BeyondTruncation {
                index: i,
                truncation: self.truncation(),
            })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value().clone(),
                right: other.modulus.value().clone(),
            });
        }
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let t = self.truncation();
        let mut out = vec![BigInt::zero(); t];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..t - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        for c in out.iter_mut() {
            *c = self.modulus.reduce(c);
        }
        Ok(TruncatedSeries {
            coeffs: out,
            modulus: self.modulus.clone(),
        })
    }

    /// Multiplicative inverse; the constant term must be a unit of the coefficient ring.
    pub fn inv(&self) -> Result<Self> {
        let a0_inv = self
            .modulus
            .inverse(&self.coeffs[0])
            .ok_or_else(|| Error::NotInvertible(self.coeffs[0].clone()))?;
        let t = self.truncation();
        let mut out: Vec<BigInt> = Vec::with_capacity(t);
        out.push(a0_inv.clone());
        for i in 1..t {
            let mut acc = BigInt::zero();
            for j in 1..=i {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[i - j];
                }
            }
            out.push(self.modulus.reduce(&(-(acc * &a0_inv))));
        }
        Ok(TruncatedSeries {
            coeffs: out,
            modulus: self.modulus.clone(),
        })
    }

    /// `self^e` by repeated squaring; negative exponents go through [`inv`](Self::inv).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.truncation(), self.modulus.clone())?;
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Coefficientwise reduction of an integral series into ℤ/m.
    pub fn reduce_mod(&self, m: &BigInt) -> Result<Self> {
        if !self.modulus.is_integers() {
            return Err(Error::AlreadyReduced(self.modulus.value().clone()));
        }
        if m < &BigInt::from(2) {
            return Err(Error::InvalidModulus(m.clone()));
        }
        Self::new(self.coeffs.clone(), self.truncation(), Modulus::new(m.clone())?)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.truncation())
    }
}
