//! Span and non-immersion certificates for `P_l W_{n,2}` from nonvanishing Pontrjagin classes.
//!
//! A real bundle with `s` independent sections has `p_i = 0` for `i > (dim - s) / 2`.
//! So a class `p_i(tau) != 0` forces `span <= dim - 2i`, and `p_j(nu) != 0` forces the
//! normal bundle of any immersion to have rank `>= 2j`, i.e. no immersion in
//! `R^{dim + 2j - 1}`.
//!
//! Nonvanishing is decided mod an odd prime `p`: the coefficient of `x^{2i}` must be
//! nonzero mod `p` and `x^{2i}` itself must survive in `H^*(-; Z/p)`, i.e. `2i < N_p`.

use crate::cohomology::{min_nonvanishing_n, StiefelParams};
use crate::error::{Error, Result};
use crate::ring::{is_prime, odd_primes_upto, Modulus, Residue};
use crate::series::TruncatedSeries;
use crate::weights::WeightTuple;

use super::pontrjagin::{normal_pontrjagin, tangent_pontrjagin};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bundle {
    Tangent,
    Normal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCertificate {
    pub prime: u64,
    /// `i` in `p_i(tau)`, the coefficient of `x^{2i}`.
    pub index: usize,
    pub witness: Residue,
    pub span_bound: usize,
    /// `N_p`, the height of `x` mod `p`.
    pub height: usize,
}

impl SpanCertificate {
    pub fn is_valid(&self, n: usize) -> bool {
        !self.witness.is_zero()
            && self.index >= 1
            && 2 * self.index < self.height
            && self.span_bound == manifold_dim(n) - 2 * self.index
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersionCertificate {
    pub prime: u64,
    /// `j` in `p_j(nu)`, the coefficient of `x^{2j}`.
    pub index: usize,
    pub witness: Residue,
    /// No immersion in this dimension: `dim + 2j - 1`.
    pub certified_non_immersion_dim: usize,
    /// `dim + 2j`, one more than the vanishing rule supports.
    pub claimed_dim: usize,
    pub height: usize,
}

impl ImmersionCertificate {
    pub fn is_valid(&self, n: usize) -> bool {
        !self.witness.is_zero()
            && self.index >= 1
            && 2 * self.index < self.height
            && self.certified_non_immersion_dim == manifold_dim(n) + 2 * self.index - 1
            && self.claimed_dim == self.certified_non_immersion_dim + 1
    }
}

/// `dim P_l W_{n,2} = 4n - 5`.
pub fn manifold_dim(n: usize) -> usize {
    4 * n - 5
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::OddPrimeRequired(p));
    }
    Ok(())
}

/// The coefficient of `x^{2 index}` in `p(tau)` or `p(nu)` mod `p`, alongside whether
/// `x^{2 index}` is nonzero in mod-`p` cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEvaluation {
    pub bundle: Bundle,
    pub prime: u64,
    pub index: usize,
    pub coefficient: Residue,
    pub height: usize,
}

impl IndexEvaluation {
    pub fn class_survives(&self) -> bool {
        2 * self.index < self.height
    }

    pub fn is_nonzero(&self) -> bool {
        !self.coefficient.is_zero() && self.class_survives()
    }
}

struct PrimeContext {
    n: usize,
    prime: u64,
    height: usize,
}

impl PrimeContext {
    fn new(n: usize, ell: &WeightTuple, p: u64) -> Result<Self> {
        require_odd_prime(p)?;
        ell.pair()?;
        let params = StiefelParams::new(n, 2, ell.clone())?;
        let height = min_nonvanishing_n(&params, p)?;
        Ok(PrimeContext { n, prime: p, height })
    }

    fn series(&self, ell: &WeightTuple, bundle: Bundle, truncation: usize) -> Result<TruncatedSeries> {
        let m = Modulus::new(self.prime)?;
        match bundle {
            Bundle::Tangent => tangent_pontrjagin(self.n, ell, &m, truncation),
            Bundle::Normal => normal_pontrjagin(self.n, ell, &m, truncation),
        }
    }

    fn evaluate(&self, ell: &WeightTuple, bundle: Bundle, index: usize) -> Result<IndexEvaluation> {
        let series = self.series(ell, bundle, self.height.max(2 * index + 1))?;
        Ok(IndexEvaluation {
            bundle,
            prime: self.prime,
            index,
            coefficient: series.coeff(2 * index)?,
            height: self.height,
        })
    }

    /// Largest `i >= 1` with `2i < N_p` and a nonzero coefficient of `x^{2i}`.
    fn best_index(&self, ell: &WeightTuple, bundle: Bundle) -> Result<Option<(usize, Residue)>> {
        let series = self.series(ell, bundle, self.height)?;
        for i in (1..=(self.height - 1) / 2).rev() {
            let c = series.coeff(2 * i)?;
            if !c.is_zero() {
                return Ok(Some((i, c)));
            }
        }
        Ok(None)
    }

    fn span_certificate(&self, index: usize, witness: Residue) -> SpanCertificate {
        let cert = SpanCertificate {
            prime: self.prime,
            index,
            witness,
            span_bound: manifold_dim(self.n) - 2 * index,
            height: self.height,
        };
        assert!(cert.is_valid(self.n), "emitted an invalid span certificate: {cert:?}");
        cert
    }

    fn immersion_certificate(&self, index: usize, witness: Residue) -> ImmersionCertificate {
        let certified = manifold_dim(self.n) + 2 * index - 1;
        let cert = ImmersionCertificate {
            prime: self.prime,
            index,
            witness,
            certified_non_immersion_dim: certified,
            claimed_dim: certified + 1,
            height: self.height,
        };
        assert!(cert.is_valid(self.n), "emitted an invalid immersion certificate: {cert:?}");
        cert
    }
}

/// Coefficient of `x^{2 index}` in `p(tau)` or `p(nu)` mod `p`, for a caller-chosen index.
pub fn evaluate_index(
    n: usize,
    ell: &WeightTuple,
    p: u64,
    bundle: Bundle,
    index: usize,
) -> Result<IndexEvaluation> {
    PrimeContext::new(n, ell, p)?.evaluate(ell, bundle, index)
}

/// The strongest span bound certified at the prime `p`, if any.
pub fn span_certificate(n: usize, ell: &WeightTuple, p: u64) -> Result<Option<SpanCertificate>> {
    let ctx = PrimeContext::new(n, ell, p)?;
    Ok(ctx
        .best_index(ell, Bundle::Tangent)?
        .map(|(i, w)| ctx.span_certificate(i, w)))
}

/// A span certificate at exactly `index`, if that coefficient certifies.
pub fn span_certificate_at(n: usize, ell: &WeightTuple, p: u64, index: usize) -> Result<Option<SpanCertificate>> {
    let ctx = PrimeContext::new(n, ell, p)?;
    let eval = ctx.evaluate(ell, Bundle::Tangent, index)?;
    Ok((index >= 1 && eval.is_nonzero()).then(|| ctx.span_certificate(index, eval.coefficient)))
}

/// The strongest non-immersion dimension certified at the prime `p`, if any.
pub fn immersion_certificate(n: usize, ell: &WeightTuple, p: u64) -> Result<Option<ImmersionCertificate>> {
    let ctx = PrimeContext::new(n, ell, p)?;
    Ok(ctx
        .best_index(ell, Bundle::Normal)?
        .map(|(j, w)| ctx.immersion_certificate(j, w)))
}

/// An immersion certificate at exactly `index`, if that coefficient certifies.
pub fn immersion_certificate_at(
    n: usize,
    ell: &WeightTuple,
    p: u64,
    index: usize,
) -> Result<Option<ImmersionCertificate>> {
    let ctx = PrimeContext::new(n, ell, p)?;
    let eval = ctx.evaluate(ell, Bundle::Normal, index)?;
    Ok((index >= 1 && eval.is_nonzero()).then(|| ctx.immersion_certificate(index, eval.coefficient)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanSweep {
    pub prime_bound: u64,
    /// One entry per odd prime that certified something, ascending by prime.
    pub certificates: Vec<SpanCertificate>,
}

impl SpanSweep {
    /// Minimum bound; ties go to the smallest prime.
    pub fn best(&self) -> Option<&SpanCertificate> {
        self.certificates
            .iter()
            .reduce(|best, c| if c.span_bound < best.span_bound { c } else { best })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersionSweep {
    pub prime_bound: u64,
    pub certificates: Vec<ImmersionCertificate>,
}

impl ImmersionSweep {
    /// Maximum certified dimension; ties go to the smallest prime.
    pub fn best(&self) -> Option<&ImmersionCertificate> {
        self.certificates.iter().reduce(|best, c| {
            if c.certified_non_immersion_dim > best.certified_non_immersion_dim {
                c
            } else {
                best
            }
        })
    }
}

fn sweep<T: Send>(
    prime_bound: u64,
    f: impl Fn(u64) -> Result<Option<T>> + Sync,
) -> Result<Vec<T>> {
    let primes = odd_primes_upto(prime_bound);
    let results: Vec<Result<Option<T>>> = std::thread::scope(|s| {
        let f = &f;
        let chunk = primes.len().div_ceil(available_workers()).max(1);
        let handles: Vec<_> = primes
            .chunks(chunk)
            .map(|ps| s.spawn(move || ps.iter().map(|&p| f(p)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        if let Some(c) = r? {
            out.push(c);
        }
    }
    Ok(out)
}

fn available_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}

/// Span certificates for every odd prime `<= prime_bound`.
pub fn best_span_bound(n: usize, ell: &WeightTuple, prime_bound: u64) -> Result<SpanSweep> {
    if prime_bound >= 3 {
        PrimeContext::new(n, ell, 3)?;
    }
    Ok(SpanSweep {
        prime_bound,
        certificates: sweep(prime_bound, |p| span_certificate(n, ell, p))?,
    })
}

/// Immersion certificates for every odd prime `<= prime_bound`.
pub fn best_immersion_bound(n: usize, ell: &WeightTuple, prime_bound: u64) -> Result<ImmersionSweep> {
    if prime_bound >= 3 {
        PrimeContext::new(n, ell, 3)?;
    }
    Ok(ImmersionSweep {
        prime_bound,
        certificates: sweep(prime_bound, |p| immersion_certificate(n, ell, p))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn w(v: &[i64]) -> WeightTuple {
        WeightTuple::from_i64(v).unwrap()
    }

    #[test]
    fn span_examples() {
        let c = span_certificate(7, &w(&[1, 2]), 7).unwrap().unwrap();
        assert_eq!((c.index, c.span_bound, c.height), (2, 19, 6));
        assert_eq!(c.witness.value(), &BigInt::from(1));
        assert_eq!(c.span_bound, 4 * 7 - 5 - 2 * ((7 - 2) / 2));

        // the coefficients of x^14..x^20 vanish mod 7; x^12 is the last survivor
        let c = span_certificate(21, &w(&[2, 1]), 7).unwrap().unwrap();
        assert_eq!((c.index, c.span_bound), (6, 67));
        assert!(c.index < 10);

        // N_p = 2 for every odd p, so no i >= 1 is admissible
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(span_certificate(3, &w(&[1, -1]), p).unwrap(), None);
        }
    }

    #[test]
    fn span_rejects_bad_primes() {
        assert_eq!(span_certificate(7, &w(&[1, 2]), 2), Err(Error::OddPrimeRequired(2)));
        assert_eq!(span_certificate(7, &w(&[1, 2]), 9), Err(Error::NotPrime(9)));
        assert_eq!(span_certificate(7, &w(&[1, 2, 3]), 7), Err(Error::NeedTwoWeights(3)));
    }

    #[test]
    fn immersion_examples() {
        // N_7 = 7 here, so x^6 survives and p_3(nu) = C(18,3) = 816 = 4 mod 7 certifies j = 3
        let c = immersion_certificate(8, &w(&[1, 8]), 7).unwrap().unwrap();
        assert_eq!((c.index, c.certified_non_immersion_dim, c.claimed_dim), (3, 32, 33));
        assert_eq!(c.witness.value(), &BigInt::from(4));

        let c = immersion_certificate_at(8, &w(&[1, 8]), 7, 2).unwrap().unwrap();
        assert_eq!((c.index, c.certified_non_immersion_dim, c.claimed_dim), (2, 30, 31));
        assert_eq!(c.witness.value(), &BigInt::from(3));

        let c = immersion_certificate(7, &w(&[1, 4]), 3).unwrap().unwrap();
        assert_eq!(c.index, 1);
        assert_eq!(c.witness.value(), &BigInt::from(2));
        assert_eq!(immersion_certificate_at(7, &w(&[1, 4]), 3, 2).unwrap(), None);

        assert_eq!(immersion_certificate(3, &w(&[1, -1]), 5).unwrap(), None);
        assert_eq!(immersion_certificate_at(8, &w(&[1, 8]), 7, 0).unwrap(), None);
    }

    #[test]
    fn evaluation_reports_dead_classes() {
        let e = evaluate_index(7, &w(&[1, 2]), 7, Bundle::Tangent, 3).unwrap();
        assert_eq!(e.height, 6);
        assert!(!e.class_survives());
        assert!(!e.is_nonzero());
    }

    #[test]
    fn sweeps() {
        let s = best_span_bound(7, &w(&[1, 2]), 50).unwrap();
        let best = s.best().unwrap();
        assert_eq!(best.span_bound, 19);
        assert!(s.certificates.iter().any(|c| c.prime == 7));
        assert!(s.certificates.windows(2).all(|p| p[0].prime < p[1].prime));

        assert!(best_span_bound(3, &w(&[1, -1]), 50).unwrap().certificates.is_empty());
        assert!(best_span_bound(7, &w(&[1, 2]), 2).unwrap().certificates.is_empty());

        let s = best_immersion_bound(8, &w(&[1, 8]), 50).unwrap();
        assert!(s.best().unwrap().certified_non_immersion_dim >= 30);
        assert!(s.certificates.iter().all(|c| c.index >= 1));
        assert!(best_immersion_bound(4, &w(&[1, 4]), 50).unwrap().certificates.iter().all(|c| c.index >= 1));
        assert!(best_immersion_bound(8, &w(&[1, 8]), 1).unwrap().certificates.is_empty());
    }

    #[test]
    fn sweep_matches_sequential_scan() {
        for n in 2..=14 {
            for ell in [[1, 2], [2, 3], [1, 8], [3, -1]] {
                let ell = w(&ell);
                let s = best_span_bound(n, &ell, 40).unwrap();
                let seq: Vec<_> = odd_primes_upto(40)
                    .into_iter()
                    .filter_map(|p| span_certificate(n, &ell, p).unwrap())
                    .collect();
                assert_eq!(s.certificates, seq);
            }
        }
    }

    #[test]
    fn certificates_invariant_under_swap_and_negation() {
        for n in 2..=16 {
            for (l1, l2) in [(1, 2), (2, 5), (1, 8), (3, -4), (0, 1)] {
                let base = w(&[l1, l2]);
                for other in [w(&[l2, l1]), w(&[-l1, -l2])] {
                    for p in [3, 5, 7, 11] {
                        assert_eq!(span_certificate(n, &base, p).unwrap(), span_certificate(n, &other, p).unwrap());
                        assert_eq!(
                            immersion_certificate(n, &base, p).unwrap(),
                            immersion_certificate(n, &other, p).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn emitted_certificates_are_valid() {
        for n in 2..=18 {
            for l1 in -3i64..=3 {
                for l2 in -3i64..=3 {
                    let Ok(ell) = WeightTuple::from_i64(&[l1, l2]) else { continue };
                    for c in best_span_bound(n, &ell, 23).unwrap().certificates {
                        assert!(c.is_valid(n) && c.span_bound < manifold_dim(n));
                    }
                    for c in best_immersion_bound(n, &ell, 23).unwrap().certificates {
                        assert!(c.is_valid(n));
                        assert_eq!(c.certified_non_immersion_dim + 1, c.claimed_dim);
                    }
                }
            }
        }
    }
}
