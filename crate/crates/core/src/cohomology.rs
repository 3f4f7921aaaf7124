//! Mod-p cohomology presentations of `P_l W_{n,k} = U(n) / (S^1 x U(n-k))`.
//!
//! In the Serre spectral sequence of `W_{n,k} -> P_l W_{n,k} -> CP^inf` the odd
//! generator `y_j` (degree `2j - 1`, `n-k < j <= n`) transgresses to
//! `-(-1)^j h_j(l) x^j`. The first `j` whose coefficient survives mod `p` is the
//! height `N` of `x`; the remaining `y_j` stay as exterior generators.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{is_prime, Modulus, Residue};
use crate::weights::{h, h_table, phi, WeightTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StiefelParams {
    n: usize,
    k: usize,
    ell: WeightTuple,
}

impl StiefelParams {
    pub fn new(n: usize, k: usize, ell: WeightTuple) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        if ell.len() != k {
            return Err(Error::InvalidParams(format!(
                "expected {k} weights, got {}",
                ell.len()
            )));
        }
        Ok(StiefelParams { n, k, ell })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &WeightTuple {
        &self.ell
    }

    /// Real dimension `k(2n - k) - 1`.
    pub fn dimension(&self) -> usize {
        self.k * (2 * self.n - self.k) - 1
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Coefficient of `x^j` in the transgression of `y_j`, reduced mod `p`.
pub fn transgression_target(params: &StiefelParams, j: usize, p: u64) -> Result<Residue> {
    require_prime(p)?;
    let lower = params.n - params.k;
    if j <= lower || j > params.n {
        return Err(Error::IndexOutOfRange {
            j,
            lower,
            upper: params.n,
        });
    }
    let hj = h(&params.ell, j);
    let coeff = if j.is_multiple_of(2) { -hj } else { hj };
    Ok(Residue::new(coeff, Modulus::new(p)?))
}

/// Smallest `r` in `(n-k, n]` with `h_r(l) != 0 mod p`.
pub fn min_nonvanishing_n(params: &StiefelParams, p: u64) -> Result<usize> {
    require_prime(p)?;
    let lower = params.n - params.k;
    let table = h_table(&params.ell, params.n);
    let pb = BigInt::from(p);
    (lower + 1..=params.n)
        .find(|&r| !table[r].mod_floor(&pb).is_zero())
        .ok_or(Error::NoTransgression {
            p,
            lower,
            upper: params.n,
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyPresentation {
    pub prime: u64,
    /// `N`: the relation is `x^N = 0`.
    pub height: usize,
    pub poly_gen_degree: usize,
    /// Indices `j` of the surviving `y_j`, ascending.
    pub exterior_gens: Vec<usize>,
    /// `y^2 = 0` recorded as an explicit relation (the mod-2, k = 2 shape).
    pub mod2_square_relations: bool,
}

impl CohomologyPresentation {
    pub fn exterior_gen_degrees(&self) -> Vec<usize> {
        self.exterior_gens.iter().map(|j| 2 * j - 1).collect()
    }

    fn from_height(params: &StiefelParams, p: u64, height: usize, mod2: bool) -> Self {
        let exterior_gens = (params.n - params.k + 1..=params.n)
            .filter(|&j| j != height)
            .collect();
        CohomologyPresentation {
            prime: p,
            height,
            poly_gen_degree: 2,
            exterior_gens,
            mod2_square_relations: mod2,
        }
    }
}

impl fmt::Display for CohomologyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mod2_square_relations {
            write!(f, "Z/2[x")?;
            for j in &self.exterior_gens {
                write!(f, ",y_{j}")?;
            }
            write!(f, "]/(x^{}", self.height)?;
            for j in &self.exterior_gens {
                write!(f, ", y_{j}^2")?;
            }
            return write!(f, ")");
        }
        write!(f, "Z/{}[x]/(x^{})", self.prime, self.height)?;
        if !self.exterior_gens.is_empty() {
            let gens: Vec<String> = self.exterior_gens.iter().map(|j| format!("y_{j}")).collect();
            write!(f, " ⊗ Λ({})", gens.join(","))?;
        }
        Ok(())
    }
}

/// Presentation for an odd prime: `Z/p[x]/(x^N) ⊗ Λ(y_j : n-k < j <= n, j != N)`.
pub fn presentation_odd(params: &StiefelParams, p: u64) -> Result<CohomologyPresentation> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::EvenPrime(params.k));
    }
    let height = min_nonvanishing_n(params, p)?;
    Ok(CohomologyPresentation::from_height(params, p, height, false))
}

/// The mod-2 ring for `k = 2`: `Z/2[x,y_{n-1}]/(x^n, y_{n-1}^2)` when `phi_{n-1}` is even,
/// `Z/2[x,y_n]/(x^{n-1}, y_n^2)` otherwise.
pub fn presentation_mod2_k2(n: usize, ell: &WeightTuple) -> Result<CohomologyPresentation> {
    let (l1, l2) = ell.pair()?;
    let params = StiefelParams::new(n, 2, ell.clone())?;
    let height = if phi(l1, l2, (n - 1) as u32).is_even() {
        n
    } else {
        n - 1
    };
    Ok(CohomologyPresentation::from_height(&params, 2, height, true))
}

/// Dispatches to the odd-prime or mod-2 construction. `p = 2` is only supported for `k <= 2`.
pub fn presentation(params: &StiefelParams, p: u64) -> Result<CohomologyPresentation> {
    require_prime(p)?;
    match (p, params.k) {
        (2, 1) => {
            // no odd generators, so no square can be ambiguous
            let height = min_nonvanishing_n(params, 2)?;
            Ok(CohomologyPresentation::from_height(params, 2, height, false))
        }
        (2, 2) => presentation_mod2_k2(params.n, &params.ell),
        (2, k) => Err(Error::EvenPrime(k)),
        _ => presentation_odd(params, p),
    }
}

/// Betti numbers indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial(pub Vec<BigInt>);

impl PoincarePolynomial {
    pub fn top_degree(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn total_rank(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let top = self.top_degree();
        (0..=top).all(|i| self.0[i] == self.0[top - i])
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match (d, c.is_one()) {
                (0, _) => c.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{c}t"),
                (_, true) => format!("t^{d}"),
                (_, false) => format!("{c}t^{d}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `(1 + t^2 + ... + t^{2(N-1)}) * prod (1 + t^{deg y})`.
pub fn poincare_polynomial(pres: &CohomologyPresentation) -> PoincarePolynomial {
    let mut coeffs = vec![BigInt::zero(); 2 * (pres.height.max(1) - 1) + 1];
    for i in 0..pres.height {
        coeffs[pres.poly_gen_degree * i] = BigInt::one();
    }
    for deg in pres.exterior_gen_degrees() {
        let mut next = vec![BigInt::zero(); coeffs.len() + deg];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + deg] += c;
        }
        coeffs = next;
    }
    PoincarePolynomial(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub passed: bool,
    pub top_degree: usize,
    pub expected_top_degree: usize,
    pub total_rank: BigInt,
    pub expected_rank: BigInt,
    pub palindromic: bool,
    pub height_in_window: bool,
    pub failures: Vec<String>,
}

/// Poincaré-duality consistency of a presentation against the manifold it describes.
pub fn check_presentation_invariants(
    pres: &CohomologyPresentation,
    params: &StiefelParams,
) -> InvariantReport {
    let poly = poincare_polynomial(pres);
    let top_degree = poly.top_degree();
    let expected_top_degree = params.dimension();
    let total_rank = poly.total_rank();
    let expected_rank = BigInt::from(pres.height) * (BigInt::one() << (params.k - 1));
    let palindromic = poly.is_palindromic();
    let height_in_window = params.n - params.k < pres.height && pres.height <= params.n;

    let mut failures = Vec::new();
    if top_degree != expected_top_degree {
        failures.push(format!("top degree {top_degree} != {expected_top_degree}"));
    }
    if total_rank != expected_rank {
        failures.push(format!("total rank {total_rank} != {expected_rank}"));
    }
    if !palindromic {
        failures.push(format!("Poincaré polynomial not palindromic: {poly}"));
    }
    if !height_in_window {
        failures.push(format!(
            "N = {} outside ({}, {}]",
            pres.height,
            params.n - params.k,
            params.n
        ));
    }
    InvariantReport {
        passed: failures.is_empty(),
        top_degree,
        expected_top_degree,
        total_rank,
        expected_rank,
        palindromic,
        height_in_window,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::lucas_binom;

    fn params(n: usize, k: usize, ell: &[i64]) -> StiefelParams {
        StiefelParams::new(n, k, WeightTuple::from_i64(ell).unwrap()).unwrap()
    }

    fn value(r: Residue) -> i64 {
        r.value().try_into().unwrap()
    }

    #[test]
    fn params_validation() {
        let w = WeightTuple::from_i64(&[1, 1]).unwrap();
        assert!(StiefelParams::new(1, 2, w.clone()).is_err());
        assert!(StiefelParams::new(4, 3, w.clone()).is_err());
        assert_eq!(StiefelParams::new(4, 2, w).unwrap().dimension(), 11);
    }

    #[test]
    fn transgression_examples() {
        assert_eq!(value(transgression_target(&params(4, 2, &[1, 1]), 3, 5).unwrap()), 4);
        for j in [3, 5, 7] {
            assert!(transgression_target(&params(7, 5, &[1, -1, 0, 0, 0]), j, 3).unwrap().is_zero());
        }
        assert_eq!(value(transgression_target(&params(2, 2, &[1, -1]), 2, 3).unwrap()), 2);
        assert!(matches!(
            transgression_target(&params(4, 2, &[1, 1]), 2, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(transgression_target(&params(4, 2, &[1, 1]), 5, 3).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(min_nonvanishing_n(&params(4, 2, &[1, 1]), 3).unwrap(), 3);
        assert_eq!(min_nonvanishing_n(&params(5, 2, &[1, 1]), 5).unwrap(), 5);
        for n in 3..10 {
            for p in [2, 3, 5, 7] {
                assert_eq!(min_nonvanishing_n(&params(n, 3, &[1, 0, 0]), p).unwrap(), n - 2);
            }
        }
        assert_eq!(min_nonvanishing_n(&params(4, 2, &[1, 1]), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn height_matches_lucas_rule() {
        for n in 1..=30usize {
            for k in 2..=5usize.min(n) {
                for p in [3u64, 5, 7, 11] {
                    let lucas = (n - k + 1..=n)
                        .find(|&r| !lucas_binom(n as u64, r as u64, p).unwrap().is_zero())
                        .unwrap();
                    assert_eq!(min_nonvanishing_n(&params(n, k, &vec![1; k]), p).unwrap(), lucas);
                }
            }
        }
    }

    #[test]
    fn odd_presentation_examples() {
        let pres = presentation_odd(&params(4, 2, &[1, 1]), 3).unwrap();
        assert_eq!(pres.height, 3);
        assert_eq!(pres.exterior_gen_degrees(), vec![7]);
        assert_eq!(pres.to_string(), "Z/3[x]/(x^3) ⊗ Λ(y_4)");

        for n in 1..8 {
            let pres = presentation_odd(&params(n, 1, &[1]), 5).unwrap();
            assert_eq!(pres.height, n);
            assert!(pres.exterior_gens.is_empty());
        }

        let pres = presentation_odd(&params(2, 2, &[1, -1]), 5).unwrap();
        assert_eq!(pres.height, 2);
        assert_eq!(pres.exterior_gen_degrees(), vec![1]);

        assert_eq!(presentation_odd(&params(4, 2, &[1, 1]), 2), Err(Error::EvenPrime(2)));
    }

    #[test]
    fn mod2_examples() {
        let w = |v: &[i64]| WeightTuple::from_i64(v).unwrap();
        let a = presentation_mod2_k2(4, &w(&[1, 1])).unwrap();
        assert_eq!((a.height, a.exterior_gen_degrees()), (4, vec![5]));
        assert_eq!(a.to_string(), "Z/2[x,y_3]/(x^4, y_3^2)");
        let b = presentation_mod2_k2(4, &w(&[1, 2])).unwrap();
        assert_eq!((b.height, b.exterior_gen_degrees()), (3, vec![7]));
        let c = presentation_mod2_k2(3, &w(&[1, -1])).unwrap();
        assert_eq!(c.to_string(), "Z/2[x,y_3]/(x^2, y_3^2)");
        assert_eq!(presentation_mod2_k2(4, &w(&[1, 1, 1])), Err(Error::NeedTwoWeights(3)));
    }

    #[test]
    fn mod2_height_agrees_with_search() {
        for ell in [[1, 1], [1, 2], [1, -1], [2, 3], [0, 1], [5, -3]] {
            for n in 2..=20 {
                let w = WeightTuple::from_i64(&ell).unwrap();
                let pres = presentation_mod2_k2(n, &w).unwrap();
                let p = StiefelParams::new(n, 2, w).unwrap();
                assert_eq!(pres.height, min_nonvanishing_n(&p, 2).unwrap());
                assert!(check_presentation_invariants(&pres, &p).passed);
            }
        }
    }

    #[test]
    fn dispatcher_rejects_unproved_mod2_rings() {
        assert_eq!(presentation(&params(5, 3, &[1, 1, 1]), 2), Err(Error::EvenPrime(3)));
        assert_eq!(presentation(&params(5, 1, &[1]), 2).unwrap().height, 5);
        assert!(presentation(&params(5, 2, &[1, 1]), 2).unwrap().mod2_square_relations);
    }

    #[test]
    fn poincare_examples() {
        let pres = presentation_odd(&params(4, 2, &[1, 1]), 3).unwrap();
        let poly = poincare_polynomial(&pres);
        // (1 + t^2 + t^4)(1 + t^7)
        let mut expect = vec![0i64; 12];
        for d in [0, 2, 4, 7, 9, 11] {
            expect[d] = 1;
        }
        assert_eq!(poly.0, expect.into_iter().map(BigInt::from).collect::<Vec<_>>());

        let cp = poincare_polynomial(&presentation_odd(&params(5, 1, &[1]), 3).unwrap());
        assert_eq!(cp.to_string(), "1 + t^2 + t^4 + t^6 + t^8");

        let u2 = poincare_polynomial(&presentation_odd(&params(2, 2, &[1, -1]), 5).unwrap());
        assert_eq!(u2.to_string(), "1 + t + t^2 + t^3");
    }

    #[test]
    fn invariant_report_examples() {
        let p = params(4, 2, &[1, 1]);
        let r = check_presentation_invariants(&presentation_odd(&p, 3).unwrap(), &p);
        assert!(r.passed);
        assert_eq!((r.top_degree, r.total_rank.clone()), (11, BigInt::from(6)));

        let p = params(2, 2, &[1, -1]);
        let r = check_presentation_invariants(&presentation_odd(&p, 5).unwrap(), &p);
        assert!(r.passed);
        assert_eq!((r.top_degree, r.total_rank.clone()), (3, BigInt::from(4)));

        for n in 1..10 {
            let p = params(n, 1, &[-1]);
            let r = check_presentation_invariants(&presentation_odd(&p, 7).unwrap(), &p);
            assert!(r.passed);
            assert_eq!((r.top_degree, r.total_rank), (2 * n - 2, BigInt::from(n)));
        }

        let p = params(4, 2, &[1, 1]);
        let mut bad = presentation_odd(&p, 3).unwrap();
        bad.exterior_gens = vec![3, 4];
        let r = check_presentation_invariants(&bad, &p);
        assert!(!r.passed);
        assert!(!r.failures.is_empty());
    }

    #[test]
    fn height_is_invariant_under_permutation_and_negation() {
        for ell in [[1, 2, 3], [2, -1, 5], [0, 3, 4], [1, 1, -2]] {
            for n in 3..=15 {
                for q in [3, 5, 7] {
                    let w = WeightTuple::from_i64(&ell).unwrap();
                    let base = min_nonvanishing_n(&StiefelParams::new(n, 3, w.clone()).unwrap(), q).unwrap();
                    let rev = StiefelParams::new(n, 3, w.reversed()).unwrap();
                    let neg = StiefelParams::new(n, 3, w.negated()).unwrap();
                    assert_eq!(min_nonvanishing_n(&rev, q).unwrap(), base);
                    assert_eq!(min_nonvanishing_n(&neg, q).unwrap(), base);
                }
            }
        }
    }
}
