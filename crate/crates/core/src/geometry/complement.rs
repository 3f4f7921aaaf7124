//! Ranks of bundles complementary to `xi^{l_1} + ... + xi^{l_k}` over complex projective
//! space and to `lambda^{l1} + lambda^{l2}` over lens spaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{gcd_all, nu};
use crate::weights::{h_table, phi, WeightTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    ComplexProjective { n: usize },
    Lens { d: u32, m: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankReason {
    /// `c_index` of the complement is nonzero, with this integer value.
    ChernNonzero { index: usize, value: BigInt },
    /// `h_n(l) = 0`, so the top obstruction vanishes and rank `n - 1` is realized.
    TopClassVanishes,
    /// `m` does not divide `phi_d(l1, l2)`, so `c_d` survives in `Z/m`.
    PhiModM { phi: BigInt, residue: BigInt },
    /// The Bockstein / `Sq^2` criterion holds.
    Sq2Criterion,
    None,
}

impl RankReason {
    pub fn tag(&self) -> &'static str {
        match self {
            RankReason::ChernNonzero { .. } => "chern_nonzero",
            RankReason::TopClassVanishes => "top_class_vanishes",
            RankReason::PhiModM { .. } => "phi_mod_m",
            RankReason::Sq2Criterion => "sq2_criterion",
            RankReason::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBoundReport {
    pub space: Space,
    pub lower_bound: usize,
    pub achievable: Option<usize>,
    pub reason: RankReason,
    /// Why `achievable` is realizable, when it is below the generic value.
    pub achievable_reason: Option<RankReason>,
}

/// Complement of `⊕ xi^{l_j}` over `CP^n`.
///
/// The complement has `c_i = (-1)^i h_i(l) x^i` in `Z[x]/(x^{n+1})`, so its rank is at least
/// the largest `i <= n` with `h_i != 0`. Rank `n` is always realizable on a `2n`-dimensional
/// complex, and rank `n - 1` exactly when `h_n(l) = 0`.
pub fn cp_complement_min_rank(n: usize, ell: &WeightTuple) -> Result<RankBoundReport> {
    if n == 0 {
        return Err(Error::InvalidParams("CP^n needs n >= 1".into()));
    }
    let table = h_table(ell, n);
    let (index, hv) = table
        .iter()
        .enumerate()
        .rev()
        .find(|(_, v)| !v.is_zero())
        .expect("h_0 = 1");
    let value = if index % 2 == 0 { hv.clone() } else { -hv };
    let top_vanishes = table[n].is_zero();
    Ok(RankBoundReport {
        space: Space::ComplexProjective { n },
        lower_bound: index,
        achievable: Some(if top_vanishes { n - 1 } else { n }),
        reason: RankReason::ChernNonzero { index, value },
        achievable_reason: top_vanishes.then_some(RankReason::TopClassVanishes),
    })
}

/// `L^d(m) = S^{2d+1} / Z_m` with the pair `(l1, l2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensParams {
    d: u32,
    m: BigInt,
    l1: BigInt,
    l2: BigInt,
}

impl LensParams {
    pub fn new(d: u32, m: impl Into<BigInt>, l1: impl Into<BigInt>, l2: impl Into<BigInt>) -> Result<Self> {
        let (m, l1, l2) = (m.into(), l1.into(), l2.into());
        if d == 0 {
            return Err(Error::InvalidParams("lens space needs d >= 1".into()));
        }
        if m < BigInt::from(2) {
            return Err(Error::InvalidParams(format!("lens space needs m >= 2, got {m}")));
        }
        let g = gcd_all(&[l1.clone(), l2.clone()]);
        if !g.is_one() {
            return Err(Error::NotPrimitive(g));
        }
        Ok(LensParams { d, m, l1, l2 })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn weights(&self) -> (&BigInt, &BigInt) {
        (&self.l1, &self.l2)
    }

    pub fn phi(&self) -> BigInt {
        phi(&self.l1, &self.l2, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub satisfied: bool,
    pub phi: BigInt,
    pub hypotheses: Vec<(String, bool)>,
    pub diagnostic: Option<String>,
}

/// Hypotheses: `d` even, `m` even, `m | phi_d`, and `nu_2(m) = nu_2(phi_d)`.
pub fn lens_sq2_criterion(params: &LensParams) -> CriterionResult {
    let phi_d = params.phi();
    let d_even = params.d.is_multiple_of(2);
    let m_even = params.m.is_even();
    let m_divides = phi_d.mod_floor(&params.m).is_zero();
    // nu_2(0) is infinite and never equals the finite nu_2(m)
    let valuations_match = !phi_d.is_zero() && nu(2, &params.m).ok() == nu(2, &phi_d).ok();
    let hypotheses = vec![
        ("d is even".to_string(), d_even),
        ("m is even".to_string(), m_even),
        (format!("m divides phi_d = {phi_d}"), m_divides),
        ("nu_2(m) = nu_2(phi_d)".to_string(), valuations_match),
    ];
    let satisfied = hypotheses.iter().all(|(_, h)| *h);
    let diagnostic = (d_even && phi_d.is_odd()).then(|| {
        format!("phi_d = {phi_d} is odd (d even, coprime weights), so no even m divides it; the hypotheses cannot all hold")
    });
    CriterionResult {
        satisfied,
        phi: phi_d,
        hypotheses,
        diagnostic,
    }
}

/// Rank `d` is always realizable; rank `d - 1` is ruled out when `m ∤ phi_d` or the
/// `Sq^2` criterion holds.
pub fn lens_rank_bound(params: &LensParams) -> RankBoundReport {
    let phi_d = params.phi();
    let residue = phi_d.mod_floor(&params.m);
    let d = params.d as usize;
    let (lower_bound, reason) = if !residue.is_zero() {
        (d, RankReason::PhiModM { phi: phi_d, residue })
    } else if lens_sq2_criterion(params).satisfied {
        (d, RankReason::Sq2Criterion)
    } else {
        (d - 1, RankReason::None)
    };
    RankBoundReport {
        space: Space::Lens {
            d: params.d,
            m: params.m.clone(),
        },
        lower_bound,
        achievable: Some(d),
        reason,
        achievable_reason: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{complement_chern, h};

    fn w(v: &[i64]) -> WeightTuple {
        WeightTuple::from_i64(v).unwrap()
    }

    #[test]
    fn cp_examples() {
        let r = cp_complement_min_rank(3, &w(&[1, -1])).unwrap();
        assert_eq!((r.lower_bound, r.achievable), (2, Some(2)));
        assert_eq!(r.achievable_reason, Some(RankReason::TopClassVanishes));

        let r = cp_complement_min_rank(4, &w(&[1, -1])).unwrap();
        assert_eq!((r.lower_bound, r.achievable), (4, Some(4)));
        assert_eq!(r.reason, RankReason::ChernNonzero { index: 4, value: BigInt::from(1) });

        let r = cp_complement_min_rank(3, &w(&[1, 2])).unwrap();
        assert_eq!((r.lower_bound, r.achievable), (3, Some(3)));
        assert_eq!(r.reason, RankReason::ChernNonzero { index: 3, value: BigInt::from(-15) });

        assert!(cp_complement_min_rank(0, &w(&[1])).is_err());
    }

    #[test]
    fn cp_grid_consistency() {
        for n in 1..=15usize {
            for l1 in -4i64..=4 {
                for l2 in -4i64..=4 {
                    let Ok(ell) = WeightTuple::from_i64(&[l1, l2]) else { continue };
                    let r = cp_complement_min_rank(n, &ell).unwrap();
                    assert!(r.lower_bound <= r.achievable.unwrap());
                    if !h(&ell, n).is_zero() {
                        assert_eq!((r.lower_bound, r.achievable), (n, Some(n)));
                    }
                }
            }
            let c = complement_chern(&w(&[1, -1]), n + 1).unwrap();
            for i in 0..=n {
                assert_eq!(c.coeff(i).unwrap().value(), &BigInt::from((i % 2 == 0) as i64));
            }
            if n % 2 == 1 {
                let r = cp_complement_min_rank(n, &w(&[1, -1])).unwrap();
                assert_eq!((r.lower_bound, r.achievable), (n - 1, Some(n - 1)));
            }
        }
    }

    #[test]
    fn lens_examples() {
        let r = lens_rank_bound(&LensParams::new(3, 7, 1, 2).unwrap());
        assert_eq!((r.lower_bound, r.achievable), (3, Some(3)));
        assert_eq!(r.reason, RankReason::PhiModM { phi: BigInt::from(15), residue: BigInt::from(1) });

        let r = lens_rank_bound(&LensParams::new(3, 5, 1, 2).unwrap());
        assert_eq!((r.lower_bound, r.achievable, r.reason), (2, Some(3), RankReason::None));

        let r = lens_rank_bound(&LensParams::new(3, 2, 1, 1).unwrap());
        assert_eq!((r.lower_bound, r.achievable, r.reason), (2, Some(3), RankReason::None));
    }

    #[test]
    fn lens_validation() {
        assert!(LensParams::new(0, 3, 1, 2).is_err());
        assert!(LensParams::new(2, 1, 1, 2).is_err());
        assert_eq!(LensParams::new(2, 4, 2, 4), Err(Error::NotPrimitive(BigInt::from(2))));
    }

    #[test]
    fn sq2_examples() {
        let c = lens_sq2_criterion(&LensParams::new(2, 2, 1, 3).unwrap());
        assert!(!c.satisfied);
        assert_eq!(c.phi, BigInt::from(13));
        assert!(!c.hypotheses[2].1);
        assert!(c.diagnostic.is_some());

        let c = lens_sq2_criterion(&LensParams::new(2, 3, 1, 1).unwrap());
        assert!(!c.satisfied);
        assert!(!c.hypotheses[1].1);

        let c = lens_sq2_criterion(&LensParams::new(4, 2, 1, 2).unwrap());
        assert!(!c.satisfied);
        assert_eq!(c.phi, BigInt::from(31));
        assert!(c.diagnostic.is_some());

        // phi_3(1,-1) = 0: m divides it but the valuations cannot match
        let c = lens_sq2_criterion(&LensParams::new(3, 4, 1, -1).unwrap());
        assert!(c.hypotheses[2].1 && !c.hypotheses[3].1);
        assert!(c.diagnostic.is_none());
    }

    #[test]
    fn lens_lower_never_exceeds_achievable() {
        for d in 1..=10u32 {
            for m in 2..=20i64 {
                for l1 in -5i64..=5 {
                    for l2 in -5i64..=5 {
                        let Ok(p) = LensParams::new(d, m, l1, l2) else { continue };
                        let r = lens_rank_bound(&p);
                        assert!(r.lower_bound <= r.achievable.unwrap());
                    }
                }
            }
        }
    }
}
