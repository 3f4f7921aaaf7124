//! Self-verification: every library result is compared against an independent oracle.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{
    check_presentation_invariants, min_nonvanishing_n, presentation, presentation_mod2_k2,
    StiefelParams,
};
use crate::error::Result;
use crate::geometry::{
    check_immersion_theorem, check_span_theorem, cp_complement_min_rank, immersion_certificate_at,
    lens_rank_bound, lens_sq2_criterion, normal_pontrjagin, span_certificate, tangent_pontrjagin,
    Claim, LensParams, RankReason, Verdict,
};
use crate::ring::{lucas_binom, odd_primes_upto, Modulus};
use crate::series::TruncatedSeries;
use crate::weights::{complement_chern, h, h_bruteforce, WeightTuple};

pub type HFn = fn(&WeightTuple, usize) -> BigInt;

const SERIES_SEED: u64 = 0x05ee_d0f5_e7e5;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub quick: bool,
    /// Implementation under test for the symmetric-sum suite.
    pub h_impl: HFn,
}

impl VerifyOptions {
    pub fn new(quick: bool) -> Self {
        VerifyOptions { quick, h_impl: h }
    }

    fn n_max(&self, full: usize) -> usize {
        if self.quick {
            full.min(12)
        } else {
            full
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: u64,
    /// First counterexample; `None` when every check passed.
    pub failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Counts checks and stops at the first failure.
struct Tally {
    checks: u64,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> std::result::Result<(), String> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(describe())
        }
    }
}

type SuiteFn = fn(&VerifyOptions, &mut Tally) -> std::result::Result<(), String>;

const SUITES: [(&str, SuiteFn); 6] = [
    ("symmetric-sums", symmetric_sums),
    ("series-inversion", series_inversion),
    ("height-vs-lucas", height_vs_lucas),
    ("presentation-invariants", presentation_invariants),
    ("pontrjagin-inverse", pontrjagin_inverse),
    ("instances", instances),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _)| *name).collect()
}

/// Runs the suites in order and stops after the first failing one.
pub fn run_suites(opts: &VerifyOptions) -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    for (name, suite) in SUITES {
        let mut tally = Tally { checks: 0 };
        let failure = suite(opts, &mut tally).err();
        let stop = failure.is_some();
        out.push(SuiteOutcome {
            name,
            checks: tally.checks,
            failure,
        });
        if stop {
            break;
        }
    }
    out
}

fn lift<T>(r: Result<T>, what: impl FnOnce() -> String) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", what()))
}

/// Every tuple in `[-bound, bound]^k`, lexicographic.
fn tuples(k: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    (0..side.pow(k as u32)).map(move |mut code| {
        let mut t = vec![0i64; k];
        for slot in t.iter_mut().rev() {
            *slot = (code % side) as i64 - bound;
            code /= side;
        }
        t
    })
}

fn symmetric_sums(opts: &VerifyOptions, t: &mut Tally) -> std::result::Result<(), String> {
    let k_max = if opts.quick { 3 } else { 4 };
    for k in 1..=k_max {
        for raw in tuples(k, 3) {
            let Ok(ell) = WeightTuple::from_i64(&raw) else { continue };
            for r in 0..=8 {
                let got = (opts.h_impl)(&ell, r);
                let want = lift(h_bruteforce(&ell, r), || format!("brute force {ell} r={r}"))?;
                t.check(got == want, || format!("h({ell}, r={r}) = {got}, enumeration gives {want}"))?;
            }
        }
    }
    Ok(())
}

/// `m = 0` means `Z`, where the units are `1` and `-1`.
fn random_unit(rng: &mut ChaCha8Rng, m: i64, truncation: usize) -> Result<TruncatedSeries> {
    let mut coeffs: Vec<BigInt> = (0..truncation)
        .map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
        .collect();
    coeffs[0] = BigInt::from(match m {
        0 if rng.gen_bool(0.5) => 1,
        0 => -1,
        p => rng.gen_range(1..p),
    });
    let modulus = if m == 0 { Modulus::integers() } else { Modulus::new(m)? };
    TruncatedSeries::new(coeffs, truncation, modulus)
}

fn series_inversion(opts: &VerifyOptions, t: &mut Tally) -> std::result::Result<(), String> {
    let count = if opts.quick { 200 } else { 1000 };
    let moduli = [0i64, 3, 5, 7];
    let mut rng = ChaCha8Rng::seed_from_u64(SERIES_SEED);
    for i in 0..count {
        let truncation = rng.gen_range(1..=32usize);
        let a = lift(random_unit(&mut rng, moduli[i % moduli.len()], truncation), || "random series".into())?;
        let inv = lift(a.inv(), || format!("inverse of {a}"))?;
        let left = lift(a.mul(&inv), || "product".into())?;
        let right = lift(inv.mul(&a), || "product".into())?;
        t.check(left.is_one() && right.is_one(), || format!("a * inv(a) != 1 for a = {a}"))?;
    }
    Ok(())
}

fn height_vs_lucas(opts: &VerifyOptions, t: &mut Tally) -> std::result::Result<(), String> {
    for n in 2..=opts.n_max(30) {
        for k in 2..=5usize.min(n) {
            let params = lift(StiefelParams::new(n, k, WeightTuple::from_i64(&vec![1; k]).unwrap()), || "params".into())?;
            for p in [3u64, 5, 7, 11] {
                let mut lucas = None;
                for r in n - k + 1..=n {
                    if !lift(lucas_binom(n as u64, r as u64, p), || "lucas".into())?.is_zero() {
                        lucas = Some(r);
                        break;
                    }
                }
                let got = min_nonvanishing_n(&params, p).ok();
                t.check(got == lucas, || format!("n={n} k={k} p={p}: N = {got:?}, Lucas rule gives {lucas:?}"))?;
            }
        }
    }
    Ok(())
}

fn weight_families(k: usize) -> Vec<Vec<i64>> {
    vec![
        vec![1; k],
        (1..=k as i64).collect(),
        (0..k).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect(),
        [2, 3, 5, 7, 11][..k].to_vec(),
    ]
}

pub const MOD2_PAIRS: [[i64; 2]; 4] = [[1, 1], [1, 2], [1, -1], [2, 3]];

fn presentation_invariants(opts: &VerifyOptions, t: &mut Tally) -> std::result::Result<(), String> {
    let n_max = opts.n_max(20);
    for n in 2..=n_max {
        for k in 2..=5usize.min(n) {
            for raw in weight_families(k) {
                let ell = WeightTuple::from_i64(&raw).unwrap();
                let params = lift(StiefelParams::new(n, k, ell.clone()), || "params".into())?;
                for p in odd_primes_upto(13) {
                    let pres = lift(presentation(&params, p), || format!("presentation n={n} {ell} p={p}"))?;
                    let report = check_presentation_invariants(&pres, &params);
                    t.check(report.passed, || {
                        format!("n={n} k={k} l={ell} p={p}: {}", report.failures.join("; "))
                    })?;
                }
            }
        }
        for raw in MOD2_PAIRS {
            let ell = WeightTuple::from_i64(&raw).unwrap();
            let params = lift(StiefelParams::new(n, 2, ell.clone()), || "params".into())?;
            let pres = lift(presentation_mod2_k2(n, &ell), || format!("mod-2 presentation n={n} {ell}"))?;
            let report = check_presentation_invariants(&pres, &params);
            t.check(report.passed, || format!("mod 2, n={n} l={ell}: {}", report.failures.join("; ")))?;
        }
    }
    Ok(())
}

fn pontrjagin_inverse(opts: &VerifyOptions, t: &mut Tally) -> std::result::Result<(), String> {
    let z = Modulus::integers();
    for n in 2..=opts.n_max(20) {
        for raw in tuples(2, 5) {
            let Ok(ell) = WeightTuple::from_i64(&raw) else { continue };
            let tau = lift(tangent_pontrjagin(n, &ell, &z, 2 * n), || "tangent".into())?;
            let nu = lift(normal_pontrjagin(n, &ell, &z, 2 * n), || "normal".into())?;
            let prod = lift(tau.mul(&nu), || "product".into())?;
            t.check(prod.is_one(), || format!("n={n} l={ell}: p(tau) p(nu) = {prod}"))?;
        }
    }
    Ok(())
}

fn w(raw: &[i64]) -> WeightTuple {
    WeightTuple::from_i64(raw).unwrap()
}

fn instances(opts: &VerifyOptions, t: &mut Tally) -> std::result::Result<(), String> {
    let span = lift(span_certificate(7, &w(&[1, 2]), 7), || "span".into())?;
    t.check(
        span.as_ref().is_some_and(|c| c.index == 2 && c.witness.value() == &BigInt::from(1) && c.span_bound == 19),
        || format!("span n=7 l=(1,2) p=7: {span:?}"),
    )?;

    let imm = lift(immersion_certificate_at(8, &w(&[1, 8]), 7, 2), || "immersion".into())?;
    t.check(
        imm.as_ref().is_some_and(|c| {
            c.witness.value() == &BigInt::from(3) && c.certified_non_immersion_dim == 30 && c.claimed_dim == 31
        }),
        || format!("immersion n=8 l=(1,8) p=7 j=2: {imm:?}"),
    )?;

    let n_cp = opts.n_max(15);
    for n in 1..=n_cp {
        let c = lift(complement_chern(&w(&[1, -1]), n + 1), || "complement".into())?;
        for i in 0..=n {
            let want = BigInt::from((i % 2 == 0) as i64);
            t.check(c.coeff(i).map(|r| r.into_value()) == Ok(want.clone()), || {
                format!("complement of (1,-1): coefficient {i} is not {want}")
            })?;
        }
        for raw in tuples(2, 4) {
            let Ok(ell) = WeightTuple::from_i64(&raw) else { continue };
            let r = lift(cp_complement_min_rank(n, &ell), || "cp".into())?;
            let ok = if !h(&ell, n).is_zero() {
                (r.lower_bound, r.achievable) == (n, Some(n))
            } else if raw == [1, -1] && n % 2 == 1 {
                (r.lower_bound, r.achievable) == (n - 1, Some(n - 1))
            } else {
                r.lower_bound < n
            };
            t.check(ok, || format!("CP^{n} l={ell}: lower {} achievable {:?}", r.lower_bound, r.achievable))?;
        }
    }

    let lens = lift(LensParams::new(3, 7, 1, 2), || "lens".into())?;
    let r = lens_rank_bound(&lens);
    t.check(
        r.lower_bound == 3 && matches!(&r.reason, RankReason::PhiModM { phi, .. } if phi == &BigInt::from(15)),
        || format!("lens d=3 m=7 l=(1,2): {r:?}"),
    )?;
    let d_max = if opts.quick { 4 } else { 10 };
    let m_max = if opts.quick { 12 } else { 40 };
    for d in (2..=d_max).step_by(2) {
        for m in (2..=m_max).step_by(2) {
            for raw in tuples(2, 9) {
                let Ok(p) = LensParams::new(d, m, raw[0], raw[1]) else { continue };
                let c = lens_sq2_criterion(&p);
                t.check(c.diagnostic.is_some() && !c.satisfied, || {
                    format!("lens d={d} m={m} l=({},{}): no unsatisfiability diagnostic, phi = {}", raw[0], raw[1], c.phi)
                })?;
            }
        }
    }

    let verdict = |c: &crate::geometry::ClaimCheck, claim, p| c.entry(claim, p).map(|e| e.verdict);
    let c = lift(check_span_theorem(7, &w(&[1, 2])), || "span claims".into())?;
    t.check(verdict(&c, Claim::SpanGeneral, 7) == Some(Verdict::Agree), || format!("span claim n=7: {c:?}"))?;
    let c = lift(check_span_theorem(21, &w(&[2, 1])), || "span claims".into())?;
    t.check(verdict(&c, Claim::SpanOdd, 7) == Some(Verdict::Discrepant), || format!("span claim n=21: {c:?}"))?;
    let c = lift(check_immersion_theorem(7, &w(&[1, 4])), || "immersion claims".into())?;
    t.check(verdict(&c, Claim::Immersion, 3) == Some(Verdict::Discrepant), || format!("immersion claim n=7: {c:?}"))?;
    Ok(())
}
