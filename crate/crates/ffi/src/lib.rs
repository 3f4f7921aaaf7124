//! C ABI over `pstiefel`.
//!
//! Objects cross the boundary as opaque handles created by `ps_*_new` style functions and
//! released with the matching `ps_*_free`. Every fallible call returns a [`PsStatus`]; on
//! failure the message is available from [`ps_last_error_message`] on the same thread.
//! Arbitrary-precision values are returned as decimal strings released with
//! [`ps_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use pstiefel::cohomology::{presentation, CohomologyPresentation, StiefelParams};
use pstiefel::geometry::{
    best_immersion_bound, best_span_bound, immersion_certificate, normal_pontrjagin,
    span_certificate, tangent_pontrjagin, ImmersionCertificate, SpanCertificate,
};
use pstiefel::weights::{complement_chern, h, total_chern};
use pstiefel::{Error, Modulus, TruncatedSeries, WeightTuple};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NotPrimitive = 4,
    NotPrime = 5,
    NotInvertible = 6,
    Mismatch = 7,
    /// A library invariant failed; this is a bug, not bad input.
    Internal = 8,
    Panic = 9,
}

impl From<&Error> for PsStatus {
    fn from(e: &Error) -> Self {
        match e {
            _ if e.is_internal() => PsStatus::Internal,
            Error::NotPrimitive(_) => PsStatus::NotPrimitive,
            Error::NotPrime(_) | Error::EvenPrime(_) | Error::OddPrimeRequired(_) => PsStatus::NotPrime,
            Error::NotInvertible(_) => PsStatus::NotInvertible,
            Error::ModulusMismatch { .. } | Error::TruncationMismatch { .. } => PsStatus::Mismatch,
            _ => PsStatus::InvalidArgument,
        }
    }
}

pub struct PsWeights {
    inner: WeightTuple,
}

pub struct PsSeries {
    inner: TruncatedSeries,
}

pub struct PsPresentation {
    inner: CohomologyPresentation,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PsSpanCertificate {
    pub prime: u64,
    pub index: usize,
    /// Nonzero residue mod `prime`.
    pub witness: u64,
    pub span_bound: usize,
    pub height: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PsImmersionCertificate {
    pub prime: u64,
    pub index: usize,
    pub witness: u64,
    pub certified_non_immersion_dim: usize,
    pub claimed_dim: usize,
    pub height: usize,
}

fn residue_u64(v: &BigInt) -> u64 {
    u64::try_from(v).expect("residue mod a u64 prime fits in u64")
}

impl From<&SpanCertificate> for PsSpanCertificate {
    fn from(c: &SpanCertificate) -> Self {
        PsSpanCertificate {
            prime: c.prime,
            index: c.index,
            witness: residue_u64(c.witness.value()),
            span_bound: c.span_bound,
            height: c.height,
        }
    }
}

impl From<&ImmersionCertificate> for PsImmersionCertificate {
    fn from(c: &ImmersionCertificate) -> Self {
        PsImmersionCertificate {
            prime: c.prime,
            index: c.index,
            witness: residue_u64(c.witness.value()),
            certified_non_immersion_dim: c.certified_non_immersion_dim,
            claimed_dim: c.claimed_dim,
            height: c.height,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Utf8(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            PsStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            PsStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_last_error(format!("invalid UTF-8 in {what}"));
            PsStatus::InvalidUtf8
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            PsStatus::from(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            PsStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs replaced").into_raw()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn modulus_from(m: u64) -> Result<Modulus, Error> {
    if m == 0 {
        Ok(Modulus::integers())
    } else {
        Modulus::new(m)
    }
}

/// Message of the last failed call on this thread, or NULL. Owned by the library and
/// valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ps_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ps_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a primitive weight tuple from `len` integers.
///
/// # Safety
/// `values` must point to `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_weights_new(values: *const i64, len: usize, out: *mut *mut PsWeights) -> PsStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if values.is_null() && len > 0 {
            return Err(Failure::Null("values"));
        }
        let raw = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
        *out = boxed(PsWeights {
            inner: WeightTuple::from_i64(raw)?,
        });
        Ok(())
    })
}

/// Parses a comma-separated list of decimal integers such as `"1,-2"`.
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_weights_parse(csv: *const c_char, out: *mut *mut PsWeights) -> PsStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let text = c_str(csv, "csv")?;
        let raw = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidParams(format!("invalid weight {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        *out = boxed(PsWeights {
            inner: WeightTuple::validate(raw)?,
        });
        Ok(())
    })
}

/// # Safety
/// `w` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_weights_free(w: *mut PsWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_weights_len(w: *const PsWeights) -> usize {
    w.as_ref().map_or(0, |w| w.inner.len())
}

/// `h_r(l)` as a decimal string.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_weights_h(w: *const PsWeights, r: usize, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let w = borrow(w, "weights")?;
        *out_ptr(out, "out")? = into_c_string(h(&w.inner, r).to_string());
        Ok(())
    })
}

/// Series with `len` coefficients padded to `truncation` terms over `Z` (`modulus = 0`) or `Z/modulus`.
///
/// # Safety
/// `coeffs` must point to `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_series_new(
    coeffs: *const i64,
    len: usize,
    truncation: usize,
    modulus: u64,
    out: *mut *mut PsSeries,
) -> PsStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if coeffs.is_null() && len > 0 {
            return Err(Failure::Null("coeffs"));
        }
        let raw = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, len) };
        *out = boxed(PsSeries {
            inner: TruncatedSeries::from_i64(raw, truncation, modulus_from(modulus)?)?,
        });
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_series_free(s: *mut PsSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_series_truncation(s: *const PsSeries) -> usize {
    s.as_ref().map_or(0, |s| s.inner.truncation())
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_series_mul(a: *const PsSeries, b: *const PsSeries, out: *mut *mut PsSeries) -> PsStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        let out = out_ptr(out, "out")?;
        *out = boxed(PsSeries {
            inner: a.inner.mul(&b.inner)?,
        });
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_series_inv(s: *const PsSeries, out: *mut *mut PsSeries) -> PsStatus {
    guard(|| {
        let s = borrow(s, "series")?;
        let out = out_ptr(out, "out")?;
        *out = boxed(PsSeries { inner: s.inner.inv()? });
        Ok(())
    })
}

/// `s^e`; negative `e` inverts first.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_series_pow(s: *const PsSeries, e: i64, out: *mut *mut PsSeries) -> PsStatus {
    guard(|| {
        let s = borrow(s, "series")?;
        let out = out_ptr(out, "out")?;
        *out = boxed(PsSeries { inner: s.inner.pow(e)? });
        Ok(())
    })
}

/// Coefficient of `x^i` as a decimal string.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_series_coeff(s: *const PsSeries, i: usize, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let s = borrow(s, "series")?;
        *out_ptr(out, "out")? = into_c_string(s.inner.coeff(i)?.to_string());
        Ok(())
    })
}

/// Human-readable form such as `1 - 3x + O(x^4)`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_series_to_string(s: *const PsSeries, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let s = borrow(s, "series")?;
        *out_ptr(out, "out")? = into_c_string(s.inner.to_string());
        Ok(())
    })
}

/// Total Chern class of the sum of line bundles with weights `w`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_total_chern(w: *const PsWeights, truncation: usize, out: *mut *mut PsSeries) -> PsStatus {
    guard(|| {
        let w = borrow(w, "weights")?;
        *out_ptr(out, "out")? = boxed(PsSeries {
            inner: total_chern(&w.inner, truncation)?,
        });
        Ok(())
    })
}

/// Total Chern class of a complement: the inverse of [`ps_total_chern`].
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_complement_chern(
    w: *const PsWeights,
    truncation: usize,
    out: *mut *mut PsSeries,
) -> PsStatus {
    guard(|| {
        let w = borrow(w, "weights")?;
        *out_ptr(out, "out")? = boxed(PsSeries {
            inner: complement_chern(&w.inner, truncation)?,
        });
        Ok(())
    })
}

/// Pontrjagin class of the tangent (`normal = false`) or stable normal bundle.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_pontrjagin(
    n: usize,
    w: *const PsWeights,
    modulus: u64,
    truncation: usize,
    normal: bool,
    out: *mut *mut PsSeries,
) -> PsStatus {
    guard(|| {
        let w = borrow(w, "weights")?;
        let out = out_ptr(out, "out")?;
        let m = modulus_from(modulus)?;
        let inner = if normal {
            normal_pontrjagin(n, &w.inner, &m, truncation)?
        } else {
            tangent_pontrjagin(n, &w.inner, &m, truncation)?
        };
        *out = boxed(PsSeries { inner });
        Ok(())
    })
}

/// Mod-`p` cohomology presentation of `P_l W_{n,k}` with `k` the number of weights.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_presentation_new(
    n: usize,
    w: *const PsWeights,
    p: u64,
    out: *mut *mut PsPresentation,
) -> PsStatus {
    guard(|| {
        let w = borrow(w, "weights")?;
        let out = out_ptr(out, "out")?;
        let params = StiefelParams::new(n, w.inner.len(), w.inner.clone())?;
        *out = boxed(PsPresentation {
            inner: presentation(&params, p)?,
        });
        Ok(())
    })
}

/// # Safety
/// `pres` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_presentation_free(pres: *mut PsPresentation) {
    if !pres.is_null() {
        drop(Box::from_raw(pres));
    }
}

/// `N`, the height of `x`; 0 for a NULL handle.
///
/// # Safety
/// `pres` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_presentation_height(pres: *const PsPresentation) -> usize {
    pres.as_ref().map_or(0, |p| p.inner.height)
}

/// Writes up to `cap` exterior generator degrees into `buf` and returns how many exist.
///
/// # Safety
/// `pres` must be a live handle; `buf` must have room for `cap` entries (or be NULL with `cap = 0`).
#[no_mangle]
pub unsafe extern "C" fn ps_presentation_exterior_degrees(
    pres: *const PsPresentation,
    buf: *mut usize,
    cap: usize,
) -> usize {
    let Some(pres) = pres.as_ref() else { return 0 };
    let degrees = pres.inner.exterior_gen_degrees();
    if !buf.is_null() {
        for (i, d) in degrees.iter().take(cap).enumerate() {
            *buf.add(i) = *d;
        }
    }
    degrees.len()
}

/// Text such as `Z/3[x]/(x^3) ⊗ Λ(y_4)`.
///
/// # Safety
/// `pres` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_presentation_to_string(pres: *const PsPresentation, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let pres = borrow(pres, "presentation")?;
        *out_ptr(out, "out")? = into_c_string(pres.inner.to_string());
        Ok(())
    })
}

/// Span certificate at the odd prime `p` (or the best over odd primes `<= prime_bound`
/// when `p = 0`). `*found` is false when no certificate exists.
///
/// # Safety
/// `w` must be a live handle; `out` and `found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_span_certificate(
    n: usize,
    w: *const PsWeights,
    p: u64,
    prime_bound: u64,
    out: *mut PsSpanCertificate,
    found: *mut bool,
) -> PsStatus {
    guard(|| {
        let w = borrow(w, "weights")?;
        let (out, found) = (out_ptr(out, "out")?, out_ptr(found, "found")?);
        let cert = if p == 0 {
            best_span_bound(n, &w.inner, prime_bound)?.best().cloned()
        } else {
            span_certificate(n, &w.inner, p)?
        };
        *found = cert.is_some();
        *out = cert.as_ref().map(Into::into).unwrap_or_default();
        Ok(())
    })
}

/// Immersion certificate, with the same prime conventions as [`ps_span_certificate`].
///
/// # Safety
/// `w` must be a live handle; `out` and `found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_immersion_certificate(
    n: usize,
    w: *const PsWeights,
    p: u64,
    prime_bound: u64,
    out: *mut PsImmersionCertificate,
    found: *mut bool,
) -> PsStatus {
    guard(|| {
        let w = borrow(w, "weights")?;
        let (out, found) = (out_ptr(out, "out")?, out_ptr(found, "found")?);
        let cert = if p == 0 {
            best_immersion_bound(n, &w.inner, prime_bound)?.best().cloned()
        } else {
            immersion_certificate(n, &w.inner, p)?
        };
        *found = cert.is_some();
        *out = cert.as_ref().map(Into::into).unwrap_or_default();
        Ok(())
    })
}

/// Runs the command-line interface on `argc` arguments (without the program name), e.g.
/// `{"span", "--n", "7", "--weights", "1,2", "--prime", "7", "--json"}`. Captured output
/// goes to `*out_stdout` and `*out_stderr`; the process exit code to `*exit_code`.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
    exit_code: *mut i32,
) -> PsStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(Failure::Null("argv"));
        }
        let (so, se, code) = (
            out_ptr(out_stdout, "out_stdout")?,
            out_ptr(out_stderr, "out_stderr")?,
            out_ptr(exit_code, "exit_code")?,
        );
        let mut args = vec!["pstiefel"];
        for i in 0..argc {
            args.push(c_str(*argv.add(i), "argv")?);
        }
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        *code = pstiefel::cli::run(&args, &mut stdout, &mut stderr);
        *so = into_c_string(String::from_utf8_lossy(&stdout).into_owned());
        *se = into_c_string(String::from_utf8_lossy(&stderr).into_owned());
        Ok(())
    })
}
