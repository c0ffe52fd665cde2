//! C interface to `calabi-core`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call
//! returns a [`CalabiStatus`]; on failure a message is available from
//! [`calabi_last_error`] until the next call on the same thread. Strings
//! returned through `char **` are released with [`calabi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use calabi_core::cert::{check_certificate, render, series_source, verdict_certificate};
use calabi_core::models::{get_model, ModelSpec};
use calabi_core::resolvability::{resolvability, Verdict};
use calabi_core::scalar::{format_rational, parse_rational, Rational};
use calabi_core::series::text::{parse_bi, write_bi};
use calabi_core::{BiSeries, Error};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CalabiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRange = 4,
    Domain = 5,
    InvalidParameter = 6,
    Internal = 7,
}

/// Verdict kinds reported by [`calabi_verdict_kind`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CalabiVerdictKind {
    ResolvableUpTo = 0,
    CertifiedNotResolvable = 1,
    CertifiedResolvable = 2,
}

/// Truncated real-analytic series in `z, z̄`.
pub struct CalabiSeries {
    inner: BiSeries,
}

/// Resolvability verdict together with the inputs that produced it.
pub struct CalabiVerdict {
    verdict: Verdict,
    series: BiSeries,
    b: Rational,
    degree: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CalabiStatus {
    match e {
        Error::Parse(_) => CalabiStatus::Parse,
        Error::OutOfRange { .. } => CalabiStatus::OutOfRange,
        Error::Domain(_) | Error::NotADiastasis { .. } | Error::NotResolvable { .. } | Error::Gauge(_) => {
            CalabiStatus::Domain
        }
        Error::Io(_) | Error::Divergence { .. } => CalabiStatus::Internal,
        _ => CalabiStatus::InvalidParameter,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (CalabiStatus, String)>) -> CalabiStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CalabiStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            CalabiStatus::Internal
        }
    }
}

fn core(e: Error) -> (CalabiStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CalabiStatus, String)> {
    if p.is_null() {
        return Err((CalabiStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (CalabiStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (CalabiStatus, String)> {
    if out.is_null() {
        return Err((CalabiStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CalabiStatus, String)> {
    if out.is_null() {
        return Err((CalabiStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| (CalabiStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (CalabiStatus, String)> {
    p.as_ref().ok_or((CalabiStatus::NullPointer, format!("{what} is null")))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn calabi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn calabi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a series in the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn calabi_series_parse(text: *const c_char, out: *mut *mut CalabiSeries) -> CalabiStatus {
    guard(|| {
        let t = read_str(text, "text")?;
        let inner = parse_bi(t).map_err(core)?;
        write_out(out, CalabiSeries { inner })
    })
}

/// Builds a catalog model. `params` is `key=value` pairs separated by
/// `;`, or null.
///
/// # Safety
/// String arguments must be null-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn calabi_model_build(
    name: *const c_char,
    params: *const c_char,
    degree: u32,
    out: *mut *mut CalabiSeries,
) -> CalabiStatus {
    guard(|| {
        let mut spec = ModelSpec::new(read_str(name, "name")?);
        if !params.is_null() {
            for kv in read_str(params, "params")?.split(';').filter(|s| !s.trim().is_empty()) {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or((CalabiStatus::Parse, format!("expected key=value, got {kv:?}")))?;
                spec.parameters.insert(k.trim().into(), v.trim().into());
            }
        }
        let inner = get_model(&spec, degree).map_err(core)?;
        write_out(out, CalabiSeries { inner })
    })
}

/// # Safety
/// `s` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn calabi_series_free(s: *mut CalabiSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn calabi_series_arity(s: *const CalabiSeries) -> u32 {
    s.as_ref().map_or(0, |s| s.inner.arity() as u32)
}

/// Truncation degree, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn calabi_series_degree(s: *const CalabiSeries) -> u32 {
    s.as_ref().map_or(0, |s| s.inner.degree())
}

/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn calabi_series_to_text(s: *const CalabiSeries, out: *mut *mut c_char) -> CalabiStatus {
    guard(|| {
        let s = handle(s, "series")?;
        write_string(out, write_bi(&s.inner))
    })
}

/// b-resolvability of `s` through `degree`; `b` is a `p/q` string.
///
/// # Safety
/// `s` must be a live handle, `b` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn calabi_analyze(
    s: *const CalabiSeries,
    b: *const c_char,
    degree: u32,
    out: *mut *mut CalabiVerdict,
) -> CalabiStatus {
    guard(|| {
        let s = handle(s, "series")?;
        let b = parse_rational(read_str(b, "b")?).map_err(core)?;
        let verdict = resolvability(&s.inner, &b, degree).map_err(core)?;
        write_out(
            out,
            CalabiVerdict {
                verdict,
                series: s.inner.clone(),
                b,
                degree,
            },
        )
    })
}

/// # Safety
/// `v` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn calabi_verdict_free(v: *mut CalabiVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn calabi_verdict_kind(v: *const CalabiVerdict, out: *mut CalabiVerdictKind) -> CalabiStatus {
    guard(|| {
        let v = handle(v, "verdict")?;
        if out.is_null() {
            return Err((CalabiStatus::NullPointer, "output pointer is null".into()));
        }
        *out = match v.verdict {
            Verdict::ResolvableUpTo { .. } => CalabiVerdictKind::ResolvableUpTo,
            Verdict::CertifiedNotResolvable { .. } => CalabiVerdictKind::CertifiedNotResolvable,
            Verdict::CertifiedResolvable { .. } => CalabiVerdictKind::CertifiedResolvable,
        };
        Ok(())
    })
}

/// Degree at which the verdict was reached: the truncation for a
/// resolvable verdict, the witness degree otherwise.
///
/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn calabi_verdict_degree(v: *const CalabiVerdict, out: *mut u32) -> CalabiStatus {
    guard(|| {
        let v = handle(v, "verdict")?;
        if out.is_null() {
            return Err((CalabiStatus::NullPointer, "output pointer is null".into()));
        }
        *out = match &v.verdict {
            Verdict::ResolvableUpTo { degree, .. } | Verdict::CertifiedNotResolvable { degree, .. } => *degree,
            Verdict::CertifiedResolvable { .. } => v.degree,
        };
        Ok(())
    })
}

/// Rank of a resolvable verdict; `-1` when unknown or not resolvable.
///
/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn calabi_verdict_rank(v: *const CalabiVerdict) -> i64 {
    v.as_ref().and_then(|v| v.verdict.rank()).map_or(-1, |r| r as i64)
}

/// Witness value `w* A w` as `p/q`.
///
/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn calabi_verdict_witness_value(v: *const CalabiVerdict, out: *mut *mut c_char) -> CalabiStatus {
    guard(|| {
        let v = handle(v, "verdict")?;
        let w = v
            .verdict
            .witness()
            .ok_or((CalabiStatus::Domain, "verdict has no witness".into()))?;
        write_string(out, format_rational(w.value()))
    })
}

/// Full JSON certificate, with the series embedded.
///
/// # Safety
/// `v` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn calabi_verdict_json(v: *const CalabiVerdict, out: *mut *mut c_char) -> CalabiStatus {
    guard(|| {
        let v = handle(v, "verdict")?;
        let doc = verdict_certificate(&series_source(&v.series), &v.b, v.degree, &v.verdict).map_err(core)?;
        write_string(out, render(&doc))
    })
}

/// Re-validates a JSON certificate. `valid` receives 1 or 0.
///
/// # Safety
/// `json` must be NUL-terminated and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn calabi_check_certificate(json: *const c_char, valid: *mut c_int) -> CalabiStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        if valid.is_null() {
            return Err((CalabiStatus::NullPointer, "output pointer is null".into()));
        }
        let doc: serde_json::Value =
            serde_json::from_str(text).map_err(|e| (CalabiStatus::Parse, format!("line {}: {e}", e.line())))?;
        let r = check_certificate(&doc).map_err(core)?;
        *valid = r.valid as c_int;
        Ok(())
    })
}
