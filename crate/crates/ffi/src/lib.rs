//! C ABI for the geodesic orbit analysis library.
//!
//! The binding style is opaque handles plus integer status codes. A space
//! is parsed from algebra-file JSON into a `GorbitSpace` handle; analysis
//! functions return JSON report strings that the caller releases with
//! [`gorbit_string_free`]. On any non-zero status the thread-local message
//! from [`gorbit_last_error_message`] describes the failure.
//!
//! The generated header is written to `include/gorbit.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use gorbit::api::{
    analyze_report, audit_with_report, construct_from_value, go_check_with_report,
    nil_go_check_with_report, AuditSuite,
};
use gorbit::error::Error;
use gorbit::files::{parse_algebra_file, to_canonical_json, ParsedSpace};
use gorbit::gocheck::{GOVerdict, SampleConfig};
use gorbit::report::canonical_string;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum GorbitStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    ValidationError = 3,
    InvalidArgument = 4,
    Internal = 5,
}

/// Geodesic orbit verdict codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum GorbitVerdict {
    CertifiedNaturallyReductive = 0,
    SampledGo = 1,
    NotGo = 2,
}

/// Opaque handle to a parsed, validated metric reductive space.
pub struct GorbitSpace {
    inner: ParsedSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> GorbitStatus {
    match err {
        Error::SchemaError { .. } | Error::Io(_) => GorbitStatus::ParseError,
        Error::InvalidArgument(_) => GorbitStatus::InvalidArgument,
        Error::InternalInconsistency(_) => GorbitStatus::Internal,
        _ => GorbitStatus::ValidationError,
    }
}

fn fail(err: &Error) -> c_int {
    set_error(&err.to_string());
    status_of(err) as c_int
}

fn guarded(body: impl FnOnce() -> c_int + std::panic::UnwindSafe) -> c_int {
    match catch_unwind(body) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            GorbitStatus::Internal as c_int
        }
    }
}

fn to_out_string(s: String, out: *mut *mut c_char) -> c_int {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("report contained an interior NUL byte");
            return GorbitStatus::Internal as c_int;
        }
    };
    unsafe { *out = c.into_raw() };
    GorbitStatus::Ok as c_int
}

fn verdict_code(v: &GOVerdict) -> GorbitVerdict {
    match v {
        GOVerdict::CertifiedNaturallyReductive => GorbitVerdict::CertifiedNaturallyReductive,
        GOVerdict::SampledGO { .. } => GorbitVerdict::SampledGo,
        GOVerdict::NotGO { .. } => GorbitVerdict::NotGo,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gorbit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent error on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gorbit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses algebra-file JSON (`data`, `len` bytes) into a space handle.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` to a writable slot.
#[no_mangle]
pub unsafe extern "C" fn gorbit_space_parse(
    data: *const u8,
    len: usize,
    out: *mut *mut GorbitSpace,
) -> c_int {
    if data.is_null() || out.is_null() {
        set_error("null argument");
        return GorbitStatus::NullArgument as c_int;
    }
    let bytes = std::slice::from_raw_parts(data, len);
    guarded(AssertUnwindSafe(|| match parse_algebra_file(bytes) {
        Ok(parsed) => {
            *out = Box::into_raw(Box::new(GorbitSpace { inner: parsed }));
            GorbitStatus::Ok as c_int
        }
        Err(e) => fail(&e),
    }))
}

/// Releases a space handle. A null pointer is a no-op.
///
/// # Safety
/// `space` must come from [`gorbit_space_parse`] and not be used after.
#[no_mangle]
pub unsafe extern "C" fn gorbit_space_free(space: *mut GorbitSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Releases a string returned by any report function.
///
/// # Safety
/// `s` must come from this library and not be used after.
#[no_mangle]
pub unsafe extern "C" fn gorbit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dimension of the underlying algebra, or -1 on a null handle.
///
/// # Safety
/// `space` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gorbit_space_dim(space: *const GorbitSpace) -> c_int {
    match space.as_ref() {
        Some(s) => s.inner.algebra.dim() as c_int,
        None => -1,
    }
}

/// Dimension of the tangent complement, or -1 on a null handle.
///
/// # Safety
/// `space` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gorbit_space_tangent_dim(space: *const GorbitSpace) -> c_int {
    match space.as_ref() {
        Some(s) => s.inner.space.tangent_dim() as c_int,
        None => -1,
    }
}

unsafe fn with_space<'a>(space: *const GorbitSpace) -> Option<&'a ParsedSpace> {
    space.as_ref().map(|s| &s.inner)
}

/// Structural analysis (series, radical, nilradical, spectrum, submodules)
/// as a JSON string.
///
/// # Safety
/// `space` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn gorbit_analyze_json(
    space: *const GorbitSpace,
    out_json: *mut *mut c_char,
) -> c_int {
    let (Some(parsed), false) = (with_space(space), out_json.is_null()) else {
        set_error("null argument");
        return GorbitStatus::NullArgument as c_int;
    };
    guarded(AssertUnwindSafe(|| match analyze_report(parsed) {
        Ok(body) => to_out_string(canonical_string(&body), out_json),
        Err(e) => fail(&e),
    }))
}

/// Geodesic orbit check; writes the verdict code and a JSON report.
///
/// # Safety
/// `space` must be a live handle; `out_verdict` and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn gorbit_go_check_json(
    space: *const GorbitSpace,
    samples: u64,
    seed: u64,
    out_verdict: *mut c_int,
    out_json: *mut *mut c_char,
) -> c_int {
    let (Some(parsed), false, false) =
        (with_space(space), out_verdict.is_null(), out_json.is_null())
    else {
        set_error("null argument");
        return GorbitStatus::NullArgument as c_int;
    };
    let config = SampleConfig {
        sample_count: samples,
        seed,
        ..Default::default()
    };
    guarded(AssertUnwindSafe(|| {
        match go_check_with_report(parsed, &config) {
            Ok((verdict, body)) => {
                *out_verdict = verdict_code(&verdict) as c_int;
                to_out_string(canonical_string(&body), out_json)
            }
            Err(e) => fail(&e),
        }
    }))
}

/// Derivation-based check for two-step nilpotent metric algebras (the
/// handle must carry trivial isotropy).
///
/// # Safety
/// `space` must be a live handle; `out_verdict` and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn gorbit_nil_go_check_json(
    space: *const GorbitSpace,
    samples: u64,
    seed: u64,
    out_verdict: *mut c_int,
    out_json: *mut *mut c_char,
) -> c_int {
    let (Some(parsed), false, false) =
        (with_space(space), out_verdict.is_null(), out_json.is_null())
    else {
        set_error("null argument");
        return GorbitStatus::NullArgument as c_int;
    };
    let config = SampleConfig {
        sample_count: samples,
        seed,
        ..Default::default()
    };
    guarded(AssertUnwindSafe(|| {
        match nil_go_check_with_report(parsed, &config) {
            Ok((verdict, body)) => {
                *out_verdict = verdict_code(&verdict) as c_int;
                to_out_string(canonical_string(&body), out_json)
            }
            Err(e) => fail(&e),
        }
    }))
}

/// Runs one audit suite (`strucrad1`, `strucnilr`, `skew`, `irred1`,
/// `goodlevi`) and returns the JSON report.
///
/// # Safety
/// `space` must be a live handle, `suite` a NUL-terminated string,
/// `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn gorbit_audit_json(
    space: *const GorbitSpace,
    suite: *const c_char,
    samples: u64,
    seed: u64,
    out_json: *mut *mut c_char,
) -> c_int {
    let (Some(parsed), false, false) = (with_space(space), suite.is_null(), out_json.is_null())
    else {
        set_error("null argument");
        return GorbitStatus::NullArgument as c_int;
    };
    let suite = match CStr::from_ptr(suite).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("suite is not valid UTF-8");
            return GorbitStatus::InvalidArgument as c_int;
        }
    };
    let suite = match AuditSuite::from_str(suite) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let config = SampleConfig {
        sample_count: samples,
        seed,
        ..Default::default()
    };
    guarded(AssertUnwindSafe(|| {
        match audit_with_report(parsed, suite, &config) {
            Ok(body) => to_out_string(canonical_string(&body), out_json),
            Err(e) => fail(&e),
        }
    }))
}

/// Builds a named example from a JSON request such as
/// `{"kind": "u2_sphere", "alpha": "2"}` and returns algebra-file JSON
/// that [`gorbit_space_parse`] accepts.
///
/// # Safety
/// `request_json` must be NUL-terminated and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn gorbit_construct_json(
    request_json: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    if request_json.is_null() || out_json.is_null() {
        set_error("null argument");
        return GorbitStatus::NullArgument as c_int;
    }
    let text = match CStr::from_ptr(request_json).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("request is not valid UTF-8");
            return GorbitStatus::InvalidArgument as c_int;
        }
    };
    guarded(AssertUnwindSafe(|| {
        let value: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => {
                set_error(&e.to_string());
                return GorbitStatus::ParseError as c_int;
            }
        };
        match construct_from_value(&value) {
            Ok((_, file)) => to_out_string(to_canonical_json(&file), out_json),
            Err(e) => fail(&e),
        }
    }))
}
