//! C ABI over the verification engine.
//!
//! Instances and reports are opaque handles owned by the caller and released
//! with the matching `_free` function. Every call returns a [`ParasolStatus`];
//! on failure a message is available from [`parasol_last_error`] on the same
//! thread. Strings returned through out-parameters are released with
//! [`parasol_string_free`].

use parasol_core::golden::{golden_instance, paper_check};
use parasol_core::manifest::Instance;
use parasol_core::pipeline::{analysis_report, analyze, validate};
use parasol_core::report::Report;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result codes. The first three match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParasolStatus {
    Ok = 0,
    /// The report was produced but at least one check failed.
    CheckFailed = 1,
    /// The manifest could not be parsed or is inconsistent.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// An internal error; the message describes it.
    Panic = 5,
}

/// A validated instance.
pub struct ParasolInstance(Instance);

/// A finished report.
pub struct ParasolReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guarded(f: impl FnOnce() -> Result<ParasolStatus, (ParasolStatus, String)>) -> ParasolStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            ParasolStatus::Panic
        }
    }
}

fn null() -> (ParasolStatus, String) {
    (ParasolStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (ParasolStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (ParasolStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (ParasolStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_report(out: *mut *mut ParasolReport, report: Report) -> Result<ParasolStatus, (ParasolStatus, String)> {
    put(out, ParasolReport(report))?;
    Ok(ParasolStatus::Ok)
}

unsafe fn instance<'a>(p: *const ParasolInstance) -> Result<&'a Instance, (ParasolStatus, String)> {
    p.as_ref().map(|i| &i.0).ok_or_else(null)
}

unsafe fn report<'a>(p: *const ParasolReport) -> Result<&'a Report, (ParasolStatus, String)> {
    p.as_ref().map(|r| &r.0).ok_or_else(null)
}

/// Parses a JSON manifest into an instance.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parasol_instance_from_json(
    json: *const c_char,
    out: *mut *mut ParasolInstance,
) -> ParasolStatus {
    guarded(|| {
        let text = read_str(json)?;
        let inst = Instance::from_json(text).map_err(|e| (ParasolStatus::InputError, e.to_string()))?;
        put(out, ParasolInstance(inst))?;
        Ok(ParasolStatus::Ok)
    })
}

/// The built-in reference instance, including its potential.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parasol_instance_golden(out: *mut *mut ParasolInstance) -> ParasolStatus {
    guarded(|| {
        put(out, ParasolInstance(golden_instance()))?;
        Ok(ParasolStatus::Ok)
    })
}

/// # Safety
/// `inst` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn parasol_instance_free(inst: *mut ParasolInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Lie algebra and structure axiom checks only.
///
/// # Safety
/// `inst` must be a live instance and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parasol_validate(
    inst: *const ParasolInstance,
    out: *mut *mut ParasolReport,
) -> ParasolStatus {
    guarded(|| put_report(out, validate(instance(inst)?)))
}

/// The full pipeline with a seeded sectional-curvature sweep.
///
/// # Safety
/// `inst` must be a live instance and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parasol_analyze(
    inst: *const ParasolInstance,
    seed: u64,
    out: *mut *mut ParasolReport,
) -> ParasolStatus {
    guarded(|| put_report(out, analysis_report(&analyze(instance(inst)?, seed), "analyze")))
}

/// The reference instance against its table of exact values.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parasol_paper_check(seed: u64, out: *mut *mut ParasolReport) -> ParasolStatus {
    guarded(|| put_report(out, paper_check(seed)))
}

/// `Ok` when every check and reference value passed, `CheckFailed`
/// otherwise.
///
/// # Safety
/// `r` must be a live report.
#[no_mangle]
pub unsafe extern "C" fn parasol_report_status(r: *const ParasolReport) -> ParasolStatus {
    guarded(|| {
        Ok(if report(r)?.passed() {
            ParasolStatus::Ok
        } else {
            ParasolStatus::CheckFailed
        })
    })
}

unsafe fn render(
    r: *const ParasolReport,
    out: *mut *mut c_char,
    f: impl FnOnce(&Report) -> String,
) -> ParasolStatus {
    guarded(|| {
        let text = f(report(r)?);
        if out.is_null() {
            return Err(null());
        }
        let c = CString::new(text).map_err(|e| (ParasolStatus::Panic, e.to_string()))?;
        *out = c.into_raw();
        Ok(ParasolStatus::Ok)
    })
}

/// Deterministic JSON rendering.
///
/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parasol_report_to_json(r: *const ParasolReport, out: *mut *mut c_char) -> ParasolStatus {
    render(r, out, Report::to_json)
}

/// Human-readable rendering.
///
/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parasol_report_to_text(r: *const ParasolReport, out: *mut *mut c_char) -> ParasolStatus {
    render(r, out, Report::to_text)
}

/// # Safety
/// `r` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn parasol_report_free(r: *mut ParasolReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be a string returned by this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn parasol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn parasol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
