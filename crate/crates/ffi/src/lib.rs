//! C interface to `transit-core`.
//!
//! Objects are opaque handles created by `*_parse` or derived by other calls
//! and released with the matching `*_free`. Every fallible call returns a
//! [`TransitStatus`]; on failure [`transit_last_error`] describes the cause
//! until the next call on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with
//! [`transit_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use transit_core::enumerate::Property;
use transit_core::io::{emit_system, emit_transit, parse_document, parse_json_document, Body, Document, Metadata};
use transit_core::report::check_report;
use transit_core::{
    canonical_transit_function, check, find_compatible_order, transit_sets, union_closure, Error, SetSystem,
    TransitFunction,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed document.
    Parse = 3,
    /// Well-formed input that violates a structural requirement.
    Invalid = 4,
    UnknownTag = 5,
    /// Ground set too large.
    Capacity = 6,
    /// The operation needs a T-system.
    NotTSystem = 7,
    /// The document holds the other kind of object.
    WrongKind = 8,
    Panic = 9,
}

/// Opaque set system.
pub struct TransitSetSystem(SetSystem);

/// Opaque transit function.
pub struct TransitFunctionHandle(TransitFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TransitStatus {
    match e {
        Error::Parse { .. } | Error::Io { .. } => TransitStatus::Parse,
        Error::UnknownTag(_) => TransitStatus::UnknownTag,
        Error::Capacity { .. } | Error::TooLargeForBruteForce { .. } | Error::EnumerationRange { .. } => {
            TransitStatus::Capacity
        }
        Error::NotTSystem(_) | Error::UncoveredPair { .. } | Error::NoUniqueMinimum { .. } => {
            TransitStatus::NotTSystem
        }
        _ => TransitStatus::Invalid,
    }
}

struct Failure(TransitStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TransitStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TransitStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            TransitStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TransitStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(TransitStatus::InvalidUtf8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(TransitStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(TransitStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Documents starting with `{` are JSON, anything else the text grammar.
fn document(s: &str) -> Result<Document, Error> {
    if s.trim_start().starts_with('{') {
        parse_json_document(s)
    } else {
        parse_document(s)
    }
}

fn wrong_kind(expected: &str) -> Failure {
    Failure(TransitStatus::WrongKind, format!("document is not a {expected}"))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call.
#[no_mangle]
pub extern "C" fn transit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn transit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn transit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a set-system document (text or JSON).
///
/// # Safety
/// `source` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_parse(source: *const c_char, out: *mut *mut TransitSetSystem) -> TransitStatus {
    guard(|| match document(text(source)?)?.body {
        Body::System(s) => put(out, Box::into_raw(Box::new(TransitSetSystem(s)))),
        Body::Transit(_) => Err(wrong_kind("set system")),
    })
}

/// # Safety
/// `s` comes from this library and is not used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn transit_system_free(s: *mut TransitSetSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Parses a transit-function document (text or JSON).
///
/// # Safety
/// `source` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_function_parse(
    source: *const c_char,
    out: *mut *mut TransitFunctionHandle,
) -> TransitStatus {
    guard(|| match document(text(source)?)?.body {
        Body::Transit(r) => put(out, Box::into_raw(Box::new(TransitFunctionHandle(r)))),
        Body::System(_) => Err(wrong_kind("transit function")),
    })
}

/// # Safety
/// `r` comes from this library and is not used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn transit_function_free(r: *mut TransitFunctionHandle) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of elements of the ground set.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_elements(s: *const TransitSetSystem, out: *mut usize) -> TransitStatus {
    guard(|| put(out, deref(s)?.0.n()))
}

/// Number of clusters.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_clusters(s: *const TransitSetSystem, out: *mut usize) -> TransitStatus {
    guard(|| put(out, deref(s)?.0.len()))
}

/// Evaluates a predicate (`K2`, `weakHierarchy`, ...) or class (`py`,
/// `pyramidal`, `weaklyPyramidal`) on a set system.
///
/// # Safety
/// `s` is a live handle, `tag` a NUL-terminated string, `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_check(
    s: *const TransitSetSystem,
    tag: *const c_char,
    holds: *mut bool,
) -> TransitStatus {
    guard(|| {
        let s = &deref(s)?.0;
        let p = Property::parse(text(tag)?)?;
        if matches!(p, Property::Axiom(_)) {
            return Err(Failure(
                TransitStatus::UnknownTag,
                "transit axioms apply to transit functions".into(),
            ));
        }
        put(holds, p.evaluate(None, s).holds)
    })
}

/// Evaluates a transit axiom (`m`, `w`, `x'`, ...), or a predicate or class
/// of its transit sets.
///
/// # Safety
/// `r` is a live handle, `tag` a NUL-terminated string, `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn transit_function_check(
    r: *const TransitFunctionHandle,
    tag: *const c_char,
    holds: *mut bool,
) -> TransitStatus {
    guard(|| {
        let r = &deref(r)?.0;
        let v = match Property::parse(text(tag)?)? {
            Property::Axiom(a) => check(r, a),
            other => other.evaluate(Some(r), &transit_sets(r)),
        };
        put(holds, v.holds)
    })
}

/// Canonical transit function of a T-system.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_canonical(
    s: *const TransitSetSystem,
    out: *mut *mut TransitFunctionHandle,
) -> TransitStatus {
    guard(|| {
        let r = canonical_transit_function(&deref(s)?.0)?;
        put(out, Box::into_raw(Box::new(TransitFunctionHandle(r))))
    })
}

/// Family of transit sets.
///
/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_function_sets(
    r: *const TransitFunctionHandle,
    out: *mut *mut TransitSetSystem,
) -> TransitStatus {
    guard(|| {
        let s = transit_sets(&deref(r)?.0);
        put(out, Box::into_raw(Box::new(TransitSetSystem(s))))
    })
}

/// Union closure, singletons included.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_union_closure(
    s: *const TransitSetSystem,
    out: *mut *mut TransitSetSystem,
) -> TransitStatus {
    guard(|| {
        let c = union_closure(&deref(s)?.0);
        put(out, Box::into_raw(Box::new(TransitSetSystem(c))))
    })
}

/// Compatible order as space-separated labels, or null in `order` when none
/// exists.
///
/// # Safety
/// `s` is a live handle; `order` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_order(s: *const TransitSetSystem, order: *mut *mut c_char) -> TransitStatus {
    guard(|| {
        let s = &deref(s)?.0;
        let found = find_compatible_order(s).order.map(|o| {
            let labels: Vec<&str> = o.sequence().iter().map(|&e| s.ground().label(e)).collect();
            into_c(labels.join(" "))
        });
        put(order, found.unwrap_or(ptr::null_mut()))
    })
}

/// Text document of a set system.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_system_emit(s: *const TransitSetSystem, out: *mut *mut c_char) -> TransitStatus {
    guard(|| put(out, into_c(emit_system(&deref(s)?.0, &Metadata::default()))))
}

/// Text document of a transit function.
///
/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_function_emit(
    r: *const TransitFunctionHandle,
    out: *mut *mut c_char,
) -> TransitStatus {
    guard(|| put(out, into_c(emit_transit(&deref(r)?.0, &Metadata::default()))))
}

/// Full JSON check report of a document (text or JSON), as printed by
/// `transit --format json check`.
///
/// # Safety
/// `source` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn transit_report_json(source: *const c_char, out: *mut *mut c_char) -> TransitStatus {
    guard(|| {
        let report = check_report(&document(text(source)?)?, &[])?;
        let json = serde_json::to_string_pretty(&report).map_err(|e| Failure(TransitStatus::Panic, e.to_string()))?;
        put(out, into_c(json))
    })
}
