//! C ABI over recforge. Certificates cross the boundary as opaque handles;
//! every call returns an `RfStatus` and leaves a message for
//! `rf_last_error` on failure.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use recforge::assembly::{finite_piece, kriz_iterate, kriz_iterate_in_difference_set};
use recforge::cli::{self, CertificateDocument};
use recforge::eset::ESpec;
use recforge::graphs::{chromatic_number_exact, kneser_graph, Budget};
use recforge::rational::{check_delta, parse_rat, Rat};
use recforge::{Error, Limits};

/// Status codes; the nonzero values up to 5 match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfStatus {
    Ok = 0,
    Invalid = 1,
    Resource = 2,
    Io = 3,
    Parse = 4,
    Check = 5,
    NullArgument = 6,
    Panic = 7,
}

/// Opaque certificate document.
pub struct RfCertificate {
    doc: CertificateDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn from_error(e: &Error) -> RfStatus {
    set_error(e.to_string());
    match e {
        Error::Resource { .. } => RfStatus::Resource,
        Error::Invalid(_) | Error::Precondition(_) => RfStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> RfStatus) -> RfStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        RfStatus::Panic
    })
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, RfStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(RfStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        RfStatus::Invalid
    })
}

fn delta_arg(s: &str) -> Result<Rat, RfStatus> {
    parse_rat(s).and_then(|d| check_delta(&d).map(|_| d)).map_err(|e| from_error(&e))
}

unsafe fn emit(out: *mut *mut RfCertificate, doc: CertificateDocument) -> RfStatus {
    *out = Box::into_raw(Box::new(RfCertificate { doc }));
    RfStatus::Ok
}

/// Message for the last failure on this thread, or null. Valid until the next
/// call on the same thread.
#[no_mangle]
pub extern "C" fn rf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a piece with χ(Cay S) > k whose nonrecurrence witness has density
/// above `delta` (a decimal or "p/q" string).
///
/// # Safety
/// `delta` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_build_piece(k: u32, delta: *const c_char, out: *mut *mut RfCertificate) -> RfStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return RfStatus::NullArgument;
        }
        let text = match str_arg(delta) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let d = match delta_arg(text) {
            Ok(d) => d,
            Err(s) => return s,
        };
        match finite_piece(k as usize, &d, &Limits::from_env()) {
            Ok(cert) => {
                let mut args = BTreeMap::new();
                args.insert("k".into(), k.to_string());
                args.insert("delta".into(), text.to_string());
                emit(out, cli::make_document("build-piece", args, &cert, false).0)
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Runs `rounds` stages; `e_spec` may be null or a set description such as
/// "powers:2". Stopping early on caps returns `RF_STATUS_RESOURCE` and still
/// sets `out` to the deepest certificate reached.
///
/// # Safety
/// `delta` must be a valid C string, `e_spec` null or a valid C string, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_assemble(
    delta: *const c_char,
    rounds: u32,
    e_spec: *const c_char,
    out: *mut *mut RfCertificate,
) -> RfStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return RfStatus::NullArgument;
        }
        let text = match str_arg(delta) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let d = match delta_arg(text) {
            Ok(d) => d,
            Err(s) => return s,
        };
        if rounds == 0 {
            set_error("rounds must be at least 1");
            return RfStatus::Invalid;
        }
        let e = if e_spec.is_null() {
            None
        } else {
            let s = match str_arg(e_spec) {
                Ok(t) => t,
                Err(st) => return st,
            };
            match ESpec::parse(s) {
                Ok(e) => Some((s.to_string(), e)),
                Err(err) => return from_error(&err),
            }
        };
        let limits = Limits::from_env();
        let res = match &e {
            None => kriz_iterate(&d, rounds as usize, &limits),
            Some((_, es)) => kriz_iterate_in_difference_set(&d, rounds as usize, es, &limits),
        };
        match res {
            Ok(r) => {
                let mut args = BTreeMap::new();
                args.insert("delta".into(), text.to_string());
                args.insert("K".into(), rounds.to_string());
                if let Some((s, _)) = &e {
                    args.insert("E".into(), s.clone());
                }
                emit(out, cli::make_document("assemble", args, &r.certificate, false).0);
                match r.stopped {
                    None => RfStatus::Ok,
                    Some(reason) => {
                        set_error(reason);
                        RfStatus::Resource
                    }
                }
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Parses a document.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_certificate_from_json(json: *const c_char, out: *mut *mut RfCertificate) -> RfStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return RfStatus::NullArgument;
        }
        let text = match str_arg(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match CertificateDocument::from_json(text) {
            Ok(doc) => emit(out, doc),
            Err(e) => {
                set_error(e.to_string());
                RfStatus::Parse
            }
        }
    })
}

/// Serializes a document; free the result with `rf_string_free`.
///
/// # Safety
/// `cert` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_certificate_to_json(cert: *const RfCertificate, out: *mut *mut c_char) -> RfStatus {
    guard(|| {
        if cert.is_null() || out.is_null() {
            set_error("null argument");
            return RfStatus::NullArgument;
        }
        match CString::new((*cert).doc.to_json()) {
            Ok(s) => {
                *out = s.into_raw();
                RfStatus::Ok
            }
            Err(_) => {
                set_error("document contains a NUL byte");
                RfStatus::Invalid
            }
        }
    })
}

/// Re-runs every check from the raw sets. On `RF_STATUS_CHECK` the failing
/// check is named by `rf_last_error`.
///
/// # Safety
/// `cert` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn rf_certificate_verify(cert: *const RfCertificate) -> RfStatus {
    guard(|| {
        if cert.is_null() {
            set_error("null argument");
            return RfStatus::NullArgument;
        }
        match cli::verify_document(&(*cert).doc, false) {
            Ok(_) => RfStatus::Ok,
            Err((code, msg)) => {
                set_error(msg);
                if code == cli::EXIT_PARSE {
                    RfStatus::Parse
                } else {
                    RfStatus::Check
                }
            }
        }
    })
}

/// Number of elements of S, or 0 for a null handle.
///
/// # Safety
/// `cert` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn rf_certificate_set_len(cert: *const RfCertificate) -> usize {
    if cert.is_null() {
        return 0;
    }
    (*cert).doc.certificate.s.len()
}

/// Element `i` of S as a decimal string; free with `rf_string_free`.
///
/// # Safety
/// `cert` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_certificate_set_element(cert: *const RfCertificate, i: usize, out: *mut *mut c_char) -> RfStatus {
    guard(|| {
        if cert.is_null() || out.is_null() {
            set_error("null argument");
            return RfStatus::NullArgument;
        }
        let cert = &*cert;
        match cert.doc.certificate.s.get(i) {
            Some(x) => {
                *out = CString::new(x.as_str()).unwrap().into_raw();
                RfStatus::Ok
            }
            None => {
                set_error(format!("index {i} out of range"));
                RfStatus::Invalid
            }
        }
    })
}

/// Exact χ(KG(n, r)) within `budget` search nodes.
///
/// # Safety
/// `chi` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_kneser_chromatic(n: u32, r: u32, budget: u64, chi: *mut u32) -> RfStatus {
    guard(|| {
        if chi.is_null() {
            set_error("null output pointer");
            return RfStatus::NullArgument;
        }
        let g = match kneser_graph(n, r, &Limits::from_env()) {
            Ok(g) => g,
            Err(e) => return from_error(&e),
        };
        let res = chromatic_number_exact(&g, &mut Budget::new(budget));
        match res.chi() {
            Some(c) => {
                *chi = c as u32;
                RfStatus::Ok
            }
            None => {
                set_error(format!("budget exhausted: {} <= chi <= {}", res.lower, res.upper));
                RfStatus::Resource
            }
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `cert` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rf_certificate_free(cert: *mut RfCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
