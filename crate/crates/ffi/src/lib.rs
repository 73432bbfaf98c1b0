//! C ABI over the cbgrass toolkit.
//!
//! Configurations and certificates are opaque handles created from JSON and
//! released with the matching `_free` function. Every call returns a
//! [`CbgStatus`]; on failure [`cbg_last_error_message`] describes the cause.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`cbg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cbgrass::special_position::{decompose, Configuration, SpCertificate, SpTester, SpTesterChoice};
use cbgrass::wire;
use cbgrass::Error;

/// Status codes; the nonzero values match the CLI exit codes where they
/// overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbgStatus {
    Ok = 0,
    InvalidInput = 2,
    BudgetExceeded = 3,
    NullPointer = 4,
    MalformedCertificate = 5,
    NotSpInput = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbgTester {
    Auto = 0,
    BruteForce = 1,
    TupleExhaustive = 2,
    TupleRandomized = 3,
}

/// Opaque configuration handle.
pub struct CbgConfiguration(Configuration);

/// Opaque certificate handle; keeps the configuration it certifies.
pub struct CbgCertificate {
    configuration: Configuration,
    certificate: SpCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CbgStatus {
    match e {
        Error::BudgetExceeded { .. } | Error::BellBudgetExceeded { .. } => CbgStatus::BudgetExceeded,
        Error::MalformedCertificate(_) => CbgStatus::MalformedCertificate,
        Error::NotSpInput => CbgStatus::NotSpInput,
        _ => CbgStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (CbgStatus, String)>) -> CbgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CbgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CbgStatus::Internal
        }
    }
}

fn lib(e: Error) -> (CbgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (CbgStatus, String) {
    (CbgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_json(s: *const c_char) -> Result<serde_json::Value, (CbgStatus, String)> {
    if s.is_null() {
        return Err(null("input string"));
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (CbgStatus::InvalidInput, "input is not UTF-8".to_string()))?;
    serde_json::from_str(text).map_err(|e| (CbgStatus::InvalidInput, format!("input is not JSON: {e}")))
}

unsafe fn write_string(out: *mut *mut c_char, v: &serde_json::Value) -> Result<(), (CbgStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let s = CString::new(wire::to_pretty(v)).map_err(|_| (CbgStatus::Internal, "nul in output".to_string()))?;
    *out = s.into_raw();
    Ok(())
}

fn tester(choice: CbgTester, seed: u64, trials: u64, budget: u64) -> SpTester {
    let choice = match choice {
        CbgTester::Auto => SpTesterChoice::Auto { seed, trials },
        CbgTester::BruteForce => SpTesterChoice::BruteForce,
        CbgTester::TupleExhaustive => SpTesterChoice::TupleExhaustive,
        CbgTester::TupleRandomized => SpTesterChoice::TupleRandomized { seed, trials },
    };
    SpTester::new(choice, budget as u128)
}

/// Message of the last failed call on this thread ("" after a success).
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cbg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cbg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a configuration document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_configuration_from_json(json: *const c_char, out: *mut *mut CbgConfiguration) -> CbgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let v = read_json(json)?;
        let c = wire::configuration_from_json(&v).map_err(lib)?;
        *out = Box::into_raw(Box::new(CbgConfiguration(c)));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from [`cbg_configuration_from_json`].
#[no_mangle]
pub unsafe extern "C" fn cbg_configuration_free(c: *mut CbgConfiguration) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Ambient dimension n, plane size k and number of planes d.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cbg_configuration_shape(
    c: *const CbgConfiguration,
    n: *mut usize,
    k: *mut usize,
    d: *mut usize,
) -> CbgStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("configuration"))?;
        if n.is_null() || k.is_null() || d.is_null() {
            return Err(null("output pointer"));
        }
        *n = c.0.n();
        *k = c.0.k();
        *d = c.0.d();
        Ok(())
    })
}

/// Decides SP(n-k) and returns a certificate handle.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_check_sp(
    c: *const CbgConfiguration,
    choice: CbgTester,
    seed: u64,
    trials: u64,
    budget: u64,
    out: *mut *mut CbgCertificate,
) -> CbgStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("configuration"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let certificate = tester(choice, seed, trials, budget).check(&c.0).map_err(lib)?;
        *out = Box::into_raw(Box::new(CbgCertificate { configuration: c.0.clone(), certificate }));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from [`cbg_check_sp`].
#[no_mangle]
pub unsafe extern "C" fn cbg_certificate_free(c: *mut CbgCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Writes whether the certificate says SP holds, and whether the verdict is
/// exact (not a randomized pass).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cbg_certificate_verdict(
    c: *const CbgCertificate,
    holds: *mut bool,
    exact: *mut bool,
) -> CbgStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("certificate"))?;
        if holds.is_null() || exact.is_null() {
            return Err(null("output pointer"));
        }
        *holds = c.certificate.is_sp();
        *exact = c.certificate.is_exact();
        Ok(())
    })
}

/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_certificate_to_json(c: *const CbgCertificate, out: *mut *mut c_char) -> CbgStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("certificate"))?;
        write_string(out, &wire::certificate_to_json(&c.configuration, &c.certificate))
    })
}

/// Minimal partition into indecomposable SP blocks, as JSON.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_decompose_json(
    c: *const CbgConfiguration,
    choice: CbgTester,
    seed: u64,
    trials: u64,
    budget: u64,
    out: *mut *mut c_char,
) -> CbgStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("configuration"))?;
        let r = decompose(&c.0, tester(choice, seed, trials, budget)).map_err(lib)?;
        write_string(out, &wire::partition_report_to_json(&c.0, &r))
    })
}

/// Replays a JSON artifact (certificate, partition report, sharpness result
/// or survey replay) and writes whether it is valid.
///
/// # Safety
/// `json` must be a nul-terminated string and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_verify_json(json: *const c_char, budget: u64, valid: *mut bool) -> CbgStatus {
    guard(|| {
        if valid.is_null() {
            return Err(null("output pointer"));
        }
        let v = read_json(json)?;
        *valid = wire::verify_json(&v, budget as u128).map_err(lib)?.valid;
        Ok(())
    })
}

