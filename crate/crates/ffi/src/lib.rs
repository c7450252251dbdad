//! C ABI over the `stieltjes` crate.
//!
//! Every function returns an [`StjStatus`]; results go through out-pointers.
//! On a non-zero status, [`stj_last_error`] describes the failure on the
//! calling thread. Verification results live behind the opaque
//! [`StjReport`] handle, released with [`stj_report_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stieltjes::stieltjes::{gamma_k, Method};
use stieltjes::verify::{run_suite, IdentityId, Profile, VerificationReport};
use stieltjes::zetacore::{hasse1_zeta, hasse2_zeta, hasse_constant, riemann_zeta_real, HasseConstant, DEFAULT_TERMS};
use stieltjes::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StjStatus {
    Ok = 0,
    Domain = 1,
    Pole = 2,
    Convergence = 3,
    Unsupported = 4,
    NullPointer = 5,
    InvalidArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StjMethod {
    Oracle = 0,
    Integral = 1,
    Dilcher = 2,
    Hasse = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StjZetaRoute {
    EulerMaclaurin = 0,
    Hasse1 = 1,
    Hasse2 = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StjConstant {
    Gamma = 0,
    Gamma1 = 1,
    Eta1 = 2,
    LnPi = 3,
    /// `B_{2n}`; pass `n` alongside.
    BernoulliEven = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StjProfile {
    Fast = 0,
    Deep = 1,
}

/// A value with its absolute error estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StjValue {
    pub value: f64,
    pub err: f64,
}

/// One check of a report. `identity_id` is NUL-terminated.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StjCheck {
    pub identity_id: [c_char; 8],
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub terms_or_panels: u64,
    pub elapsed_ms: u64,
}

/// Opaque set of verification results.
pub struct StjReport {
    checks: Vec<VerificationReport>,
}

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

fn status_of(e: &Error) -> StjStatus {
    match e {
        Error::Domain(_) => StjStatus::Domain,
        Error::Pole(_) => StjStatus::Pole,
        Error::Convergence { .. } => StjStatus::Convergence,
        Error::Unsupported(_) => StjStatus::Unsupported,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (StjStatus, String)>) -> StjStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StjStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            StjStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (StjStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (StjStatus, String) {
    (StjStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn stj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stj_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// `gamma_k(a)` by `method`; the Hasse route needs `a = 1`.
///
/// # Safety
/// `out` must be null or valid for a write of [`StjValue`].
#[no_mangle]
pub unsafe extern "C" fn stj_gamma(k: u32, a: f64, method: StjMethod, tol: f64, out: *mut StjValue) -> StjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = match method {
            StjMethod::Oracle => Method::Oracle,
            StjMethod::Integral => Method::Integral,
            StjMethod::Dilcher => Method::Dilcher,
            StjMethod::Hasse => Method::Hasse,
        };
        let v = gamma_k(k as usize, a, m, tol).map_err(lib_err)?;
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe {
            out.write(StjValue {
                value: v.value,
                err: v.err,
            })
        };
        Ok(())
    })
}

/// `zeta(s)` by `route`.
///
/// # Safety
/// `out` must be null or valid for a write of [`StjValue`].
#[no_mangle]
pub unsafe extern "C" fn stj_zeta(s: f64, route: StjZetaRoute, tol: f64, out: *mut StjValue) -> StjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = match route {
            StjZetaRoute::EulerMaclaurin => riemann_zeta_real(s, tol),
            StjZetaRoute::Hasse1 => hasse1_zeta(s, DEFAULT_TERMS, tol),
            StjZetaRoute::Hasse2 => hasse2_zeta(s, 1 << 20, tol),
        }
        .map_err(lib_err)?;
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe {
            out.write(StjValue {
                value: v.value,
                err: v.err,
            })
        };
        Ok(())
    })
}

/// A constant from `terms` outer Hasse terms; `n` selects `B_{2n}` and is
/// ignored otherwise.
///
/// # Safety
/// `out` must be null or valid for a write of [`StjValue`].
#[no_mangle]
pub unsafe extern "C" fn stj_hasse_constant(name: StjConstant, n: u32, terms: u32, out: *mut StjValue) -> StjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = match name {
            StjConstant::Gamma => HasseConstant::Gamma,
            StjConstant::Gamma1 => HasseConstant::Gamma1,
            StjConstant::Eta1 => HasseConstant::Eta1,
            StjConstant::LnPi => HasseConstant::LnPi,
            StjConstant::BernoulliEven => HasseConstant::BernoulliEven(n as usize),
        };
        let v = hasse_constant(c, terms as usize).map_err(lib_err)?;
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe {
            out.write(StjValue {
                value: v.value,
                err: v.err,
            })
        };
        Ok(())
    })
}

/// Run the default checks of the comma-separated `ids` (or `"all"`).
///
/// # Safety
/// `ids` must be a valid NUL-terminated string; `out` must be valid for a
/// write of a pointer. On success `*out` owns a report to be released with
/// [`stj_report_free`].
#[no_mangle]
pub unsafe extern "C" fn stj_verify(ids: *const c_char, profile: StjProfile, out: *mut *mut StjReport) -> StjStatus {
    guard(|| {
        if ids.is_null() {
            return Err(null("ids"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: checked non-null; the caller guarantees NUL termination.
        let ids = unsafe { CStr::from_ptr(ids) }
            .to_str()
            .map_err(|_| (StjStatus::InvalidArgument, "ids is not UTF-8".to_string()))?;
        let ids = IdentityId::parse_list(ids).map_err(|e| (StjStatus::InvalidArgument, e.to_string()))?;
        let profile = match profile {
            StjProfile::Fast => Profile::Fast,
            StjProfile::Deep => Profile::Deep,
        };
        let report = Box::new(StjReport {
            checks: run_suite(&ids, profile),
        });
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe { out.write(Box::into_raw(report)) };
        Ok(())
    })
}

/// Number of checks in `report`; 0 for null.
///
/// # Safety
/// `report` must be null or a live handle from [`stj_verify`].
#[no_mangle]
pub unsafe extern "C" fn stj_report_len(report: *const StjReport) -> usize {
    // SAFETY: the caller guarantees the handle is live.
    unsafe { report.as_ref() }.map_or(0, |r| r.checks.len())
}

/// Number of passing checks in `report`; 0 for null.
///
/// # Safety
/// `report` must be null or a live handle from [`stj_verify`].
#[no_mangle]
pub unsafe extern "C" fn stj_report_passed(report: *const StjReport) -> usize {
    // SAFETY: the caller guarantees the handle is live.
    unsafe { report.as_ref() }.map_or(0, |r| r.checks.iter().filter(|c| c.pass).count())
}

/// Copy check `index` of `report` into `out`.
///
/// # Safety
/// `report` must be null or a live handle; `out` must be null or valid for
/// a write of [`StjCheck`].
#[no_mangle]
pub unsafe extern "C" fn stj_report_get(report: *const StjReport, index: usize, out: *mut StjCheck) -> StjStatus {
    guard(|| {
        // SAFETY: the caller guarantees the handle is live.
        let r = unsafe { report.as_ref() }.ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = r.checks.get(index).ok_or_else(|| {
            (
                StjStatus::InvalidArgument,
                format!("index {index} out of range (len {})", r.checks.len()),
            )
        })?;
        let mut id = [0 as c_char; 8];
        for (d, b) in id.iter_mut().zip(c.identity_id.as_str().bytes().take(7)) {
            *d = b as c_char;
        }
        let check = StjCheck {
            identity_id: id,
            lhs: c.lhs,
            rhs: c.rhs,
            abs_residual: c.abs_residual,
            rel_residual: c.rel_residual,
            tolerance: c.tolerance,
            pass: c.pass,
            terms_or_panels: c.terms_or_panels as u64,
            elapsed_ms: c.elapsed.as_millis() as u64,
        };
        // SAFETY: checked non-null; the caller guarantees validity.
        unsafe { out.write(check) };
        Ok(())
    })
}

/// Release a report; null is ignored.
///
/// # Safety
/// `report` must be null or a handle from [`stj_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stj_report_free(report: *mut StjReport) {
    if !report.is_null() {
        // SAFETY: the caller passes ownership of a handle from `Box::into_raw`.
        drop(unsafe { Box::from_raw(report) });
    }
}
