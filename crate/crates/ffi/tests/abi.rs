use std::ffi::{CStr, CString};
use std::ptr;

use stieltjes_ffi::*;

fn last_error() -> String {
    let p = stj_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn gamma_routes() {
    let mut v = StjValue::default();
    for m in [
        StjMethod::Oracle,
        StjMethod::Integral,
        StjMethod::Dilcher,
        StjMethod::Hasse,
    ] {
        let st = unsafe { stj_gamma(0, 1.0, m, 1e-12, &mut v) };
        assert_eq!(st, StjStatus::Ok, "{m:?}");
        assert!((v.value - 0.577_215_664_901_532_9).abs() <= 1e-12);
        assert!(stj_last_error().is_null());
    }
}

#[test]
fn errors_map_to_status() {
    let mut v = StjValue::default();
    assert_eq!(
        unsafe { stj_gamma(1, -1.0, StjMethod::Oracle, 1e-10, &mut v) },
        StjStatus::Domain
    );
    assert!(last_error().contains("domain"));
    assert_eq!(
        unsafe { stj_gamma(1, 0.5, StjMethod::Hasse, 1e-10, &mut v) },
        StjStatus::Domain
    );
    assert_eq!(
        unsafe { stj_gamma(2, 0.3, StjMethod::Oracle, 1e-30, &mut v) },
        StjStatus::Convergence
    );
    assert!(last_error().contains("convergence"));
    assert_eq!(
        unsafe { stj_zeta(1.0, StjZetaRoute::Hasse1, 1e-10, &mut v) },
        StjStatus::Pole
    );
    assert_eq!(
        unsafe { stj_gamma(1, 0.5, StjMethod::Oracle, 1e-10, ptr::null_mut()) },
        StjStatus::NullPointer
    );
}

#[test]
fn zeta_and_constants() {
    let mut v = StjValue::default();
    for r in [StjZetaRoute::EulerMaclaurin, StjZetaRoute::Hasse1, StjZetaRoute::Hasse2] {
        assert_eq!(unsafe { stj_zeta(2.0, r, 1e-10, &mut v) }, StjStatus::Ok);
        assert!((v.value - std::f64::consts::PI.powi(2) / 6.0).abs() <= 1e-10);
    }
    assert_eq!(
        unsafe { stj_hasse_constant(StjConstant::LnPi, 0, 60, &mut v) },
        StjStatus::Ok
    );
    assert!((v.value - std::f64::consts::PI.ln()).abs() <= 1e-12);
    assert_eq!(
        unsafe { stj_hasse_constant(StjConstant::BernoulliEven, 1, 120, &mut v) },
        StjStatus::Ok
    );
    assert!((v.value - 1.0 / 6.0).abs() <= 1e-12);
}

#[test]
fn report_handle_lifecycle() {
    let ids = CString::new("P4,A6").unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(
        unsafe { stj_verify(ids.as_ptr(), StjProfile::Fast, &mut rep) },
        StjStatus::Ok
    );
    let n = unsafe { stj_report_len(rep) };
    assert_eq!(n, 9);
    assert_eq!(unsafe { stj_report_passed(rep) }, n);
    let mut c = unsafe { std::mem::zeroed::<StjCheck>() };
    assert_eq!(unsafe { stj_report_get(rep, 0, &mut c) }, StjStatus::Ok);
    let id = unsafe { CStr::from_ptr(c.identity_id.as_ptr()) };
    assert_eq!(id.to_str().unwrap(), "P4");
    assert!(c.pass && c.abs_residual <= c.tolerance);
    assert_eq!(unsafe { stj_report_get(rep, n, &mut c) }, StjStatus::InvalidArgument);
    unsafe { stj_report_free(rep) };
    unsafe { stj_report_free(ptr::null_mut()) };
    assert_eq!(unsafe { stj_report_len(ptr::null()) }, 0);
}

#[test]
fn verify_rejects_unknown_ids() {
    let ids = CString::new("P4,Q1").unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(
        unsafe { stj_verify(ids.as_ptr(), StjProfile::Fast, &mut rep) },
        StjStatus::InvalidArgument
    );
    assert!(rep.is_null());
    assert_eq!(
        unsafe { stj_verify(ptr::null(), StjProfile::Fast, &mut rep) },
        StjStatus::NullPointer
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(stj_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
