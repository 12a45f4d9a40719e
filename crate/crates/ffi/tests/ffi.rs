use std::ffi::{CStr, CString};
use std::ptr;

use superharm_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    superharm_string_free(s);
    out
}

#[test]
fn parse_apply_render() {
    unsafe {
        let mut scheme = ptr::null_mut();
        assert_eq!(superharm_scheme_new(SuperharmSchemeKind::GlNatural, 1, 1, 0, 0, &mut scheme), SuperharmStatus::Ok);
        let text = CString::new("x1*y1 + th1*vt1").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(superharm_poly_parse(text.as_ptr(), &mut p), SuperharmStatus::Ok);
        let name = CString::new("DELTA").unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(superharm_apply_named(scheme, name.as_ptr(), p, &mut q), SuperharmStatus::Ok);
        assert_eq!(take(superharm_poly_render(q)), "0");
        assert_eq!(take(superharm_poly_render(p)), "1/1*x1*y1 + 1/1*th1*vt1");
        superharm_poly_free(q);
        superharm_poly_free(p);
        superharm_scheme_free(scheme);
    }
}

#[test]
fn errors_carry_messages() {
    unsafe {
        let bad = CString::new("x1 +").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(superharm_poly_parse(bad.as_ptr(), &mut p), SuperharmStatus::Parse);
        assert!(p.is_null());
        assert!(take(superharm_last_error_message()).contains("parse"));
        assert_eq!(superharm_poly_parse(ptr::null(), &mut p), SuperharmStatus::NullPointer);

        let mut s = ptr::null_mut();
        assert_eq!(
            superharm_scheme_new(SuperharmSchemeKind::GlTwisted, 2, 1, 1, 2, &mut s),
            SuperharmStatus::InvalidArgument
        );
        assert!(s.is_null());

        // a variable outside the scheme
        assert_eq!(superharm_scheme_new(SuperharmSchemeKind::GlNatural, 1, 1, 0, 0, &mut s), SuperharmStatus::Ok);
        let text = CString::new("x2").unwrap();
        assert_eq!(superharm_poly_parse(text.as_ptr(), &mut p), SuperharmStatus::Ok);
        let name = CString::new("ETA").unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(superharm_apply_named(s, name.as_ptr(), p, &mut q), SuperharmStatus::InvalidArgument);
        superharm_poly_free(p);
        superharm_scheme_free(s);
    }
}

#[test]
fn theorem_reports() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(superharm_scheme_new(SuperharmSchemeKind::GlNatural, 2, 1, 0, 0, &mut s), SuperharmStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(superharm_verify_theorem(1, s, 0, 2, 0, 2, -1, &mut r), SuperharmStatus::Ok);
        assert_eq!(superharm_report_verdict(r), SuperharmVerdict::Pass);
        let json = take(superharm_report_json(r));
        assert!(json.contains("\"schema\": \"superharm-report/1\""));
        superharm_report_free(r);
        assert_eq!(superharm_verify_theorem(3, s, 0, 2, 0, 2, -1, &mut r), SuperharmStatus::InvalidArgument);
        assert_eq!(superharm_verify_theorem(9, s, 0, 2, 0, 2, -1, &mut r), SuperharmStatus::InvalidArgument);
        superharm_scheme_free(s);

        let mut t = ptr::null_mut();
        assert_eq!(superharm_scheme_new(SuperharmSchemeKind::GlTwisted, 4, 1, 1, 3, &mut t), SuperharmStatus::Ok);
        assert_eq!(superharm_verify_theorem(2, t, 0, 0, 0, 0, -1, &mut r), SuperharmStatus::CapRequired);
        assert_eq!(superharm_verify_theorem(2, t, 0, 0, 0, 0, 4, &mut r), SuperharmStatus::Ok);
        assert_eq!(superharm_report_verdict(r), SuperharmVerdict::InconclusiveCap);
        superharm_report_free(r);
        superharm_scheme_free(t);
        assert_eq!(superharm_report_verdict(ptr::null()), SuperharmVerdict::Fail);
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/superharm.h")).unwrap();
    for name in [
        "superharm_poly_parse",
        "superharm_poly_render",
        "superharm_apply_named",
        "superharm_verify_theorem",
        "superharm_report_verdict",
        "superharm_report_json",
        "superharm_last_error_message",
        "superharm_string_free",
        "typedef struct SuperharmScheme SuperharmScheme",
        "SUPERHARM_STATUS_DOMAIN",
    ] {
        assert!(h.contains(name), "{name}");
    }
}
