use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::ptr;

use calabi_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    calabi_string_free(p);
    s
}

unsafe fn model(name: &str, params: &str, degree: u32) -> *mut CalabiSeries {
    let mut s = ptr::null_mut();
    let p = cstr(params);
    assert_eq!(
        calabi_model_build(cstr(name).as_ptr(), p.as_ptr(), degree, &mut s),
        CalabiStatus::Ok
    );
    s
}

#[test]
fn cp1_half_scale_has_negative_witness() {
    unsafe {
        let s = model("cp", "n=1;scale=1/2", 4);
        assert_eq!(calabi_series_arity(s), 1);
        let mut v = ptr::null_mut();
        assert_eq!(calabi_analyze(s, cstr("1").as_ptr(), 4, &mut v), CalabiStatus::Ok);
        let mut kind = CalabiVerdictKind::ResolvableUpTo;
        assert_eq!(calabi_verdict_kind(v, &mut kind), CalabiStatus::Ok);
        assert_eq!(kind, CalabiVerdictKind::CertifiedNotResolvable);
        assert_eq!(calabi_verdict_rank(v), -1);
        let mut w = ptr::null_mut();
        assert_eq!(calabi_verdict_witness_value(v, &mut w), CalabiStatus::Ok);
        assert_eq!(take(w), "-1/8");

        let mut j = ptr::null_mut();
        assert_eq!(calabi_verdict_json(v, &mut j), CalabiStatus::Ok);
        let doc = take(j);
        let mut valid: c_int = -1;
        assert_eq!(
            calabi_check_certificate(cstr(&doc).as_ptr(), &mut valid),
            CalabiStatus::Ok
        );
        assert_eq!(valid, 1);
        let forged = doc.replacen("-1/8", "-1/9", 1);
        assert_eq!(
            calabi_check_certificate(cstr(&forged).as_ptr(), &mut valid),
            CalabiStatus::Ok
        );
        assert_eq!(valid, 0);

        calabi_verdict_free(v);
        calabi_series_free(s);
    }
}

#[test]
fn flat_is_resolvable_with_rank() {
    unsafe {
        let s = model("flat", "n=2", 4);
        let mut v = ptr::null_mut();
        assert_eq!(calabi_analyze(s, cstr("0").as_ptr(), 4, &mut v), CalabiStatus::Ok);
        assert_eq!(calabi_verdict_rank(v), 2);
        let mut d = 0;
        assert_eq!(calabi_verdict_degree(v, &mut d), CalabiStatus::Ok);
        assert_eq!(d, 4);
        let mut w = ptr::null_mut();
        assert_eq!(calabi_verdict_witness_value(v, &mut w), CalabiStatus::Domain);
        calabi_verdict_free(v);
        calabi_series_free(s);
    }
}

#[test]
fn text_round_trip() {
    unsafe {
        let s = model("ch", "n=1", 3);
        let mut t = ptr::null_mut();
        assert_eq!(calabi_series_to_text(s, &mut t), CalabiStatus::Ok);
        let text = take(t);
        let mut s2 = ptr::null_mut();
        assert_eq!(calabi_series_parse(cstr(&text).as_ptr(), &mut s2), CalabiStatus::Ok);
        let mut t2 = ptr::null_mut();
        assert_eq!(calabi_series_to_text(s2, &mut t2), CalabiStatus::Ok);
        assert_eq!(take(t2), text);
        assert_eq!(calabi_series_degree(s2), calabi_series_degree(s));
        calabi_series_free(s);
        calabi_series_free(s2);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(calabi_series_parse(ptr::null(), &mut s), CalabiStatus::NullPointer);
        assert!(!calabi_last_error().is_null());
        assert_eq!(
            calabi_series_parse(cstr("garbage here").as_ptr(), &mut s),
            CalabiStatus::Parse
        );
        assert_eq!(
            calabi_model_build(cstr("no-such-model").as_ptr(), ptr::null(), 4, &mut s),
            CalabiStatus::InvalidParameter
        );
        let msg = CStr::from_ptr(calabi_last_error()).to_str().unwrap();
        assert!(!msg.is_empty());
        let bad = [0xffu8, 0];
        assert_eq!(
            calabi_series_parse(bad.as_ptr() as *const c_char, &mut s),
            CalabiStatus::InvalidUtf8
        );
        let mut valid = 0;
        assert_eq!(
            calabi_check_certificate(cstr("{").as_ptr(), &mut valid),
            CalabiStatus::Parse
        );
        assert_eq!(calabi_verdict_rank(ptr::null()), -1);
        assert_eq!(calabi_series_arity(ptr::null()), 0);
        calabi_series_free(ptr::null_mut());
        calabi_verdict_free(ptr::null_mut());
        calabi_string_free(ptr::null_mut());

        let good = model("flat", "n=1", 2);
        let mut v = ptr::null_mut();
        assert_eq!(calabi_analyze(good, cstr("0").as_ptr(), 2, &mut v), CalabiStatus::Ok);
        assert!(calabi_last_error().is_null());
        calabi_verdict_free(v);
        calabi_series_free(good);
    }
}
