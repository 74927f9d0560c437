use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use qres_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qres_string_free(s) };
    out
}

fn report(
    poly: &str,
    d: i64,
    a: i64,
    b: i64,
    mode: QresMode,
) -> Result<*mut QresReport, QresStatus> {
    let text = CString::new(poly).unwrap();
    let mut g = ptr::null_mut();
    let st = unsafe { qres_germ_new(text.as_ptr(), d, a, b, &mut g) };
    if st != QresStatus::Ok {
        return Err(st);
    }
    let mut r = ptr::null_mut();
    let st = unsafe { qres_germ_report(g, mode, &mut r) };
    unsafe { qres_germ_free(g) };
    if st != QresStatus::Ok {
        return Err(st);
    }
    Ok(r)
}

#[test]
fn germ_report_roundtrip() {
    let r = report("x^2 - y^4", 2, 1, 1, QresMode::Strong).unwrap();
    unsafe {
        assert_eq!(take(qres_report_delta_w(r)), "1/1");
        assert_eq!(take(qres_report_delta(r)), "2/1");
        assert_eq!(qres_report_r(r), 2);
        assert_eq!(qres_report_r_w(r), 1);
        assert_eq!(qres_report_mu(r), 3);
        let js: serde_json::Value = serde_json::from_str(&take(qres_report_json(r))).unwrap();
        assert_eq!(js["tree"]["schema_version"], 1);
        assert!(take(qres_report_dot(r)).starts_with("digraph"));
        qres_report_free(r);
    }
}

#[test]
fn contributions_are_listed() {
    let r = report("x*y + (x^3 - y^2)^2", 7, 2, 3, QresMode::Plain).unwrap();
    unsafe {
        let n = qres_report_contribution_count(r);
        assert!(n >= 1);
        assert!(qres_report_contribution(r, n).is_null());
        assert_eq!(take(qres_report_delta_w(r)), "1/1");
        qres_report_free(r);
    }
}

#[test]
fn error_codes() {
    assert_eq!(
        report("x^2 +* y", 1, 0, 0, QresMode::Strong).unwrap_err(),
        QresStatus::Parse
    );
    assert_eq!(
        report("x*y + (x^2 - y^3)^2", 7, 2, 3, QresMode::Strong).unwrap_err(),
        QresStatus::NotSemiInvariant
    );
    assert_eq!(
        report("x^2*y", 1, 0, 0, QresMode::Strong).unwrap_err(),
        QresStatus::NotReduced
    );
    let msg = unsafe { CStr::from_ptr(qres_last_error()) }
        .to_str()
        .unwrap();
    assert!(!msg.is_empty());
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { qres_germ_new(ptr::null(), 1, 0, 0, &mut g) },
        QresStatus::NullArgument
    );
    assert!(g.is_null());
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { qres_germ_new(bad.as_ptr().cast(), 1, 0, 0, &mut g) },
        QresStatus::InvalidUtf8
    );
    unsafe {
        qres_report_free(ptr::null_mut());
        qres_string_free(ptr::null_mut());
        assert_eq!(qres_report_r(ptr::null()), -1);
    }
}

#[test]
fn curve_genus() {
    let text = CString::new("x0*x1*x2 + (x0^3 - x1^2)^2").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(
            qres_curve_new(text.as_ptr(), 2, 3, 7, &mut c),
            QresStatus::Ok
        );
        assert_eq!(take(qres_curve_genus(c)), "0/1");
        assert_eq!(take(qres_curve_virtual_genus(c)), "1/1");
        assert_eq!(qres_curve_degree(c), 12);
        assert!(!qres_curve_has_warning(c));
        let js: serde_json::Value = serde_json::from_str(&take(qres_curve_json(c))).unwrap();
        assert_eq!(js["genus"], "0/1");
        qres_curve_free(c);
        assert_eq!(
            qres_curve_new(text.as_ptr(), 2, 4, 6, &mut c),
            QresStatus::BadWeights
        );
    }
    assert_eq!(take(qres_virtual_genus(6, 1, 2, 3)), "1/1");
    assert!(qres_virtual_genus(6, 0, 2, 3).is_null());
}

#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qres.h");
    let text = std::fs::read_to_string(header).unwrap();
    for sym in [
        "qres_germ_new",
        "qres_report_delta_w",
        "qres_curve_genus",
        "QRES_STATUS_EXTENSION_OVERFLOW",
    ] {
        assert!(text.contains(sym), "{sym}");
    }
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-xc", header])
        .output()
    else {
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
