//! C ABI for `qres`.
//!
//! Objects are opaque handles released with their `_free` function.
//! Rationals cross the boundary as `"num/den"` strings owned by the caller
//! and released with [`qres_string_free`]. Every fallible call returns a
//! [`QresStatus`]; the message of the last failure on the calling thread is
//! available from [`qres_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qres::exactnum::{rat_to_string, Rat};
use qres::invariants::{report_and_tree, InvariantReport};
use qres::poly::{parse_poly, SparsePoly};
use qres::quotsing::QuotType;
use qres::resolve::{
    normalize_germ, tree_to_dot, tree_to_json, Mode, ResolutionTree, ResolveOptions,
};
use qres::wproj::{genus, parse_curve, virtual_genus, GenusReport, Weights};
use qres::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QresStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    BadType = 4,
    NotReduced = 5,
    NotSemiInvariant = 6,
    ExtensionOverflow = 7,
    BadWeights = 8,
    NotQuasiHomogeneous = 9,
    Degenerate = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QresMode {
    Strong = 0,
    Plain = 1,
}

/// A germ with its normalized ambient type.
pub struct QresGerm {
    germ: SparsePoly,
    ambient: QuotType,
}

/// Invariants of a germ together with its resolution tree.
pub struct QresReport {
    report: InvariantReport,
    tree: ResolutionTree,
}

/// Genus computation for a curve in a weighted projective plane.
pub struct QresCurve {
    report: GenusReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QresStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownVariable(_) | Error::ZeroPolynomial => {
            QresStatus::Parse
        }
        Error::BadType(_) | Error::NonDivisibleExponent { .. } => QresStatus::BadType,
        Error::NotReduced | Error::NotSquarefree | Error::CommonComponent => QresStatus::NotReduced,
        Error::NotSemiInvariant(_) => QresStatus::NotSemiInvariant,
        Error::ExtensionOverflow { .. } => QresStatus::ExtensionOverflow,
        Error::BadWeights(_) => QresStatus::BadWeights,
        Error::NotQuasiHomogeneous(_) => QresStatus::NotQuasiHomogeneous,
        Error::InternalInconsistency(_) => QresStatus::Internal,
        _ => QresStatus::Degenerate,
    }
}

fn fail(e: Error) -> QresStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QresStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(QresStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QresStatus::InvalidUtf8
    })
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn rat_c(r: &Rat) -> *mut c_char {
    into_c(rat_to_string(r))
}

/// Message of the last failure on this thread; valid until the next call
/// that fails. Never null.
#[no_mangle]
pub extern "C" fn qres_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn qres_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial in `x`, `y` as a germ on `X(d;a,b)`, normalizing the type.
///
/// # Safety
/// `poly` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qres_germ_new(
    poly: *const c_char,
    d: i64,
    a: i64,
    b: i64,
    out: *mut *mut QresGerm,
) -> QresStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QresStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let text = match read_str(poly) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let f = match parse_poly(text, &["x", "y"]) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    match normalize_germ(&f, d, a, b) {
        Ok((germ, ambient)) => {
            *out = Box::into_raw(Box::new(QresGerm { germ, ambient }));
            QresStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `g` must be null or a handle from [`qres_germ_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qres_germ_free(g: *mut QresGerm) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Resolves the germ and computes its invariants.
///
/// # Safety
/// `g` must be a live germ handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qres_germ_report(
    g: *const QresGerm,
    mode: QresMode,
    out: *mut *mut QresReport,
) -> QresStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return QresStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let g = &*g;
    let mode = match mode {
        QresMode::Strong => Mode::Strong,
        QresMode::Plain => Mode::Plain,
    };
    match report_and_tree(&g.germ, g.ambient, &ResolveOptions::with_mode(mode)) {
        Ok((tree, report)) => {
            *out = Box::into_raw(Box::new(QresReport { report, tree }));
            QresStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `r` must be null or a handle from [`qres_germ_report`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qres_report_free(r: *mut QresReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// δ^ω as `"num/den"`.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_delta_w(r: *const QresReport) -> *mut c_char {
    r.as_ref()
        .map_or(ptr::null_mut(), |r| rat_c(&r.report.delta_w))
}

/// μ^ω as `"num/den"`.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_mu_w(r: *const QresReport) -> *mut c_char {
    r.as_ref()
        .map_or(ptr::null_mut(), |r| rat_c(&r.report.mu_w))
}

/// Orbifold Euler characteristic as `"num/den"`.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_euler_orb(r: *const QresReport) -> *mut c_char {
    r.as_ref()
        .map_or(ptr::null_mut(), |r| rat_c(&r.report.euler_orb))
}

/// Classical δ of the germ upstairs, as `"num/den"`.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_delta(r: *const QresReport) -> *mut c_char {
    r.as_ref()
        .map_or(ptr::null_mut(), |r| rat_c(&r.report.delta_classical))
}

/// Number of quotient branches; `-1` for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_r_w(r: *const QresReport) -> i64 {
    r.as_ref().map_or(-1, |r| r.report.r_w)
}

/// Number of branches upstairs; `-1` for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_r(r: *const QresReport) -> i64 {
    r.as_ref().map_or(-1, |r| r.report.r_classical)
}

/// Classical Milnor number upstairs; `-1` for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_mu(r: *const QresReport) -> i64 {
    r.as_ref().map_or(-1, |r| r.report.mu_classical)
}

/// Number of blow-up contributions (internal tree nodes).
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_contribution_count(r: *const QresReport) -> usize {
    r.as_ref()
        .map_or(0, |r| r.report.per_node_contributions.len())
}

/// The `i`-th weighted contribution in node order, or null when out of range.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_contribution(r: *const QresReport, i: usize) -> *mut c_char {
    r.as_ref()
        .and_then(|r| r.report.per_node_contributions.get(i))
        .map_or(ptr::null_mut(), |(_, c)| rat_c(c))
}

/// Report and resolution tree as JSON.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_json(r: *const QresReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| {
        let v = serde_json::json!({ "report": r.report, "tree": tree_to_json(&r.tree) });
        into_c(v.to_string())
    })
}

/// Resolution tree in Graphviz format.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qres_report_dot(r: *const QresReport) -> *mut c_char {
    r.as_ref()
        .map_or(ptr::null_mut(), |r| into_c(tree_to_dot(&r.tree)))
}

/// Genus of `{F = 0}` in `P²(w0,w1,w2)`; `F` is a polynomial in `x0`, `x1`, `x2`.
///
/// # Safety
/// `poly` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_new(
    poly: *const c_char,
    w0: i64,
    w1: i64,
    w2: i64,
    out: *mut *mut QresCurve,
) -> QresStatus {
    if out.is_null() {
        set_error("null output pointer");
        return QresStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let text = match read_str(poly) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let run = || -> Result<GenusReport, Error> {
        let w = Weights::new(w0, w1, w2)?;
        genus(&parse_curve(text)?, &w)
    };
    match run() {
        Ok(report) => {
            *out = Box::into_raw(Box::new(QresCurve { report }));
            QresStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `c` must be null or a handle from [`qres_curve_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_free(c: *mut QresCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Genus as `"num/den"`.
///
/// # Safety
/// `c` must be a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_genus(c: *const QresCurve) -> *mut c_char {
    c.as_ref()
        .map_or(ptr::null_mut(), |c| rat_c(&c.report.genus))
}

/// Virtual genus `g_{d,ω}` as `"num/den"`.
///
/// # Safety
/// `c` must be a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_virtual_genus(c: *const QresCurve) -> *mut c_char {
    c.as_ref()
        .map_or(ptr::null_mut(), |c| rat_c(&c.report.virtual_genus))
}

/// Weighted degree of the (normalized) curve; `-1` for a null handle.
///
/// # Safety
/// `c` must be null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_degree(c: *const QresCurve) -> i64 {
    c.as_ref().map_or(-1, |c| c.report.degree)
}

/// Number of singular points or conjugate clusters used in the formula.
///
/// # Safety
/// `c` must be null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_point_count(c: *const QresCurve) -> usize {
    c.as_ref().map_or(0, |c| c.report.points.len())
}

/// Whether the genus came with a reducibility warning.
///
/// # Safety
/// `c` must be null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_has_warning(c: *const QresCurve) -> bool {
    c.as_ref().is_some_and(|c| c.report.warning.is_some())
}

/// Full genus report as JSON.
///
/// # Safety
/// `c` must be a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn qres_curve_json(c: *const QresCurve) -> *mut c_char {
    c.as_ref().map_or(ptr::null_mut(), |c| {
        into_c(serde_json::to_string(&c.report).unwrap_or_default())
    })
}

/// `g_{d,ω}` for normalized weights, as `"num/den"`; null on invalid weights.
#[no_mangle]
pub extern "C" fn qres_virtual_genus(d: i64, w0: i64, w1: i64, w2: i64) -> *mut c_char {
    match Weights::new(w0, w1, w2) {
        Ok(w) => rat_c(&virtual_genus(d, &w)),
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}
