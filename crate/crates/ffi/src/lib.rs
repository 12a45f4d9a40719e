//! C interface to the superharm engine.
//!
//! Every object crosses the boundary as an opaque pointer that the caller releases
//! with the matching `_free` function. Fallible calls return a [`SuperharmStatus`]
//! and write their result through an out pointer; the message of the last failure
//! on the calling thread is available from [`superharm_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use superharm::diffops::{named_operator, OperatorName};
use superharm::error::Error;
use superharm::exactalg::{parse_polynomial, Family, GradeLabel, GradingScheme, SchemeKind, SuperPolynomial};
use superharm::harmonic::{label_grid, theorem_suite, Theorem};
use superharm::report::{Verdict, VerificationReport};

/// Opaque grading scheme.
pub struct SuperharmScheme(GradingScheme);

/// Opaque polynomial.
pub struct SuperharmPoly(SuperPolynomial);

/// Opaque verification report.
pub struct SuperharmReport(VerificationReport);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperharmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    Domain = 5,
    CapRequired = 6,
    TooLarge = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperharmSchemeKind {
    GlNatural = 0,
    GlTwisted = 1,
    OspEvenNatural = 2,
    OspEvenTwisted = 3,
    OspOddNatural = 4,
    OspOddTwisted = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperharmVerdict {
    Pass = 0,
    Fail = 1,
    InconclusiveCap = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SuperharmStatus, msg: impl Into<String>) -> SuperharmStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> SuperharmStatus {
    let status = match &e {
        Error::Parse { .. } => SuperharmStatus::Parse,
        Error::Domain(_) => SuperharmStatus::Domain,
        Error::CapRequired(_) => SuperharmStatus::CapRequired,
        Error::TooLarge { .. } => SuperharmStatus::TooLarge,
        Error::Internal(_) => SuperharmStatus::Internal,
        _ => SuperharmStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SuperharmStatus> {
    if s.is_null() {
        return Err(fail(SuperharmStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(SuperharmStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! deref {
    ($p:expr, $what:literal) => {
        match $p.as_ref() {
            Some(v) => v,
            None => return fail(SuperharmStatus::NullPointer, concat!($what, " is null")),
        }
    };
}

macro_rules! check_out {
    ($p:expr) => {
        if $p.is_null() {
            return fail(SuperharmStatus::NullPointer, "output pointer is null");
        }
    };
}

/// Message of the last failed call on this thread, or NULL. Free with
/// [`superharm_string_free`].
#[no_mangle]
pub extern "C" fn superharm_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn superharm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a scheme. `n1` and `n2` are read only for twisted kinds.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn superharm_scheme_new(
    kind: SuperharmSchemeKind,
    n: u16,
    m: u16,
    n1: u16,
    n2: u16,
    out: *mut *mut SuperharmScheme,
) -> SuperharmStatus {
    check_out!(out);
    let kind = match kind {
        SuperharmSchemeKind::GlNatural => SchemeKind::GlNatural,
        SuperharmSchemeKind::GlTwisted => SchemeKind::GlTwisted,
        SuperharmSchemeKind::OspEvenNatural => SchemeKind::OspEvenNatural,
        SuperharmSchemeKind::OspEvenTwisted => SchemeKind::OspEvenTwisted,
        SuperharmSchemeKind::OspOddNatural => SchemeKind::OspOddNatural,
        SuperharmSchemeKind::OspOddTwisted => SchemeKind::OspOddTwisted,
    };
    match GradingScheme::new(kind, n, m, kind.is_twisted().then_some((n1, n2))) {
        Ok(s) => {
            *out = Box::into_raw(Box::new(SuperharmScheme(s)));
            SuperharmStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `s` must come from [`superharm_scheme_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn superharm_scheme_free(s: *mut SuperharmScheme) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Parse a polynomial such as `"x1*y1 - 1/2*th1*vt2"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn superharm_poly_parse(text: *const c_char, out: *mut *mut SuperharmPoly) -> SuperharmStatus {
    check_out!(out);
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_polynomial(text) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(SuperharmPoly(p)));
            SuperharmStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Canonical text of a polynomial, or NULL for a null handle.
///
/// # Safety
/// `p` must be a live polynomial handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn superharm_poly_render(p: *const SuperharmPoly) -> *mut c_char {
    match p.as_ref() {
        Some(p) => into_c_string(p.0.to_string()),
        None => {
            set_error("polynomial is null".into());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn superharm_poly_free(p: *mut SuperharmPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Apply a named operator (`DELTA`, `ETA`, `DELTA_BAR`, `ETA_BAR`, `DELTA_CHECK`,
/// `ETA_CHECK`, `FLAT`, `FLAT_PRIME`) of the scheme to a polynomial.
///
/// # Safety
/// All pointers must be valid; `name` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn superharm_apply_named(
    scheme: *const SuperharmScheme,
    name: *const c_char,
    p: *const SuperharmPoly,
    out: *mut *mut SuperharmPoly,
) -> SuperharmStatus {
    check_out!(out);
    let scheme = deref!(scheme, "scheme");
    let p = deref!(p, "polynomial");
    let name = match read_str(name) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let op = match OperatorName::parse(name).and_then(|n| named_operator(n, &scheme.0)) {
        Ok(op) => op,
        Err(e) => return from_error(e),
    };
    if let Some(e) = p.0.monomials().find_map(|m| scheme.0.check_monomial(m).err()) {
        return from_error(e);
    }
    *out = Box::into_raw(Box::new(SuperharmPoly(op.apply(&p.0))));
    SuperharmStatus::Ok
}

/// Run the suite of `theorem` (1 to 4) over the label grid `[lo, hi] x [lp_lo, lp_hi]`
/// (the second range is ignored for orthosymplectic schemes). A negative `cap`
/// means no cap.
///
/// # Safety
/// `scheme` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn superharm_verify_theorem(
    theorem: u32,
    scheme: *const SuperharmScheme,
    lo: i64,
    hi: i64,
    lp_lo: i64,
    lp_hi: i64,
    cap: i64,
    out: *mut *mut SuperharmReport,
) -> SuperharmStatus {
    check_out!(out);
    let scheme = deref!(scheme, "scheme");
    let t = match theorem.to_string().parse::<Theorem>() {
        Ok(t) => t,
        Err(e) => return from_error(e),
    };
    let labels: Vec<GradeLabel> = match scheme.0.family() {
        Family::Gl => label_grid(Family::Gl, (lo, hi), (lp_lo, lp_hi)),
        f => label_grid(f, (lo, hi), (0, 0)),
    };
    let cap = u32::try_from(cap).ok();
    match theorem_suite(t, &scheme.0, &labels, cap) {
        Ok(r) => {
            *out = Box::into_raw(Box::new(SuperharmReport(r)));
            SuperharmStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn superharm_report_verdict(r: *const SuperharmReport) -> SuperharmVerdict {
    match r.as_ref().map(|r| r.0.verdict) {
        Some(Verdict::Pass) => SuperharmVerdict::Pass,
        Some(Verdict::InconclusiveCap) => SuperharmVerdict::InconclusiveCap,
        Some(Verdict::Fail) | None => SuperharmVerdict::Fail,
    }
}

/// JSON form of a report, or NULL for a null handle.
///
/// # Safety
/// `r` must be a live report handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn superharm_report_json(r: *const SuperharmReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => into_c_string(r.0.to_json()),
        None => {
            set_error("report is null".into());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn superharm_report_free(r: *mut SuperharmReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
