//! C interface. Polynomials live behind an opaque handle; every call returns
//! a status code and writes results through out-pointers. Strings handed out
//! are NUL-terminated UTF-8 owned by the caller, released with
//! `srcirc_string_free`. After a non-OK status, `srcirc_last_error` describes
//! what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use srcirc::certify::{certify_on_circle, CertOutcome};
use srcirc::cli::commands;
use srcirc::criterion::{verdict_simple, VerdictClass};
use srcirc::embedding::{embed_simple, CoeffVector, LogScale};
use srcirc::exact::parse_rational;
use srcirc::expoly::eval_a_b;
use srcirc::Error;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrcircStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Domain = 4,
    Dimension = 5,
    NotConstructible = 6,
    Range = 7,
    /// Any other library error; see `srcirc_last_error`.
    Failed = 8,
    /// A Rust panic was caught at the boundary.
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrcircVerdict {
    SimpleOnCircle = 0,
    OnCircleNotSimple = 1,
    OffCircle = 2,
    NotSimpleOnCircle = 3,
    ConsistentWithOnCircle = 4,
    Degenerate = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrcircCertOutcome {
    CertifiedOnT = 0,
    CertifiedFail = 1,
    Inconclusive = 2,
}

/// Opaque polynomial handle.
pub struct SrcircPolynomial {
    inner: CoeffVector,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SrcircStatus {
    match e {
        Error::InvalidInput(_) => SrcircStatus::InvalidInput,
        Error::Domain(_) => SrcircStatus::Domain,
        Error::Dimension(_) => SrcircStatus::Dimension,
        Error::NotConstructible { .. } => SrcircStatus::NotConstructible,
        Error::Range(_) => SrcircStatus::Range,
        _ => SrcircStatus::Failed,
    }
}

/// Runs `f`, converting library errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), SrcircStatus>) -> SrcircStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SrcircStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SrcircStatus::Panic
        }
    }
}

fn lib<T>(r: srcirc::Result<T>) -> Result<T, SrcircStatus> {
    r.map_err(|e| {
        set_error(format!("{}: {e}", e.code()));
        status_of(&e)
    })
}

fn null() -> SrcircStatus {
    set_error("null pointer argument".into());
    SrcircStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, SrcircStatus> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        SrcircStatus::InvalidUtf8
    })
}

unsafe fn poly<'a>(p: *const SrcircPolynomial) -> Result<&'a CoeffVector, SrcircStatus> {
    p.as_ref().map(|p| &p.inner).ok_or_else(null)
}

unsafe fn log_scale(log_q: *const c_char, g: usize) -> Result<LogScale, SrcircStatus> {
    if log_q.is_null() {
        return Ok(LogScale::default());
    }
    let l = lib(parse_rational(str_arg(log_q)?))?;
    lib(LogScale::new(l, g))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), SrcircStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte".into());
        SrcircStatus::Failed
    })?;
    *out = c.into_raw();
    Ok(())
}

/// Parses comma-separated coefficients `c_0,...,c_g` ("p/q", integers or
/// decimals). On success `*out` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn srcirc_polynomial_parse(
    coeffs: *const c_char,
    out: *mut *mut SrcircPolynomial,
) -> SrcircStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let c = lib(srcirc::cli::parse_coeffs(str_arg(coeffs)?))?;
        *out = Box::into_raw(Box::new(SrcircPolynomial { inner: c }));
        Ok(())
    })
}

/// Builds a handle from `len` integer coefficients.
#[no_mangle]
pub unsafe extern "C" fn srcirc_polynomial_from_i64(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut SrcircPolynomial,
) -> SrcircStatus {
    guard(|| {
        if out.is_null() || (coeffs.is_null() && len > 0) {
            return Err(null());
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, len) };
        let c = lib(CoeffVector::from_ints(slice))?;
        *out = Box::into_raw(Box::new(SrcircPolynomial { inner: c }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn srcirc_polynomial_free(p: *mut SrcircPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Half-degree `g` of the polynomial.
#[no_mangle]
pub unsafe extern "C" fn srcirc_polynomial_g(p: *const SrcircPolynomial, out: *mut usize) -> SrcircStatus {
    guard(|| {
        let c = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        *out = c.g();
        Ok(())
    })
}

/// Exact simple-roots-on-the-circle test at log q = 2.
#[no_mangle]
pub unsafe extern "C" fn srcirc_verdict_simple(
    p: *const SrcircPolynomial,
    out: *mut SrcircVerdict,
) -> SrcircStatus {
    guard(|| {
        let c = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        *out = match lib(verdict_simple(c))?.class {
            VerdictClass::SimpleOnCircle => SrcircVerdict::SimpleOnCircle,
            VerdictClass::OnCircleNotSimple => SrcircVerdict::OnCircleNotSimple,
            VerdictClass::OffCircle => SrcircVerdict::OffCircle,
            VerdictClass::NotSimpleOnCircle => SrcircVerdict::NotSimpleOnCircle,
            VerdictClass::ConsistentWithOnCircle => SrcircVerdict::ConsistentWithOnCircle,
            VerdictClass::Degenerate => SrcircVerdict::Degenerate,
        };
        Ok(())
    })
}

/// Certified on-circle decision. `witness_n` (nullable) receives the failing
/// index for `CertifiedFail`, 0 otherwise.
#[no_mangle]
pub unsafe extern "C" fn srcirc_certify(
    p: *const SrcircPolynomial,
    out: *mut SrcircCertOutcome,
    witness_n: *mut usize,
) -> SrcircStatus {
    guard(|| {
        let c = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        let cert = lib(certify_on_circle(c))?;
        let (o, n) = match cert.outcome {
            CertOutcome::CertifiedOnT => (SrcircCertOutcome::CertifiedOnT, 0),
            CertOutcome::CertifiedFail { n, .. } => (SrcircCertOutcome::CertifiedFail, n),
            CertOutcome::Inconclusive { .. } => (SrcircCertOutcome::Inconclusive, 0),
        };
        *out = o;
        if !witness_n.is_null() {
            *witness_n = n;
        }
        Ok(())
    })
}

unsafe fn json_call(
    p: *const SrcircPolynomial,
    log_q: *const c_char,
    certify: bool,
    out: *mut *mut c_char,
    run: fn(&CoeffVector, &commands::Options) -> srcirc::Result<commands::Outcome>,
) -> SrcircStatus {
    guard(|| {
        let c = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        let opts = commands::Options {
            log_q: Some(log_scale(log_q, c.g())?.value().clone()),
            certify,
            ..Default::default()
        };
        let o = lib(run(c, &opts))?;
        put_string(out, o.json.to_string())
    })
}

/// Full check report as JSON (the same document as `srcirc check`).
/// `log_q` may be null for the default; `certify` nonzero enables the
/// certified path.
#[no_mangle]
pub unsafe extern "C" fn srcirc_check_json(
    p: *const SrcircPolynomial,
    log_q: *const c_char,
    certify: c_int,
    out: *mut *mut c_char,
) -> SrcircStatus {
    json_call(p, log_q, certify != 0, out, commands::check)
}

/// delta / Delta / gamma report as JSON.
#[no_mangle]
pub unsafe extern "C" fn srcirc_delta_json(
    p: *const SrcircPolynomial,
    log_q: *const c_char,
    out: *mut *mut c_char,
) -> SrcircStatus {
    json_call(p, log_q, false, out, commands::delta)
}

/// Step Hamiltonian as JSON with exact "p/q" steps.
#[no_mangle]
pub unsafe extern "C" fn srcirc_hamiltonian_json(
    p: *const SrcircPolynomial,
    log_q: *const c_char,
    out: *mut *mut c_char,
) -> SrcircStatus {
    json_call(p, log_q, false, out, commands::hamiltonian_cmd)
}

/// Certificate as JSON.
#[no_mangle]
pub unsafe extern "C" fn srcirc_certify_json(
    p: *const SrcircPolynomial,
    out: *mut *mut c_char,
) -> SrcircStatus {
    guard(|| {
        let c = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        let o = lib(commands::certify(c))?;
        put_string(out, o.json.to_string())
    })
}

/// `A(z)` and `B(z)` at `z = re + i im`; `out` receives
/// `[Re A, Im A, Re B, Im B]`.
#[no_mangle]
pub unsafe extern "C" fn srcirc_eval_ab(
    p: *const SrcircPolynomial,
    log_q: *const c_char,
    re: f64,
    im: f64,
    out: *mut f64,
) -> SrcircStatus {
    guard(|| {
        let c = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        let l = log_scale(log_q, c.g())?;
        let s = lib(embed_simple(c, &l))?;
        let (a, b) = lib(eval_a_b(&s, &l, Complex64::new(re, im)))?;
        let out = std::slice::from_raw_parts_mut(out, 4);
        out.copy_from_slice(&[a.re, a.im, b.re, b.im]);
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn srcirc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread (empty if none). The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn srcirc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
