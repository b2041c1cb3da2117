//! C interface to the polynomial vector field toolkit.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! `PvfStatus`; on failure `pvf_last_error_message` describes the cause.
//! Strings returned by the library are released with `pvf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use pvf::flow::FlowError;
use pvf::invariants::{classify, InvariantsError, MetricGraph};
use pvf::realize::{realize, RealizationStatus, RealizeError, RealizeOptions};
use pvf::PolynomialVF;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PvfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Uncertain = 4,
    NoConvergence = 5,
    IndexOutOfRange = 6,
    Panic = 7,
}

/// A monic centered polynomial vector field.
pub struct PvfPolynomial(PolynomialVF);

/// A combinatorial class with its invariants.
pub struct PvfMetricGraph(MetricGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(message: impl ToString) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message.to_string()));
}

fn fail(status: PvfStatus, message: impl ToString) -> PvfStatus {
    set_error(message);
    status
}

fn guarded(f: impl FnOnce() -> PvfStatus) -> PvfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(PvfStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, PvfStatus> {
    if text.is_null() {
        return Err(fail(PvfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text).to_str().map_err(|_| fail(PvfStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn invariants_status(e: &InvariantsError) -> PvfStatus {
    match e {
        InvariantsError::Flow(FlowError::IndexOutOfRange { .. }) => PvfStatus::IndexOutOfRange,
        InvariantsError::Text(_) | InvariantsError::InvalidMetricGraph(_) | InvariantsError::Combinat(_) => {
            PvfStatus::InvalidInput
        }
        _ => PvfStatus::Uncertain,
    }
}

/// Static version string; do not free.
#[no_mangle]
pub extern "C" fn pvf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failure on this thread, or null. Free with
/// `pvf_string_free`.
#[no_mangle]
pub extern "C" fn pvf_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone()).map(into_c_string).unwrap_or(ptr::null_mut())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pvf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `coeffs: a0,...,1` or `roots: z1^m1, ...`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pvf_polynomial_parse(text: *const c_char, out: *mut *mut PvfPolynomial) -> PvfStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PvfStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match PolynomialVF::parse(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PvfPolynomial(p)));
                PvfStatus::Ok
            }
            Err(e) => fail(PvfStatus::InvalidInput, e),
        }
    })
}

/// Build from `len` coefficients, constant term first; the last must be 1
/// and the second to last 0.
///
/// # Safety
/// `re` and `im` must each point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pvf_polynomial_from_coeffs(
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut PvfPolynomial,
) -> PvfStatus {
    guarded(|| {
        if re.is_null() || im.is_null() || out.is_null() {
            return fail(PvfStatus::NullPointer, "null argument");
        }
        let re = std::slice::from_raw_parts(re, len);
        let im = std::slice::from_raw_parts(im, len);
        let coeffs: Vec<Complex64> = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        match PolynomialVF::from_coeffs(&coeffs) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PvfPolynomial(p)));
                PvfStatus::Ok
            }
            Err(e) => fail(PvfStatus::InvalidInput, e),
        }
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pvf_polynomial_free(p: *mut PvfPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvf_polynomial_degree(p: *const PvfPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.0.degree())
}

/// Coefficient text (`coeffs: ...`); free with `pvf_string_free`.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvf_polynomial_to_text(p: *const PvfPolynomial) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| into_c_string(p.0.coeffs_text()))
}

/// Coefficient `index` (0 = constant term).
///
/// # Safety
/// `p` must be a live handle; `re` and `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pvf_polynomial_coeff(
    p: *const PvfPolynomial,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> PvfStatus {
    let Some(p) = p.as_ref() else { return fail(PvfStatus::NullPointer, "null polynomial") };
    if re.is_null() || im.is_null() {
        return fail(PvfStatus::NullPointer, "null output pointer");
    }
    match p.0.coeffs().get(index) {
        Some(c) => {
            *re = c.re;
            *im = c.im;
            PvfStatus::Ok
        }
        None => fail(PvfStatus::IndexOutOfRange, format!("coefficient {index} out of range")),
    }
}

/// Trace all separatrices and compute the metric graph.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pvf_classify(p: *const PvfPolynomial, out: *mut *mut PvfMetricGraph) -> PvfStatus {
    guarded(|| {
        let Some(p) = p.as_ref() else { return fail(PvfStatus::NullPointer, "null polynomial") };
        if out.is_null() {
            return fail(PvfStatus::NullPointer, "null output pointer");
        }
        match classify(&p.0) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(PvfMetricGraph(c.metric)));
                PvfStatus::Ok
            }
            Err(e) => fail(invariants_status(&e), e),
        }
    })
}

/// Parse the metric-graph text format.
///
/// # Safety
/// `text` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_parse(text: *const c_char, out: *mut *mut PvfMetricGraph) -> PvfStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PvfStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match MetricGraph::from_text(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PvfMetricGraph(g)));
                PvfStatus::Ok
            }
            Err(e) => fail(PvfStatus::InvalidInput, e),
        }
    })
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_free(g: *mut PvfMetricGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Metric-graph text (bit-exact); free with `pvf_string_free`.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_to_text(g: *const PvfMetricGraph) -> *mut c_char {
    g.as_ref().map_or(ptr::null_mut(), |g| into_c_string(g.0.to_text()))
}

/// Bracket notation of the class; free with `pvf_string_free`.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_class(g: *const PvfMetricGraph) -> *mut c_char {
    g.as_ref().map_or(ptr::null_mut(), |g| into_c_string(g.0.class().to_string()))
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_tau_count(g: *const PvfMetricGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.taus().len())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_alpha_count(g: *const PvfMetricGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.alphas().len())
}

/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_tau(g: *const PvfMetricGraph, index: usize, out: *mut f64) -> PvfStatus {
    let Some(g) = g.as_ref() else { return fail(PvfStatus::NullPointer, "null metric graph") };
    if out.is_null() {
        return fail(PvfStatus::NullPointer, "null output pointer");
    }
    match g.0.taus().get(index) {
        Some(&t) => {
            *out = t;
            PvfStatus::Ok
        }
        None => fail(PvfStatus::IndexOutOfRange, format!("tau {index} out of range")),
    }
}

/// # Safety
/// `g` must be a live handle; `re` and `im` valid.
#[no_mangle]
pub unsafe extern "C" fn pvf_metric_graph_alpha(
    g: *const PvfMetricGraph,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> PvfStatus {
    let Some(g) = g.as_ref() else { return fail(PvfStatus::NullPointer, "null metric graph") };
    if re.is_null() || im.is_null() {
        return fail(PvfStatus::NullPointer, "null output pointer");
    }
    match g.0.alphas().get(index) {
        Some(a) => {
            *re = a.re;
            *im = a.im;
            PvfStatus::Ok
        }
        None => fail(PvfStatus::IndexOutOfRange, format!("alpha {index} out of range")),
    }
}

/// Construct a polynomial with the given metric graph.
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pvf_realize(g: *const PvfMetricGraph, seed: u64, out: *mut *mut PvfPolynomial) -> PvfStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else { return fail(PvfStatus::NullPointer, "null metric graph") };
        if out.is_null() {
            return fail(PvfStatus::NullPointer, "null output pointer");
        }
        let opts = RealizeOptions { rng_seed: seed, ..Default::default() };
        match realize(&g.0, None, &opts) {
            Ok(r) if r.status == RealizationStatus::Converged => {
                *out = Box::into_raw(Box::new(PvfPolynomial(r.polynomial)));
                PvfStatus::Ok
            }
            Ok(r) => fail(PvfStatus::NoConvergence, format!("realization ended with status {}", r.status)),
            Err(RealizeError::Invariants(e)) => fail(invariants_status(&e), e),
            Err(e @ (RealizeError::InvalidTarget(_) | RealizeError::Combinat(_) | RealizeError::Poly(_))) => {
                fail(PvfStatus::InvalidInput, e)
            }
            Err(e) => fail(PvfStatus::NoConvergence, e),
        }
    })
}
