//! C ABI for `gamma3lab`.
//!
//! Conventions:
//!
//! * Every fallible function returns a [`G3lStatus`]; results are written
//!   through out-pointers only on [`G3lStatus::Ok`].
//! * On failure a human-readable message is kept per thread and can be read
//!   with [`g3l_last_error_message`].
//! * Series and bound reports are opaque handles. Each `*_new`/`*_compute`
//!   has a matching `*_free`; passing null to a `*_free` is a no-op.
//! * Strings returned by the library are released with [`g3l_string_free`].
//! * Families are passed as the integer codes `G3L_FAMILY_F1..F3`.
//!
//! Panics never cross the boundary; they surface as [`G3lStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gamma3lab::family::{gamma3_closed_form, gamma3_via_series};
use gamma3lab::optimize::global_bound;
use gamma3lab::schwarz::carlson_check;
use gamma3lab::search::search_lower_bound;
use gamma3lab::{BlaschkeProduct, BoundReport, Error, Family, SchwarzTriple, TruncatedSeries};
use num_complex::Complex64;

pub const G3L_FAMILY_F1: u32 = 1;
pub const G3L_FAMILY_F2: u32 = 2;
pub const G3L_FAMILY_F3: u32 = 3;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G3lStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownFamily = 3,
    ZeroConstantTerm = 4,
    NotNormalized = 5,
    ZeroOutsideDisk = 6,
    OutsideRegion = 7,
    CertificationMismatch = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct G3lComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for G3lComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<G3lComplex> for Complex64 {
    fn from(z: G3lComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct G3lCarlsonSlacks {
    pub first: f64,
    pub second: f64,
    pub third: f64,
}

/// Summary of a lower-bound search. `remark_value` is NaN unless the search
/// was restricted to real witnesses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct G3lSearchSummary {
    pub best_value: f64,
    pub upper_bound: f64,
    pub remark_value: f64,
    pub iterations: u64,
    pub witness: G3lSchwarzTriple,
}

/// First three Taylor coefficients of a Schwarz function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct G3lSchwarzTriple {
    pub c1: G3lComplex,
    pub c2: G3lComplex,
    pub c3: G3lComplex,
}

/// Opaque truncated power series.
pub struct G3lSeries(TruncatedSeries);

/// Opaque result of `g3l_bound_compute`.
pub struct G3lBoundReport(BoundReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> G3lStatus {
    match err {
        Error::ZeroConstantTerm { .. } => G3lStatus::ZeroConstantTerm,
        Error::NotNormalized { .. } => G3lStatus::NotNormalized,
        Error::ZeroOutsideDisk { .. } => G3lStatus::ZeroOutsideDisk,
        Error::OutsideRegion { .. } => G3lStatus::OutsideRegion,
        Error::UnknownFamily(_) | Error::FamilyMismatch { .. } => G3lStatus::UnknownFamily,
        Error::CertificationMismatch { .. } => G3lStatus::CertificationMismatch,
        Error::BadRadius(_) | Error::UnknownEdge(_) | Error::InvalidArgument(_) => G3lStatus::InvalidArgument,
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), (G3lStatus, String)>) -> G3lStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => G3lStatus::Ok,
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("internal panic: {message}"));
            G3lStatus::Panic
        }
    }
}

fn lift(err: Error) -> (G3lStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (G3lStatus, String) {
    (G3lStatus::NullPointer, format!("{what} is null"))
}

fn family(code: u32) -> Result<Family, (G3lStatus, String)> {
    match code {
        G3L_FAMILY_F1 => Ok(Family::F1),
        G3L_FAMILY_F2 => Ok(Family::F2),
        G3L_FAMILY_F3 => Ok(Family::F3),
        other => Err((G3lStatus::UnknownFamily, format!("unknown family code {other}"))),
    }
}

fn triple(c1: G3lComplex, c2: G3lComplex, c3: G3lComplex) -> SchwarzTriple {
    SchwarzTriple::new(c1.into(), c2.into(), c3.into())
}

/// Writes `value` through `out`, failing on a null pointer.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (G3lStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Boxes `value` into a handle written through `out`. Nothing is allocated
/// when `out` is null.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), (G3lStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn g3l_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn g3l_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn g3l_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a series from `len` coefficients (order `len - 1`).
///
/// # Safety
/// `coeffs` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_series_new(coeffs: *const G3lComplex, len: usize, out: *mut *mut G3lSeries) -> G3lStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let values: Vec<Complex64> = std::slice::from_raw_parts(coeffs, len)
            .iter()
            .map(|&c| c.into())
            .collect();
        let series = TruncatedSeries::new(values).map_err(lift)?;
        write_handle(out, G3lSeries(series))
    })
}

/// # Safety
/// `series` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn g3l_series_free(series: *mut G3lSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Truncation order; 0 for a null handle.
///
/// # Safety
/// `series` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g3l_series_order(series: *const G3lSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.order())
}

/// Coefficient `k`; zero beyond the order.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_series_coeff(series: *const G3lSeries, k: usize, out: *mut G3lComplex) -> G3lStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        write_out(out, s.0.coeff(k).into())
    })
}

/// Cauchy product truncated to the smaller order.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_series_multiply(
    a: *const G3lSeries,
    b: *const G3lSeries,
    out: *mut *mut G3lSeries,
) -> G3lStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        write_handle(out, G3lSeries(a.0.multiply(&b.0)))
    })
}

/// Multiplicative inverse; fails with `ZeroConstantTerm`.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_series_reciprocal(series: *const G3lSeries, out: *mut *mut G3lSeries) -> G3lStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        let r = s.0.reciprocal().map_err(lift)?;
        write_handle(out, G3lSeries(r))
    })
}

/// `log(f(z)/z)` for a normalized `f`; fails with `NotNormalized`.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_series_log_over_z(series: *const G3lSeries, out: *mut *mut G3lSeries) -> G3lStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        let r = s.0.log_over_z().map_err(lift)?;
        write_handle(out, G3lSeries(r))
    })
}

/// Closed-form `γ₃` for the family and Schwarz coefficients `c1, c2, c3`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_gamma3_closed_form(
    family_code: u32,
    c1: G3lComplex,
    c2: G3lComplex,
    c3: G3lComplex,
    out: *mut G3lComplex,
) -> G3lStatus {
    guard(|| {
        let f = family(family_code)?;
        write_out(out, gamma3_closed_form(f, &triple(c1, c2, c3)).into())
    })
}

/// `γ₃` via the series logarithm for the Blaschke product
/// `rotation · z · Π (z − αₖ)/(1 − ᾱₖ z)`.
///
/// # Safety
/// `zeros` must point to `zero_count` readable values (or be null when
/// `zero_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_gamma3_blaschke(
    family_code: u32,
    zeros: *const G3lComplex,
    zero_count: usize,
    rotation: G3lComplex,
    out: *mut G3lComplex,
) -> G3lStatus {
    guard(|| {
        let f = family(family_code)?;
        let zeros: Vec<Complex64> = if zero_count == 0 {
            Vec::new()
        } else if zeros.is_null() {
            return Err(null("zeros"));
        } else {
            std::slice::from_raw_parts(zeros, zero_count)
                .iter()
                .map(|&c| c.into())
                .collect()
        };
        let w = BlaschkeProduct::new(zeros, rotation.into()).map_err(lift)?;
        write_out(out, gamma3_via_series(f, &w).map_err(lift)?.into())
    })
}

/// The three Carlson slacks; all are non-negative for a Schwarz function.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_carlson_check(
    c1: G3lComplex,
    c2: G3lComplex,
    c3: G3lComplex,
    out: *mut G3lCarlsonSlacks,
) -> G3lStatus {
    guard(|| {
        let s = carlson_check(&triple(c1, c2, c3));
        write_out(
            out,
            G3lCarlsonSlacks {
                first: s.first,
                second: s.second,
                third: s.third,
            },
        )
    })
}

/// Maximizes the family objective and certifies it on a dense grid.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_bound_compute(
    family_code: u32,
    grid_step: f64,
    newton_tol: f64,
    out: *mut *mut G3lBoundReport,
) -> G3lStatus {
    guard(|| {
        let f = family(family_code)?;
        let report = global_bound(f, grid_step, newton_tol).map_err(lift)?;
        write_handle(out, G3lBoundReport(report))
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g3l_bound_free(report: *mut G3lBoundReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Bound on `|γ₃|`; NaN for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g3l_bound_gamma3(report: *const G3lBoundReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.0.gamma3_bound)
}

/// Maximum of the objective over the region and where it is attained.
///
/// # Safety
/// `report` must be a live handle; `x`, `y` and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_bound_argmax(
    report: *const G3lBoundReport,
    x: *mut f64,
    y: *mut f64,
    value: *mut f64,
) -> G3lStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if x.is_null() || y.is_null() || value.is_null() {
            return Err(null("output pointer"));
        }
        x.write(r.0.global_argmax.x);
        y.write(r.0.global_argmax.y);
        value.write(r.0.global_max);
        Ok(())
    })
}

/// Number of interior critical points found.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g3l_bound_interior_count(report: *const G3lBoundReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.interior_points.len())
}

/// The full report as JSON. Free the result with [`g3l_string_free`].
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_bound_to_json(report: *const G3lBoundReport, out: *mut *mut c_char) -> G3lStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let json = serde_json::to_string(&r.0).map_err(|e| (G3lStatus::InvalidArgument, e.to_string()))?;
        let c = CString::new(json).map_err(|e| (G3lStatus::InvalidArgument, e.to_string()))?;
        write_out(out, c.into_raw())
    })
}

/// Randomized lower-bound search for `sup |γ₃|`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g3l_search(
    family_code: u32,
    iterations: u64,
    seed: u64,
    real_only: bool,
    max_degree: u32,
    out: *mut G3lSearchSummary,
) -> G3lStatus {
    guard(|| {
        let f = family(family_code)?;
        let iterations =
            usize::try_from(iterations).map_err(|_| (G3lStatus::InvalidArgument, "iterations too large".into()))?;
        let r = search_lower_bound(f, iterations, seed, real_only, max_degree as usize).map_err(lift)?;
        let t = r.witness_triple;
        write_out(
            out,
            G3lSearchSummary {
                best_value: r.best_value,
                upper_bound: r.upper_bound,
                remark_value: r.remark_value.unwrap_or(f64::NAN),
                iterations: r.iterations as u64,
                witness: G3lSchwarzTriple {
                    c1: t.c1.into(),
                    c2: t.c2.into(),
                    c3: t.c3.into(),
                },
            },
        )
    })
}
