//! C ABI for `critwave`.
//!
//! Every entry point returns a [`CwStatus`]; results come back through out
//! pointers, which are left untouched on failure. The message for the most
//! recent failure on the calling thread is available from
//! [`cw_last_error_message`]. Panics never cross the boundary; they surface as
//! [`CwStatus::Panic`].
//!
//! Handles ([`CwMoebiusTable`], [`CwTrace`]) are opaque, owned by the caller
//! once returned, and released with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use critwave::coefficients::{ck, CoefficientForm, CoefficientQuery};
use critwave::numtheory::{zeta_real, MoebiusTable};
use critwave::reciprocal::{reciprocal_zeta_partial, ReciprocalQuery};
use critwave::stability::{solve_stability_threshold, StabilityProblem, TailChoice};
use critwave::wave::{psi, WaveParams, WaveTrace, XGrid};
use critwave::{Complex64, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    InvalidArgument = 1,
    NonConvergent = 2,
    Io = 3,
    NullPointer = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwCoefficientForm {
    /// `(1 - n^-beta)^k`
    Exact = 0,
    /// `exp(-k / n^beta)`
    Exponential = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwTailChoice {
    /// Integral bound `N_low^{1-alpha} / (alpha - 1)`.
    Recomputed = 0,
    /// The finite sum over `N_low < n <= N_high`.
    DirectSum = 1,
    /// The printed constant `(2/65) 1e-26`.
    Printed = 2,
}

/// Möbius values `mu(1..=limit)`.
pub struct CwMoebiusTable(MoebiusTable);

/// A sampled wave `(x_i, psi(x_i))`.
pub struct CwTrace(WaveTrace);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    // interior NULs would truncate the C string anyway
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CwStatus {
    match e {
        Error::InvalidArgument(_) => CwStatus::InvalidArgument,
        Error::NonConvergent(_) => CwStatus::NonConvergent,
        _ => CwStatus::Io,
    }
}

enum Failure {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, recording any failure for [`cw_last_error_message`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CwStatus::Ok
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            CwStatus::NullPointer
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            CwStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(p: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    p.write(value);
    Ok(())
}

/// Message for the last failed call on this thread, or null after a success.
///
/// The pointer stays valid until the next `cw_*` call on the same thread.
#[no_mangle]
pub extern "C" fn cw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Sieves `mu(n)` for `1 <= n <= limit` into a new table.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_moebius_sieve(limit: u64, out: *mut *mut CwMoebiusTable) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let table = MoebiusTable::sieve(limit)?;
        write(out, Box::into_raw(Box::new(CwMoebiusTable(table))), "out")
    })
}

/// # Safety
/// `table` must be null or a pointer returned by [`cw_moebius_sieve`] that was not freed.
#[no_mangle]
pub unsafe extern "C" fn cw_moebius_free(table: *mut CwMoebiusTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be a live table handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cw_moebius_limit(table: *const CwMoebiusTable, out: *mut u64) -> CwStatus {
    guard(|| {
        let t = deref(table, "table")?;
        write(out, t.0.limit(), "out")
    })
}

/// `mu(n)`; `n` outside `1..=limit` is an invalid argument.
///
/// # Safety
/// `table` must be a live table handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cw_moebius_mu(table: *const CwMoebiusTable, n: u64, out: *mut i8) -> CwStatus {
    guard(|| {
        let t = deref(table, "table")?;
        let mu = t
            .0
            .get(n)
            .ok_or_else(|| Error::InvalidArgument(format!("n = {n} outside 1..={}", t.0.limit())))?;
        write(out, mu, "out")
    })
}

/// `c_k(alpha, beta)` truncated at `n <= truncation`; the table must reach `truncation`.
///
/// # Safety
/// `table` must be a live table handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cw_ck(
    table: *const CwMoebiusTable,
    k: f64,
    alpha: f64,
    beta: f64,
    truncation: usize,
    form: CwCoefficientForm,
    out: *mut f64,
) -> CwStatus {
    guard(|| {
        let t = deref(table, "table")?;
        let form = match form {
            CwCoefficientForm::Exact => CoefficientForm::Exact,
            CwCoefficientForm::Exponential => CoefficientForm::Exponential,
        };
        let q = CoefficientQuery::new(k, alpha, beta, truncation, form)?;
        write(out, ck(&q, &t.0)?, "out")
    })
}

/// Riemann zeta for real `s > 1`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cw_zeta_real(s: f64, out: *mut f64) -> CwStatus {
    guard(|| write(out, zeta_real(s)?, "out"))
}

/// Final partial sum of the `1/zeta(s)` expansion at `s = s_re + i s_im`.
///
/// # Safety
/// `table` must be a live handle covering `truncation`; `out_re` and `out_im` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cw_reciprocal_zeta(
    table: *const CwMoebiusTable,
    s_re: f64,
    s_im: f64,
    alpha: f64,
    beta: f64,
    truncation: usize,
    k_max: u64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> CwStatus {
    guard(|| {
        let t = deref(table, "table")?;
        if out_re.is_null() || out_im.is_null() {
            return Err(Failure::Null("out_re/out_im"));
        }
        let q = ReciprocalQuery {
            truncation,
            ..ReciprocalQuery::new(Complex64::new(s_re, s_im))
                .with_exponents(alpha, beta)
                .with_k_max(k_max)
        };
        let v = reciprocal_zeta_partial(&q, &t.0)?.final_value;
        write(out_re, v.re, "out_re")?;
        write(out_im, v.im, "out_im")
    })
}

/// First `x >= 0` where the truncation change `N_low -> N_high` reaches
/// `amplitude * tolerance`.
///
/// `*found` is 0 when the bound never reaches it, and `*out` is then left untouched.
///
/// # Safety
/// `out` and `found` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cw_stability_threshold(
    alpha: f64,
    beta: f64,
    rho: f64,
    n_low: u64,
    n_high: u64,
    amplitude: f64,
    tolerance: f64,
    tail: CwTailChoice,
    out: *mut f64,
    found: *mut i32,
) -> CwStatus {
    guard(|| {
        if out.is_null() || found.is_null() {
            return Err(Failure::Null("out/found"));
        }
        let p = StabilityProblem {
            alpha,
            beta,
            rho,
            n_low,
            n_high,
            amplitude,
            relative_tolerance: tolerance,
        };
        let choice = match tail {
            CwTailChoice::Recomputed => TailChoice::Recomputed,
            CwTailChoice::DirectSum => TailChoice::DirectSum,
            CwTailChoice::Printed => TailChoice::Printed,
        };
        let report = solve_stability_threshold(&p, choice)?;
        match report.x_threshold {
            Some(x) => {
                write(out, x, "out")?;
                write(found, 1, "found")
            }
            None => write(found, 0, "found"),
        }
    })
}

/// Samples `psi(x; alpha, beta, rho)` on `x_min, x_min + step, ..., <= x_max`.
///
/// # Safety
/// `table` must be a live handle covering `truncation`; `out` valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_psi(
    table: *const CwMoebiusTable,
    alpha: f64,
    beta: f64,
    rho: f64,
    truncation: usize,
    x_min: f64,
    x_max: f64,
    step: f64,
    out: *mut *mut CwTrace,
) -> CwStatus {
    guard(|| {
        let t = deref(table, "table")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let params = WaveParams {
            alpha,
            beta,
            rho,
            truncation,
            grid: XGrid::new(x_min, x_max, step)?,
        };
        let trace = psi(&params, &t.0)?;
        write(out, Box::into_raw(Box::new(CwTrace(trace))), "out")
    })
}

/// # Safety
/// `trace` must be null or a pointer returned by [`cw_psi`] that was not freed.
#[no_mangle]
pub unsafe extern "C" fn cw_trace_free(trace: *mut CwTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// # Safety
/// `trace` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cw_trace_len(trace: *const CwTrace, out: *mut usize) -> CwStatus {
    guard(|| {
        let t = deref(trace, "trace")?;
        write(out, t.0.samples.len(), "out")
    })
}

/// Copies the samples into `xs` and `values`, each of capacity `len`.
///
/// `len` must be at least the trace length; either buffer may be null to skip it.
///
/// # Safety
/// Non-null buffers must be valid for writing `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cw_trace_copy(trace: *const CwTrace, xs: *mut f64, values: *mut f64, len: usize) -> CwStatus {
    guard(|| {
        let t = deref(trace, "trace")?;
        let n = t.0.samples.len();
        if len < n {
            return Err(Error::InvalidArgument(format!("buffer holds {len} samples, trace has {n}")).into());
        }
        for (i, s) in t.0.samples.iter().enumerate() {
            if !xs.is_null() {
                xs.add(i).write(s.x);
            }
            if !values.is_null() {
                values.add(i).write(s.value);
            }
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_a_status() {
        let st = guard(|| panic!("boom"));
        assert_eq!(st, CwStatus::Panic);
        let msg = unsafe { std::ffi::CStr::from_ptr(cw_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "panic: boom");
        assert_eq!(guard(|| Ok(())), CwStatus::Ok);
        assert!(cw_last_error_message().is_null());
    }
}
