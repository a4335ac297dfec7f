//! C ABI over `iwasawa-core`.
//!
//! Fields are opaque `IwField` handles created by [`iw_field_new`] and released
//! with [`iw_field_free`]. Every fallible function returns an [`IwStatus`] and
//! writes its result through an out-pointer; on failure the message is
//! available from [`iw_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iwasawa_core::lambda::lambda2_multiquad_imaginary;
use iwasawa_core::parity::classify;
use iwasawa_core::report;
use iwasawa_core::tower::{self, Behavior};
use iwasawa_core::{arith, Error, ErrorKind, LambdaPlus, MultiQuadField, Verdict};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwStatus {
    Ok = 0,
    /// Malformed input: bad radicands, non-prime modulus, level out of range.
    Input = 2,
    /// The input is well formed but outside the hypotheses of the formula.
    Hypothesis = 3,
    Internal = 4,
    NullPointer = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwVerdict {
    Odd = 0,
    Even = 1,
    EvenNotDiv4 = 2,
    OutOfScope = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwBehavior {
    Split = 0,
    Inert = 1,
    Ramified = 2,
    Mixed = 3,
}

/// Opaque multi-quadratic field.
pub struct IwField {
    inner: MultiQuadField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> IwStatus {
    match e.kind() {
        ErrorKind::Input => IwStatus::Input,
        ErrorKind::Hypothesis => IwStatus::Hypothesis,
        ErrorKind::Internal => IwStatus::Internal,
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

/// Run `f`, translating errors and panics into a status and the thread's
/// last-error message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> IwStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IwStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            IwStatus::NullPointer
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            IwStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Core(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn field_ref<'a>(f: *const IwField) -> Result<&'a MultiQuadField, Failure> {
    f.as_ref().map(|f| &f.inner).ok_or(Failure::Null("field"))
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    unsafe { out.write(value) };
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn iw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse comma-separated radicands (`"7,3,-1"`) into a new field handle.
///
/// # Safety
/// `radicands` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_field_new(radicands: *const c_char, out: *mut *mut IwField) -> IwStatus {
    guard(|| {
        let text = read_str(radicands, "radicands")?;
        let inner: MultiQuadField = text.parse()?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        write_out(out, Box::into_raw(Box::new(IwField { inner })))
    })
}

/// Release a handle from [`iw_field_new`]. NULL is ignored.
///
/// # Safety
/// `field` must come from [`iw_field_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn iw_field_free(field: *mut IwField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Rank of the field's square-class group, so the degree is `2^rank`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_field_rank(field: *const IwField, out: *mut u32) -> IwStatus {
    guard(|| {
        let k = field_ref(field)?;
        write_out(out, k.rank() as u32)
    })
}

/// Whether the field is imaginary (1) or real (0).
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_field_is_imaginary(field: *const IwField, out: *mut bool) -> IwStatus {
    guard(|| {
        let k = field_ref(field)?;
        write_out(out, k.is_imaginary())
    })
}

/// `lambda_2` of an imaginary field. A negative `lambda_plus` assumes
/// Greenberg's conjecture for the maximal real subfield; otherwise it is the
/// known value of `lambda_2(K^+)`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_lambda2(field: *const IwField, lambda_plus: i64, out: *mut u64) -> IwStatus {
    guard(|| {
        let k = field_ref(field)?;
        let plus = if lambda_plus < 0 {
            LambdaPlus::AssumeGreenberg
        } else {
            LambdaPlus::Supplied(lambda_plus as u64)
        };
        let l = lambda2_multiquad_imaginary(k, plus)?;
        write_out(out, l.lambda2)
    })
}

/// Class-number parity verdict.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_parity(field: *const IwField, out: *mut IwVerdict) -> IwStatus {
    guard(|| {
        let k = field_ref(field)?;
        let v = match classify(k)?.verdict {
            Verdict::Odd => IwVerdict::Odd,
            Verdict::Even => IwVerdict::Even,
            Verdict::EvenNotDiv4 => IwVerdict::EvenNotDiv4,
            Verdict::OutOfScope => IwVerdict::OutOfScope,
        };
        write_out(out, v)
    })
}

/// Least `f >= 1` with `p^f = +-1 (mod 2^n)`, for an odd prime `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_f2n(p: u64, n: u32, out: *mut u64) -> IwStatus {
    guard(|| write_out(out, arith::f2n(p, n)?))
}

/// Number of primes above the odd prime `p` in the n-th layer `Q_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_num_primes_qn(p: u64, n: u32, out: *mut u64) -> IwStatus {
    guard(|| write_out(out, tower::num_primes_qn(p, n)?))
}

/// Behaviour of the primes above `p` in `Q_n(sqrt(d)) / Q_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_splitting_quadratic(p: u64, d: i64, n: u32, out: *mut IwBehavior) -> IwStatus {
    guard(|| {
        let b = match tower::splitting_qn_quadratic(p, d, n)? {
            Behavior::Split => IwBehavior::Split,
            Behavior::Inert => IwBehavior::Inert,
            Behavior::Ramified => IwBehavior::Ramified,
            Behavior::Mixed => IwBehavior::Mixed,
        };
        write_out(out, b)
    })
}

/// Full JSON report for `command` (`"lambda"`, `"parity"` or `"genus"`) on
/// the given radicands, as the command-line tool prints with `--json`. The
/// report is written even when it carries errors; free it with
/// [`iw_string_free`].
///
/// # Safety
/// Both strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iw_report_json(
    command: *const c_char,
    radicands: *const c_char,
    out: *mut *mut c_char,
) -> IwStatus {
    guard(|| {
        let command = read_str(command, "command")?;
        let radicands = read_str(radicands, "radicands")?;
        let r = match command {
            "lambda" => report::cmd_lambda(radicands, Some(LambdaPlus::AssumeGreenberg)),
            "parity" => report::cmd_parity(radicands),
            "genus" => report::cmd_genus(radicands),
            other => return Err(Error::Parse(format!("unknown command {other:?}")).into()),
        };
        let json = CString::new(r.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
        write_out(out, json.into_raw())
    })
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn iw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
