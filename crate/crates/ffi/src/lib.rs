//! C interface to the `mopls` library.
//!
//! Squares are opaque `MoplsSquare` handles owned by the caller and released
//! with [`mopls_square_free`]. Every fallible function returns a
//! [`MoplsStatus`]; on failure [`mopls_last_error_message`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mopls::codes::{covering_radius, min_distance, to_code};
use mopls::construct::{k_mopls_diagonal, k_ols, min_mopls, min_mpls};
use mopls::format::{self, Format};
use mopls::maximality::is_maximal;
use mopls::{Cell, Error, KPartialSquare, Symbol};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoplsStatus {
    Ok = 0,
    NullArgument = 1,
    /// Malformed text, out-of-range values, or an insertion that breaks
    /// validity.
    InvalidInput = 2,
    Infeasible = 3,
    Unsupported = 4,
    /// The quantity does not exist for this input, e.g. the minimum distance
    /// of a code with fewer than two words.
    Undefined = 5,
    /// The word space is too large for the exact computation.
    ComputeLimit = 6,
    Internal = 7,
}

/// Opaque square handle.
pub struct MoplsSquare(KPartialSquare);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoplsFormat {
    Grid = 0,
    Json = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> MoplsStatus {
    match err {
        Error::Infeasible(_) | Error::NotPrimePower(_) | Error::TooManyLayers { .. } => MoplsStatus::Infeasible,
        Error::Unsupported(_) => MoplsStatus::Unsupported,
        Error::Undefined(_) | Error::Hypothesis(_) => MoplsStatus::Undefined,
        Error::ComputeGate { .. } => MoplsStatus::ComputeLimit,
        Error::Io(_) => MoplsStatus::Internal,
        _ => MoplsStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), MoplsStatus>) -> MoplsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MoplsStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            MoplsStatus::Internal
        }
    }
}

fn fail(err: Error) -> MoplsStatus {
    set_error(err.to_string());
    status_of(&err)
}

fn null(what: &str) -> MoplsStatus {
    set_error(format!("{what} is null"));
    MoplsStatus::NullArgument
}

unsafe fn square_ref<'a>(sq: *const MoplsSquare) -> Result<&'a KPartialSquare, MoplsStatus> {
    sq.as_ref().map(|s| &s.0).ok_or_else(|| null("square"))
}

unsafe fn hand_out(out: *mut *mut MoplsSquare, result: mopls::Result<KPartialSquare>) -> Result<(), MoplsStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let sq = result.map_err(fail)?;
    *out = Box::into_raw(Box::new(MoplsSquare(sq)));
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mopls_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Empty square of order `n` with `k` layers.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_new(n: usize, k: usize, out: *mut *mut MoplsSquare) -> MoplsStatus {
    guard(|| hand_out(out, KPartialSquare::new(n, k)))
}

/// Parses a text grid or a JSON record.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_parse(text: *const c_char, out: *mut *mut MoplsSquare) -> MoplsStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| {
            set_error(format!("text is not UTF-8: {e}"));
            MoplsStatus::InvalidInput
        })?;
        hand_out(out, format::parse(s))
    })
}

/// Fills `(row, col)` with `len` 0-based symbols, keeping the square valid.
///
/// # Safety
/// `sq` must be a live handle and `entries` must point to `len` symbols.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_insert(
    sq: *mut MoplsSquare,
    row: usize,
    col: usize,
    entries: *const u16,
    len: usize,
) -> MoplsStatus {
    guard(|| {
        let sq = sq.as_mut().ok_or_else(|| null("square"))?;
        if entries.is_null() && len > 0 {
            return Err(null("entries"));
        }
        let tuple: Vec<Symbol> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(entries, len).to_vec()
        };
        sq.0.insert(Cell::new(row, col), tuple).map_err(fail)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_construct_min_mopls(n: usize, out: *mut *mut MoplsSquare) -> MoplsStatus {
    guard(|| hand_out(out, min_mopls(n)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_construct_min_mpls(n: usize, out: *mut *mut MoplsSquare) -> MoplsStatus {
    guard(|| hand_out(out, min_mpls(n)))
}

/// Block-diagonal square from `len` block orders summing to `n`.
///
/// # Safety
/// `blocks` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_construct_k_mopls(
    n: usize,
    k: usize,
    blocks: *const usize,
    len: usize,
    out: *mut *mut MoplsSquare,
) -> MoplsStatus {
    guard(|| {
        if blocks.is_null() {
            return Err(null("blocks"));
        }
        let orders = std::slice::from_raw_parts(blocks, len);
        hand_out(out, k_mopls_diagonal(n, k, orders))
    })
}

/// `k` mutually orthogonal Latin squares of order `m`, superimposed.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_construct_k_ols(k: usize, m: usize, out: *mut *mut MoplsSquare) -> MoplsStatus {
    guard(|| hand_out(out, k_ols(k, m).map(|b| b.into_square())))
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `sq` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_free(sq: *mut MoplsSquare) {
    if !sq.is_null() {
        drop(Box::from_raw(sq));
    }
}

/// Order of the square, or 0 for null.
///
/// # Safety
/// `sq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_order(sq: *const MoplsSquare) -> usize {
    sq.as_ref().map_or(0, |s| s.0.order())
}

/// # Safety
/// `sq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_layers(sq: *const MoplsSquare) -> usize {
    sq.as_ref().map_or(0, |s| s.0.layers())
}

/// # Safety
/// `sq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_filled(sq: *const MoplsSquare) -> usize {
    sq.as_ref().map_or(0, |s| s.0.filled_count())
}

/// # Safety
/// `sq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_is_maximal(sq: *const MoplsSquare, out: *mut bool) -> MoplsStatus {
    guard(|| {
        let sq = square_ref(sq)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = is_maximal(sq).is_maximal();
        Ok(())
    })
}

/// Serializes to a newly allocated string released with
/// [`mopls_string_free`].
///
/// # Safety
/// `sq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_square_serialize(
    sq: *const MoplsSquare,
    format: MoplsFormat,
    out: *mut *mut c_char,
) -> MoplsStatus {
    guard(|| {
        let sq = square_ref(sq)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let fmt = match format {
            MoplsFormat::Grid => Format::Grid,
            MoplsFormat::Json => Format::Json,
        };
        let text = format::serialize(sq, fmt).map_err(fail)?;
        *out = CString::new(text)
            .expect("serialized squares contain no nul")
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mopls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Minimum Hamming distance between the square's cell tuples.
///
/// # Safety
/// `sq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_code_min_distance(sq: *const MoplsSquare, out: *mut usize) -> MoplsStatus {
    guard(|| {
        let sq = square_ref(sq)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = min_distance(&to_code(sq)).map_err(fail)?;
        Ok(())
    })
}

/// Exact covering radius of the square's code.
///
/// # Safety
/// `sq` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mopls_code_covering_radius(sq: *const MoplsSquare, out: *mut usize) -> MoplsStatus {
    guard(|| {
        let sq = square_ref(sq)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = covering_radius(&to_code(sq)).map_err(fail)?.0;
        Ok(())
    })
}

/// `ceil(n^2 / 3)`, a lower bound on the size of a maximal orthogonal pair
/// of order `n`.
#[no_mangle]
pub extern "C" fn mopls_lower_bound(n: usize) -> usize {
    mopls::verify::lower_bound(n)
}
