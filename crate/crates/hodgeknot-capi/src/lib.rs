//! C ABI for the `hodgeknot` library.
//!
//! Conventions:
//! - Every function returns an [`HkStatus`]; `HK_STATUS_OK` (0) means
//!   success.  On failure a thread-local message is available through
//!   [`hk_last_error_message`] until the next failing call.
//! - Objects are opaque handles created by `hk_*_new`-style functions
//!   and must be released with the matching `hk_*_free`.  Passing null
//!   where a handle is expected yields `HK_STATUS_NULL_POINTER`; `free`
//!   functions accept null as a no-op.
//! - Strings are returned by the two-call pattern: pass a buffer and
//!   its capacity, read back the required size (including the NUL
//!   terminator).  If the buffer is too small the function reports
//!   `HK_STATUS_BUFFER_TOO_SMALL` and writes nothing else.
//! - Panics never unwind across the boundary; they surface as
//!   `HK_STATUS_PANIC`.

use hodgeknot::algebraic::CirclePoint;
use hodgeknot::fixtures::{by_name, FixtureRecord};
use hodgeknot::qpoly::qi;
use hodgeknot::report::{report_json_bytes, run_pipeline, InvariantReport, PipelineOptions};
use hodgeknot::seifert::tl_signature_direct;
use hodgeknot::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every ABI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HkStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was malformed (bad name, bad size, bad fraction).
    InvalidArgument = 2,
    /// The computation itself failed; see `hk_last_error_message`.
    ComputationError = 3,
    /// The two computation routes disagreed during a cross-checked run.
    Mismatch = 4,
    /// The provided buffer cannot hold the result.
    BufferTooSmall = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// Opaque handle to a named Seifert matrix.
pub struct HkSeifert {
    record: FixtureRecord,
}

/// Opaque handle to a computed invariant report.
pub struct HkReport {
    report: InvariantReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let cleaned: Vec<u8> = msg.bytes().filter(|&b| b != 0).collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(cleaned).expect("nul filtered"));
    });
}

fn status_of(err: &Error) -> HkStatus {
    match err {
        Error::PipelineMismatch(_) => HkStatus::Mismatch,
        Error::Parse { .. } | Error::InvalidParameters(_) => HkStatus::InvalidArgument,
        _ => HkStatus::ComputationError,
    }
}

fn guard(f: impl FnOnce() -> HkStatus) -> HkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(&msg);
            HkStatus::Panic
        }
    }
}

/// Copy `text` (plus a NUL terminator) into `buf` of capacity `cap`;
/// always report the required size through `needed` when non-null.
fn copy_out(text: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> HkStatus {
    let required = text.len() + 1;
    if !needed.is_null() {
        unsafe { *needed = required };
    }
    if buf.is_null() || cap < required {
        return HkStatus::BufferTooSmall;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
    }
    HkStatus::Ok
}

/// Last error message of the current thread, or null if none was
/// recorded.  The pointer stays valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Version of the underlying library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Look up a built-in example matrix by name (for example `"trefoil"`,
/// `"8_20"` or `"torus(3,5)"`).
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid
/// destination pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_seifert_by_name(
    name: *const c_char,
    out: *mut *mut HkSeifert,
) -> HkStatus {
    guard(|| {
        if name.is_null() || out.is_null() {
            return HkStatus::NullPointer;
        }
        let Ok(name) = unsafe { CStr::from_ptr(name) }.to_str() else {
            set_error("name is not valid UTF-8");
            return HkStatus::InvalidArgument;
        };
        match by_name(name) {
            Ok(record) => {
                unsafe { *out = Box::into_raw(Box::new(HkSeifert { record })) };
                HkStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                HkStatus::InvalidArgument
            }
        }
    })
}

/// Build a Seifert matrix from a row-major array of `size * size`
/// integer entries.
///
/// # Safety
/// `name` must be NUL-terminated, `entries` must point to at least
/// `size * size` values, and `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_seifert_from_integers(
    name: *const c_char,
    size: usize,
    entries: *const i64,
    out: *mut *mut HkSeifert,
) -> HkStatus {
    guard(|| {
        if name.is_null() || out.is_null() || (entries.is_null() && size > 0) {
            return HkStatus::NullPointer;
        }
        let Ok(name) = unsafe { CStr::from_ptr(name) }.to_str() else {
            set_error("name is not valid UTF-8");
            return HkStatus::InvalidArgument;
        };
        let raw = unsafe { std::slice::from_raw_parts(entries, size * size) };
        match FixtureRecord::new(name, size, raw.iter().map(|&x| qi(x)).collect()) {
            Ok(record) => {
                unsafe { *out = Box::into_raw(Box::new(HkSeifert { record })) };
                HkStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                HkStatus::InvalidArgument
            }
        }
    })
}

/// Number of rows of the matrix behind the handle.
///
/// # Safety
/// `seifert` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_seifert_size(seifert: *const HkSeifert, out: *mut usize) -> HkStatus {
    guard(|| {
        if seifert.is_null() || out.is_null() {
            return HkStatus::NullPointer;
        }
        unsafe { *out = (*seifert).record.size };
        HkStatus::Ok
    })
}

/// Release a matrix handle; null is accepted and ignored.
///
/// # Safety
/// `seifert` must be null or a pointer produced by this library that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn hk_seifert_free(seifert: *mut HkSeifert) {
    if !seifert.is_null() {
        drop(unsafe { Box::from_raw(seifert) });
    }
}

/// Run the full invariant pipeline.  With `crosscheck` nonzero the two
/// independent routes are compared and a disagreement reports
/// `HK_STATUS_MISMATCH`.
///
/// # Safety
/// `seifert` must be a live handle and `out` a valid destination
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_report_compute(
    seifert: *const HkSeifert,
    crosscheck: u8,
    out: *mut *mut HkReport,
) -> HkStatus {
    guard(|| {
        if seifert.is_null() || out.is_null() {
            return HkStatus::NullPointer;
        }
        let record = unsafe { &(*seifert).record };
        let opts = PipelineOptions {
            crosscheck: crosscheck != 0,
            ..Default::default()
        };
        match run_pipeline(record, &opts) {
            Ok(report) => {
                unsafe { *out = Box::into_raw(Box::new(HkReport { report })) };
                HkStatus::Ok
            }
            Err(e) => {
                let status = status_of(&e);
                set_error(&e.to_string());
                status
            }
        }
    })
}

/// Release a report handle; null is accepted and ignored.
///
/// # Safety
/// `report` must be null or a pointer produced by this library that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn hk_report_free(report: *mut HkReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Serialize the report as deterministic pretty-printed JSON using the
/// two-call pattern (see the module documentation).
///
/// # Safety
/// `report` must be a live handle; `buf` may be null when only the
/// required size is requested through `needed`.
#[no_mangle]
pub unsafe extern "C" fn hk_report_json(
    report: *const HkReport,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HkStatus {
    guard(|| {
        if report.is_null() {
            return HkStatus::NullPointer;
        }
        let bytes = report_json_bytes(unsafe { &(*report).report });
        copy_out(
            std::str::from_utf8(&bytes).expect("reports are UTF-8"),
            buf,
            cap,
            needed,
        )
    })
}

/// Canonical torsion-order polynomial of the report, as text.
///
/// # Safety
/// Same contract as [`hk_report_json`].
#[no_mangle]
pub unsafe extern "C" fn hk_report_alexander(
    report: *const HkReport,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HkStatus {
    guard(|| {
        if report.is_null() {
            return HkStatus::NullPointer;
        }
        let text = unsafe { (*report).report.alexander.clone() };
        copy_out(&text, buf, cap, needed)
    })
}

/// Minimal generator count of the torsion module.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_report_nakanishi_index(
    report: *const HkReport,
    out: *mut usize,
) -> HkStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return HkStatus::NullPointer;
        }
        unsafe { *out = (*report).report.nakanishi_index };
        HkStatus::Ok
    })
}

/// Rank of the split-off zero block found during reduction.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_report_zero_rank(
    report: *const HkReport,
    out: *mut usize,
) -> HkStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return HkStatus::NullPointer;
        }
        unsafe { *out = (*report).report.zero_rank };
        HkStatus::Ok
    })
}

/// Exact Tristram-Levine signature and nullity at the circle point
/// with turn fraction `numer / denom`.
///
/// # Safety
/// `seifert` must be a live handle; `out_signature` and `out_nullity`
/// must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hk_signature(
    seifert: *const HkSeifert,
    numer: i64,
    denom: i64,
    out_signature: *mut i64,
    out_nullity: *mut usize,
) -> HkStatus {
    guard(|| {
        if seifert.is_null() || out_signature.is_null() || out_nullity.is_null() {
            return HkStatus::NullPointer;
        }
        let z = match CirclePoint::from_turn_fraction(numer, denom) {
            Ok(z) => z,
            Err(e) => {
                set_error(&e.to_string());
                return HkStatus::InvalidArgument;
            }
        };
        let s = unsafe { (*seifert).record.seifert_matrix() };
        let (signature, nullity) = tl_signature_direct(&s, &z);
        unsafe {
            *out_signature = signature;
            *out_nullity = nullity;
        }
        HkStatus::Ok
    })
}
