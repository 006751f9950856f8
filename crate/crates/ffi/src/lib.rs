//! C ABI for `rrfinite`.
//!
//! Structures are opaque `RrStructure *` handles created by one of the
//! `rr_structure_*` constructors and released with `rr_structure_free`.
//! Divisors and rationals cross the boundary as text (`"3,-1/2"`, `"5/3"`).
//! Every call returns an [`RrStatus`]; on failure a message is available from
//! `rr_last_error` until the next call on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with `rr_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rrfinite::{emit_csv, emit_svg, examples, region, sample_region, Divisor, Error, RRStructure, RegionSpec, WeightedGraph};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    LengthMismatch = 4,
    InvalidStructure = 5,
    InvalidGraph = 6,
    InvalidRegion = 7,
    Panic = 8,
}

/// Opaque handle to a validated Riemann-Roch structure.
pub struct RrStructure(RRStructure);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RrStatus {
    match e {
        Error::ParseRational(_) | Error::ParseDivisor(..) | Error::EmptyDivisor | Error::Json(_) | Error::Csv(_) => {
            RrStatus::Parse
        }
        Error::LengthMismatch { .. } => RrStatus::LengthMismatch,
        Error::NonZeroDegreeGenerator { .. }
        | Error::EmptyGenerators
        | Error::InvalidStructure(_)
        | Error::UnknownExample(_) => RrStatus::InvalidStructure,
        Error::InvalidGraph(_) | Error::DisconnectedGraph | Error::TooManyVertices(_) | Error::BaseVertexOutOfRange { .. } => {
            RrStatus::InvalidGraph
        }
        Error::InvalidRegion(_) | Error::SvgDimension(_) => RrStatus::InvalidRegion,
    }
}

struct Fail(RrStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, translating errors and panics into a status plus thread-local message.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> RrStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RrStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RrStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(RrStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: caller guarantees a valid nul-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Fail(RrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const RrStructure) -> Result<&'a RRStructure, Fail> {
    // SAFETY: non-null handles come from rr_structure_* constructors.
    unsafe { p.as_ref() }
        .map(|h| &h.0)
        .ok_or_else(|| Fail(RrStatus::NullPointer, "structure handle is null".into()))
}

fn check_out<T>(p: *mut T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(RrStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn put_structure(out: *mut *mut RrStructure, s: RRStructure) {
    // SAFETY: `out` checked non-null by the caller of this helper.
    unsafe { *out = Box::into_raw(Box::new(RrStructure(s))) };
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(RrStatus::Panic, "string contains nul".into()))?;
    // SAFETY: `out` checked non-null by the caller of this helper.
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn put_bool(out: *mut bool, v: bool) {
    // SAFETY: `out` checked non-null by the caller of this helper.
    unsafe { *out = v };
}

fn divisor(s: &str) -> Result<Divisor, Fail> {
    Ok(s.parse::<Divisor>()?)
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rr_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in put_string.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a structure JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_structure_from_json(json: *const c_char, out: *mut *mut RrStructure) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = RRStructure::from_json(unsafe { text(json, "json") }?)?;
        unsafe { put_structure(out, s) };
        Ok(())
    })
}

/// Loads a built-in example by name (e.g. `"nongraph-sec4"`).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_structure_from_example(name: *const c_char, out: *mut *mut RrStructure) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = examples::lookup(unsafe { text(name, "name") }?)?;
        unsafe { put_structure(out, s) };
        Ok(())
    })
}

/// Builds the structure of a graph JSON document from a 1-based base vertex.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_structure_from_graph(
    json: *const c_char,
    base_vertex: u32,
    out: *mut *mut RrStructure,
) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let g = WeightedGraph::from_json(unsafe { text(json, "json") }?)?;
        let s = g.to_structure(base_vertex as usize)?;
        unsafe { put_structure(out, s) };
        Ok(())
    })
}

/// Releases a structure handle. NULL is ignored.
///
/// # Safety
/// `s` must come from an `rr_structure_*` constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rr_structure_free(s: *mut RrStructure) {
    if !s.is_null() {
        // SAFETY: produced by Box::into_raw in put_structure.
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Dimension n of the structure, or 0 for a NULL handle.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rr_structure_dimension(s: *const RrStructure) -> usize {
    unsafe { s.as_ref() }.map_or(0, |h| h.0.n())
}

/// Canonical structure JSON.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_structure_to_json(s: *const RrStructure, out: *mut *mut c_char) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        unsafe { put_string(out, s.to_json()) }
    })
}

/// ℓ(point) as an exact rational string.
///
/// # Safety
/// `s` must be a live handle, `point` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_ell(s: *const RrStructure, point: *const c_char, out: *mut *mut c_char) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        let x = divisor(unsafe { text(point, "point") }?)?;
        unsafe { put_string(out, s.ell(&x)?.to_string()) }
    })
}

/// ℓ(x) − ℓ(κ − x) − (deg x − g + 1) as an exact rational string.
///
/// # Safety
/// `s` must be a live handle, `point` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_residual(s: *const RrStructure, point: *const c_char, out: *mut *mut c_char) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        let x = divisor(unsafe { text(point, "point") }?)?;
        unsafe { put_string(out, s.rr_residual(&x)?.to_string()) }
    })
}

/// Whether κ − ν lies in 𝒩 for every ν-generator.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_verify_symmetry(s: *const RrStructure, out: *mut bool) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        unsafe { put_bool(out, s.verify_symmetry().holds()) };
        Ok(())
    })
}

/// Whether the degree hypotheses deg κ = 2g − 2 and deg ν = g − 1 hold.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rr_degree_hypotheses(s: *const RrStructure, out: *mut bool) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        unsafe { put_bool(out, s.degree_report().holds()) };
        Ok(())
    })
}

/// Whether `point` lies in 𝒩.
///
/// # Safety
/// `s` must be a live handle, `point` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_in_n(s: *const RrStructure, point: *const c_char, out: *mut bool) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        let x = divisor(unsafe { text(point, "point") }?)?;
        unsafe { put_bool(out, s.in_n(&x)?) };
        Ok(())
    })
}

/// Whether x − y ∈ H.
///
/// # Safety
/// `s` must be a live handle, `x` and `y` nul-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_equivalent(
    s: *const RrStructure,
    x: *const c_char,
    y: *const c_char,
    out: *mut bool,
) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        let x = divisor(unsafe { text(x, "x") }?)?;
        let y = divisor(unsafe { text(y, "y") }?)?;
        unsafe { put_bool(out, s.equivalent(&x, &y)?) };
        Ok(())
    })
}

/// Samples ℓ on a grid and renders it. `bbox` is `lo..hi` or one interval per
/// axis separated by commas; `svg` selects SVG (n = 2 only) instead of CSV.
///
/// # Safety
/// `s` must be a live handle, `bbox` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rr_region(
    s: *const RrStructure,
    bbox: *const c_char,
    resolution: u32,
    svg: bool,
    out: *mut *mut c_char,
) -> RrStatus {
    guard(|| {
        check_out(out)?;
        let s = unsafe { handle(s) }?;
        let intervals = region::parse_box(unsafe { text(bbox, "bbox") }?, s.n())?;
        let table = sample_region(s, &RegionSpec::new(intervals, resolution as usize)?)?;
        let rendered = if svg { emit_svg(&table)? } else { emit_csv(&table) };
        unsafe { put_string(out, rendered) }
    })
}
