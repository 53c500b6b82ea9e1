//! C ABI for `colored-betti`.
//!
//! Complexes and partitions are opaque heap handles released with the matching
//! `*_free` function. Every fallible call returns a [`CbStatus`]; on failure the
//! message of the last error on the calling thread is available from
//! [`cb_last_error_message`]. Strings returned through `char **` out-parameters
//! are owned by the caller and must be released with [`cb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use colored_betti::betti::{betti_number, betti_table};
use colored_betti::coloring::{greedy_coloring, is_nondegenerate, minimum_coloring, Partition};
use colored_betti::report::verify_all;
use colored_betti::tor::{default_weight_bound, tor_dims};
use colored_betti::{Error, FieldSpec, SimplicialComplex, VertexSubset};

/// Result codes; one per library error kind plus FFI-level failures.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    VertexOutOfRange = 4,
    IsolatedVertexMissing = 5,
    EmptyFacetList = 6,
    InvalidDimension = 7,
    VertexBudgetExceeded = 8,
    NotAComplex = 9,
    PartitionMismatch = 10,
    ColorOutOfRange = 11,
    NotAMember = 12,
    DegeneratePartition = 13,
    MismatchFound = 14,
    InvalidField = 15,
    Panic = 16,
}

impl From<&Error> for CbStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::VertexOutOfRange { .. } => CbStatus::VertexOutOfRange,
            Error::IsolatedVertexMissing { .. } => CbStatus::IsolatedVertexMissing,
            Error::EmptyFacetList => CbStatus::EmptyFacetList,
            Error::InvalidDimension(_) => CbStatus::InvalidDimension,
            Error::VertexBudgetExceeded { .. } => CbStatus::VertexBudgetExceeded,
            Error::NotAComplex { .. } => CbStatus::NotAComplex,
            Error::PartitionMismatch(_) => CbStatus::PartitionMismatch,
            Error::ColorOutOfRange { .. } => CbStatus::ColorOutOfRange,
            Error::NotAMember { .. } => CbStatus::NotAMember,
            Error::DegeneratePartition { .. } => CbStatus::DegeneratePartition,
            Error::MismatchFound { .. } => CbStatus::MismatchFound,
            Error::InvalidField(_) => CbStatus::InvalidField,
            Error::Parse { .. } => CbStatus::ParseError,
        }
    }
}

/// Opaque simplicial complex.
pub struct CbComplex(SimplicialComplex);

/// Opaque vertex partition.
pub struct CbPartition(Partition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: CbStatus, msg: String) -> CbStatus {
    set_error(msg);
    status
}

fn lib_error(e: Error) -> CbStatus {
    let status = CbStatus::from(&e);
    fail(status, e.to_string())
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), CbStatus>>(f: F) -> CbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CbStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(CbStatus::Panic, "internal panic".into()),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, CbStatus> {
    if p.is_null() {
        return Err(fail(CbStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CbStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, CbStatus> {
    p.as_ref()
        .ok_or_else(|| fail(CbStatus::NullPointer, "null handle".into()))
}

unsafe fn field_arg(p: *const c_char) -> Result<FieldSpec, CbStatus> {
    if p.is_null() {
        return Ok(FieldSpec::Rationals);
    }
    str_arg(p)?.parse().map_err(lib_error)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), CbStatus> {
    if out.is_null() {
        return Err(fail(CbStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), CbStatus> {
    let c = CString::new(s).expect("JSON has no NUL bytes");
    write_out(out, c.into_raw())
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn cb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses the text format (`m N` then `facet ...` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cb_complex_parse(
    text: *const c_char,
    out: *mut *mut CbComplex,
) -> CbStatus {
    guard(|| {
        let k = SimplicialComplex::parse(str_arg(text)?).map_err(lib_error)?;
        write_out(out, Box::into_raw(Box::new(CbComplex(k))))
    })
}

/// # Safety
/// `k` must come from [`cb_complex_parse`] and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cb_complex_free(k: *mut CbComplex) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// # Safety
/// `k` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn cb_complex_vertex_count(k: *const CbComplex) -> usize {
    k.as_ref().map_or(0, |k| k.0.vertex_count())
}

/// `dim K`, −1 for the void complex or a NULL handle.
///
/// # Safety
/// `k` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cb_complex_dimension(k: *const CbComplex) -> i32 {
    k.as_ref().map_or(-1, |k| k.0.dimension())
}

/// `β_{i,ω}` with `ω` given as `omega_len` 1-based vertices. `field` may be NULL (rationals).
///
/// # Safety
/// `omega` must point to `omega_len` readable values (may be NULL when `omega_len` is 0).
#[no_mangle]
pub unsafe extern "C" fn cb_betti_number(
    k: *const CbComplex,
    i: usize,
    omega: *const usize,
    omega_len: usize,
    field: *const c_char,
    out: *mut u64,
) -> CbStatus {
    guard(|| {
        let k = ref_arg(k)?;
        let field = field_arg(field)?;
        let verts: &[usize] = if omega_len == 0 {
            &[]
        } else if omega.is_null() {
            return Err(fail(CbStatus::NullPointer, "null vertex array".into()));
        } else {
            std::slice::from_raw_parts(omega, omega_len)
        };
        let m = k.0.vertex_count();
        if let Some(&v) = verts.iter().find(|&&v| v == 0 || v > m) {
            return Err(lib_error(Error::VertexOutOfRange { vertex: v, m }));
        }
        let w = VertexSubset::from_elements(verts.iter().copied());
        write_out(out, betti_number(&k.0, i, w, field).map_err(lib_error)?)
    })
}

/// Betti table as a JSON array of `{i, omega, beta}`.
///
/// # Safety
/// `k` must be live; `out` receives a string to release with [`cb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cb_betti_table_json(
    k: *const CbComplex,
    field: *const c_char,
    out: *mut *mut c_char,
) -> CbStatus {
    guard(|| {
        let k = ref_arg(k)?;
        let table = betti_table(&k.0, field_arg(field)?).map_err(lib_error)?;
        write_string(out, table.to_json().to_string())
    })
}

/// Parses `blocks 1 3 | 2 4` for the vertices of `k`.
///
/// # Safety
/// `k` must be live, `text` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_partition_parse(
    k: *const CbComplex,
    text: *const c_char,
    out: *mut *mut CbPartition,
) -> CbStatus {
    guard(|| {
        let k = ref_arg(k)?;
        let p = Partition::parse(k.0.vertex_count(), str_arg(text)?).map_err(lib_error)?;
        write_out(out, Box::into_raw(Box::new(CbPartition(p))))
    })
}

/// Greedy coloring of the 1-skeleton.
///
/// # Safety
/// `k` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_partition_greedy(
    k: *const CbComplex,
    out: *mut *mut CbPartition,
) -> CbStatus {
    guard(|| {
        let k = ref_arg(k)?;
        write_out(
            out,
            Box::into_raw(Box::new(CbPartition(greedy_coloring(&k.0)))),
        )
    })
}

/// Coloring with the fewest colors.
///
/// # Safety
/// `k` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_partition_minimum(
    k: *const CbComplex,
    out: *mut *mut CbPartition,
) -> CbStatus {
    guard(|| {
        let k = ref_arg(k)?;
        let p = minimum_coloring(&k.0).map_err(lib_error)?;
        write_out(out, Box::into_raw(Box::new(CbPartition(p))))
    })
}

/// # Safety
/// `p` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn cb_partition_block_count(p: *const CbPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.block_count())
}

/// # Safety
/// `p` must come from one of the `cb_partition_*` constructors. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cb_partition_free(p: *mut CbPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cb_partition_is_nondegenerate(
    k: *const CbComplex,
    p: *const CbPartition,
    out: *mut bool,
) -> CbStatus {
    guard(|| {
        let (k, p) = (ref_arg(k)?, ref_arg(p)?);
        write_out(out, is_nondegenerate(&k.0, &p.0).map_err(lib_error)?)
    })
}

/// Tor table JSON. `weight_bound` 0 selects the default bound.
///
/// # Safety
/// Handles must be live; `out` receives a string to release with [`cb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cb_tor_json(
    k: *const CbComplex,
    p: *const CbPartition,
    field: *const c_char,
    weight_bound: u32,
    out: *mut *mut c_char,
) -> CbStatus {
    guard(|| {
        let (k, p) = (ref_arg(k)?, ref_arg(p)?);
        let bound = if weight_bound == 0 {
            default_weight_bound(&k.0, &p.0)
        } else {
            weight_bound
        };
        let table = tor_dims(&k.0, &p.0, field_arg(field)?, bound).map_err(lib_error)?;
        write_string(out, table.to_json().to_string())
    })
}

/// Full verification report as JSON; `pass` receives the overall verdict.
/// `weight_bound` 0 selects the default bound.
///
/// # Safety
/// Handles must be live; `out` receives a string to release with [`cb_string_free`];
/// `pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cb_verify_json(
    k: *const CbComplex,
    p: *const CbPartition,
    field: *const c_char,
    weight_bound: u32,
    out: *mut *mut c_char,
    pass: *mut bool,
) -> CbStatus {
    guard(|| {
        let (k, p) = (ref_arg(k)?, ref_arg(p)?);
        let bound = (weight_bound != 0).then_some(weight_bound);
        let report = verify_all(&k.0, &p.0, field_arg(field)?, bound).map_err(lib_error)?;
        write_out(pass, report.pass)?;
        write_string(out, serde_json::to_string(&report).expect("serialisable"))
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must have been returned through a `char **` out-parameter of this library.
#[no_mangle]
pub unsafe extern "C" fn cb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
