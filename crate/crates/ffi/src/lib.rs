//! C ABI over the stplus library. Fields and groups are opaque handles
//! owned by the caller and released with the matching `_free` function.
//! Every fallible call returns a status code; the message of the last
//! failure on the calling thread is available from `stb_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stplus::characters::census::census;
use stplus::characters::OvergroupOptions;
use stplus::gf::Field;
use stplus::matgrp::{BuildOptions, GroupKind, MatGroup};
use stplus::quadspace::{FormType, QuadraticSpace};
use stplus::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidField = 3,
    Degenerate = 4,
    OrderExceedsCap = 5,
    Unsupported = 6,
    Internal = 7,
    Io = 8,
    Panic = 9,
}

/// Form type of the quadratic space.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StbFormType {
    Odd = 0,
    Plus = 1,
    Minus = 2,
}

/// Which group of the space to enumerate.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StbGroupKind {
    O = 0,
    SO = 1,
    Omega = 2,
    Sp = 3,
}

/// Opaque finite field handle.
pub struct StbField(Field);

/// Opaque enumerated group handle.
pub struct StbGroup(MatGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> StbStatus {
    match e {
        Error::InvalidField { .. } | Error::FieldTooLarge { .. } | Error::NotSubfield { .. } => {
            StbStatus::InvalidField
        }
        Error::Degenerate | Error::InvalidSpace(_) => StbStatus::Degenerate,
        Error::OrderExceedsCap { .. } | Error::PackingOverflow { .. } => StbStatus::OrderExceedsCap,
        Error::Unsupported(_) => StbStatus::Unsupported,
        Error::GroupMismatch | Error::Internal(_) => StbStatus::Internal,
        Error::Io(_) => StbStatus::Io,
    }
}

/// Runs `f`, recording any error or panic as the last error.
fn guard(f: impl FnOnce() -> Result<(), (StbStatus, String)>) -> StbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StbStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside stplus".into());
            StbStatus::Panic
        }
    }
}

fn lib(e: Error) -> (StbStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (StbStatus, String) {
    (StbStatus::NullPointer, format!("{what} is null"))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates GF(p^k).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn stb_field_new(p: u32, k: u32, out: *mut *mut StbField) -> StbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = Field::new(p, k).map_err(lib)?;
        *out = Box::into_raw(Box::new(StbField(f)));
        Ok(())
    })
}

/// Number of elements of the field, 0 for a null handle.
///
/// # Safety
/// `field` must be null or a handle from `stb_field_new`.
#[no_mangle]
pub unsafe extern "C" fn stb_field_order(field: *const StbField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.q())
}

/// # Safety
/// `field` must be null or a handle from `stb_field_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stb_field_free(field: *mut StbField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Enumerates the group of the given kind on the standard space of
/// dimension `dim` and type `ty` (ignored for `Sp`). `max_order` of 0
/// keeps the library default cap.
///
/// # Safety
/// `field` must be a live field handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn stb_group_build(
    field: *const StbField,
    dim: u32,
    ty: StbFormType,
    kind: StbGroupKind,
    max_order: u64,
    out: *mut *mut StbGroup,
) -> StbStatus {
    guard(|| {
        let f = &field.as_ref().ok_or_else(|| null("field"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let mut opts = BuildOptions::no_cache();
        if max_order > 0 {
            opts.max_order = max_order as u128;
        }
        let dim = dim as usize;
        let g = match kind {
            StbGroupKind::Sp => MatGroup::symplectic(f, dim, &opts),
            _ => {
                let ty = match ty {
                    StbFormType::Odd => FormType::Odd,
                    StbFormType::Plus => FormType::Plus,
                    StbFormType::Minus => FormType::Minus,
                };
                let kind = match kind {
                    StbGroupKind::O => GroupKind::O,
                    StbGroupKind::SO => GroupKind::SO,
                    _ => GroupKind::Omega,
                };
                let space = QuadraticSpace::standard(dim, ty, f)
                    .map_err(|e| (StbStatus::InvalidArgument, e.to_string()))?;
                MatGroup::orthogonal(&space, kind, &opts)
            }
        }
        .map_err(lib)?;
        *out = Box::into_raw(Box::new(StbGroup(g)));
        Ok(())
    })
}

/// Order of the group, 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn stb_group_order(group: *const StbGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.0.order())
}

/// Number of conjugacy classes, computed on first use.
///
/// # Safety
/// `group` must be a live group handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn stb_group_class_count(
    group: *const StbGroup,
    out: *mut usize,
) -> StbStatus {
    guard(|| {
        let g = &group.as_ref().ok_or_else(|| null("group"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = g.classes().len();
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle from `stb_group_build` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stb_group_free(group: *mut StbGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// The series census of an SO (odd q) or Omega (even q) group as a JSON
/// string, to be released with `stb_string_free`.
///
/// # Safety
/// `group` must be a live group handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn stb_census_json(
    group: *const StbGroup,
    out: *mut *mut c_char,
) -> StbStatus {
    guard(|| {
        let g = &group.as_ref().ok_or_else(|| null("group"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = census(g, &OvergroupOptions::default()).map_err(lib)?;
        let text = serde_json::to_string(&c).map_err(|e| (StbStatus::Internal, e.to_string()))?;
        *out = CString::new(text)
            .map_err(|e| (StbStatus::Internal, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
