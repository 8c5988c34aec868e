//! C ABI over `stonework`.
//!
//! Structures live behind opaque handles created by the `*_from_json` and
//! `*_from_fixture` constructors and released with the matching `*_free`.
//! Every fallible call returns an [`SwStatus`]; on failure the message is
//! available from [`sw_last_error`] on the same thread. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`sw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stonework::filters::enumerate_prec_ultrafilters;
use stonework::fixtures;
use stonework::groupoid::lenz::ultrafilter_groupoid;
use stonework::io::{self, groupoid_to_json, Structure};
use stonework::isg::classify::{classify_semigroup, AnalyzedSemigroup};
use stonework::relations::classify::classify;
use stonework::relations::{AnalyzedPoset, RelationKind};
use stonework::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed or invalid input structure.
    InputError = 3,
    /// A checked correspondence failed.
    AssertionFailed = 4,
    /// The input parsed as a different kind of structure.
    WrongKind = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwRelationKind {
    Leq = 0,
    Perp = 1,
    Prec = 2,
    Smile = 3,
}

impl From<SwRelationKind> for RelationKind {
    fn from(k: SwRelationKind) -> RelationKind {
        match k {
            SwRelationKind::Leq => RelationKind::Leq,
            SwRelationKind::Perp => RelationKind::Perp,
            SwRelationKind::Prec => RelationKind::Prec,
            SwRelationKind::Smile => RelationKind::Smile,
        }
    }
}

/// A poset with its derived relations.
pub struct SwPoset(AnalyzedPoset);

/// An inverse semigroup with its natural order and derived relations.
pub struct SwSemigroup(AnalyzedSemigroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nulls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SwStatus, msg: impl Into<String>) -> SwStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> SwStatus {
    let status = if e.is_assertion_failure() {
        SwStatus::AssertionFailed
    } else {
        SwStatus::InputError
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`SwStatus::Panic`].
fn guard(f: impl FnOnce() -> SwStatus) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(SwStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SwStatus> {
    if s.is_null() {
        return Err(fail(SwStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(SwStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> SwStatus {
    if out.is_null() {
        return fail(SwStatus::NullPointer, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SwStatus::Ok
        }
        Err(_) => fail(SwStatus::Panic, "output contains a null byte"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

fn structure_from_json(json: &str) -> Result<Structure, SwStatus> {
    io::parse_structure(json, None).map_err(from_error)
}

fn poset_handle(s: Structure) -> Result<SwPoset, SwStatus> {
    match s {
        Structure::Poset(p) => AnalyzedPoset::new(p).map(SwPoset).map_err(from_error),
        other => Err(fail(SwStatus::WrongKind, format!("expected a poset, got a {}", other.kind()))),
    }
}

fn semigroup_handle(s: Structure) -> Result<SwSemigroup, SwStatus> {
    match s {
        Structure::Semigroup(sg) => AnalyzedSemigroup::new(sg).map(SwSemigroup).map_err(from_error),
        other => Err(fail(SwStatus::WrongKind, format!("expected a semigroup, got a {}", other.kind()))),
    }
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> SwStatus {
    if out.is_null() {
        return fail(SwStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(value));
    SwStatus::Ok
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a poset from JSON.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_poset_from_json(json: *const c_char, out: *mut *mut SwPoset) -> SwStatus {
    guard(|| {
        let text = try_status!(read_str(json));
        let p = try_status!(structure_from_json(text).and_then(poset_handle));
        emit(out, p)
    })
}

/// Builds a named fixture poset such as `B(3)` or `diamond`.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_poset_from_fixture(name: *const c_char, out: *mut *mut SwPoset) -> SwStatus {
    guard(|| {
        let name = try_status!(read_str(name));
        let s = try_status!(fixtures::by_name(name).map_err(from_error));
        let p = try_status!(poset_handle(s));
        emit(out, p)
    })
}

/// # Safety
/// `p` must come from a poset constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sw_poset_free(p: *mut SwPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live poset handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_poset_len(p: *const SwPoset, out: *mut usize) -> SwStatus {
    if p.is_null() || out.is_null() {
        return fail(SwStatus::NullPointer, "null argument");
    }
    *out = (*p).0.len();
    SwStatus::Ok
}

/// Whether `a R b` for the derived relation `kind`, by element index.
///
/// # Safety
/// `p` must be a live poset handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_poset_relation_holds(
    p: *const SwPoset,
    kind: SwRelationKind,
    a: usize,
    b: usize,
    out: *mut bool,
) -> SwStatus {
    if p.is_null() || out.is_null() {
        return fail(SwStatus::NullPointer, "null argument");
    }
    let ap = &(*p).0;
    if a >= ap.len() || b >= ap.len() {
        return fail(SwStatus::OutOfRange, format!("index out of range for {} elements", ap.len()));
    }
    *out = ap.relation(kind.into()).holds(a, b);
    SwStatus::Ok
}

/// Number of `≺`-ultrafilters.
///
/// # Safety
/// `p` must be a live poset handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_poset_ultrafilter_count(p: *const SwPoset, out: *mut usize) -> SwStatus {
    if p.is_null() || out.is_null() {
        return fail(SwStatus::NullPointer, "null argument");
    }
    guard(|| {
        *out = enumerate_prec_ultrafilters(&(*p).0).len();
        SwStatus::Ok
    })
}

/// Classification report as JSON.
///
/// # Safety
/// `p` must be a live poset handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_poset_classify_json(p: *const SwPoset, out: *mut *mut c_char) -> SwStatus {
    if p.is_null() {
        return fail(SwStatus::NullPointer, "null argument");
    }
    guard(|| {
        let c = try_status!(classify(&(*p).0).map_err(from_error));
        let text = serde_json_string(&c);
        write_string(out, text)
    })
}

fn serde_json_string<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("reports serialize")
}

/// Parses an inverse semigroup from JSON.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_semigroup_from_json(json: *const c_char, out: *mut *mut SwSemigroup) -> SwStatus {
    guard(|| {
        let text = try_status!(read_str(json));
        let s = try_status!(structure_from_json(text).and_then(semigroup_handle));
        emit(out, s)
    })
}

/// Builds a named fixture semigroup such as `I(2)` or `EvsSjoins`.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_semigroup_from_fixture(name: *const c_char, out: *mut *mut SwSemigroup) -> SwStatus {
    guard(|| {
        let name = try_status!(read_str(name));
        let s = try_status!(fixtures::by_name(name).map_err(from_error));
        let sg = try_status!(semigroup_handle(s));
        emit(out, sg)
    })
}

/// # Safety
/// `s` must come from a semigroup constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sw_semigroup_free(s: *mut SwSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live semigroup handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_semigroup_len(s: *const SwSemigroup, out: *mut usize) -> SwStatus {
    if s.is_null() || out.is_null() {
        return fail(SwStatus::NullPointer, "null argument");
    }
    *out = (*s).0.len();
    SwStatus::Ok
}

/// Semigroup classification report as JSON.
///
/// # Safety
/// `s` must be a live semigroup handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_semigroup_classify_json(s: *const SwSemigroup, out: *mut *mut c_char) -> SwStatus {
    if s.is_null() {
        return fail(SwStatus::NullPointer, "null argument");
    }
    guard(|| {
        let c = try_status!(classify_semigroup(&(*s).0).map_err(from_error));
        write_string(out, serde_json_string(&c))
    })
}

/// The ultrafilter groupoid as JSON; the arrow count goes to `arrows`
/// when it is not null.
///
/// # Safety
/// `s` must be a live semigroup handle, `out` a valid pointer and
/// `arrows` null or valid.
#[no_mangle]
pub unsafe extern "C" fn sw_semigroup_dualize_json(
    s: *const SwSemigroup,
    arrows: *mut usize,
    out: *mut *mut c_char,
) -> SwStatus {
    if s.is_null() {
        return fail(SwStatus::NullPointer, "null argument");
    }
    guard(|| {
        let ug = try_status!(ultrafilter_groupoid(&(*s).0).map_err(from_error));
        if !arrows.is_null() {
            *arrows = ug.groupoid.len();
        }
        write_string(out, groupoid_to_json(&ug.groupoid, None).to_string())
    })
}
