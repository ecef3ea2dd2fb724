//! C ABI for `treegrp`.
//!
//! Elements are opaque `TgElement` handles owned by the caller and released
//! with `tg_free`. Strings returned through `char **` are released with
//! `tg_string_free`. Every function returns a `TG_*` status code; on
//! failure `tg_last_error` describes the most recent error on the calling
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use treegrp::error::Error;
use treegrp::harness::{classify_maximal, pj_dimension, Method};
use treegrp::portrait::{FiniteAutomorphism, LevelSet, Vertex};
use treegrp::subgroup::EnumerationCap;

pub const TG_OK: i32 = 0;
pub const TG_NULL_POINTER: i32 = 1;
pub const TG_INVALID_ARGUMENT: i32 = 2;
pub const TG_DEPTH_MISMATCH: i32 = 3;
pub const TG_BUFFER_TOO_SMALL: i32 = 4;
pub const TG_CAP_EXCEEDED: i32 = 5;
pub const TG_CHECK_FAILED: i32 = 6;
pub const TG_INTERNAL: i32 = 7;

/// An element of `G(d)`.
pub struct TgElement {
    inner: FiniteAutomorphism,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> i32 {
    match e {
        Error::DepthMismatch { .. } => TG_DEPTH_MISMATCH,
        Error::CapExceeded { .. } => TG_CAP_EXCEEDED,
        Error::Inconsistent(_) => TG_CHECK_FAILED,
        _ => TG_INVALID_ARGUMENT,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (i32, String)>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TG_OK,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            TG_INTERNAL
        }
    }
}

fn lib(e: Error) -> (i32, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (i32, String) {
    (TG_NULL_POINTER, format!("{name} is null"))
}

unsafe fn elem<'a>(p: *const TgElement, name: &str) -> Result<&'a FiniteAutomorphism, (i32, String)> {
    p.as_ref().map(|e| &e.inner).ok_or_else(|| null(name))
}

unsafe fn store(out: *mut *mut TgElement, g: FiniteAutomorphism) -> Result<(), (i32, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(TgElement { inner: g }));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), (i32, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| (TG_INTERNAL, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (i32, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TG_INVALID_ARGUMENT, format!("{name} is not UTF-8")))
}

/// Message for the last failure on this thread; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_identity(depth: u32, out: *mut *mut TgElement) -> i32 {
    guard(|| store(out, FiniteAutomorphism::identity(depth as usize).map_err(lib)?))
}

/// The generator `a_index`: one nontrivial label at `0^index`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_generator(depth: u32, index: u32, out: *mut *mut TgElement) -> i32 {
    guard(|| {
        store(
            out,
            FiniteAutomorphism::generator(depth as usize, index as usize).map_err(lib)?,
        )
    })
}

/// Decodes the little-endian portrait byte format.
///
/// # Safety
/// `bytes` must point to `len` readable bytes; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_decode(
    bytes: *const u8,
    len: size_t,
    depth: u32,
    out: *mut *mut TgElement,
) -> i32 {
    guard(|| {
        if bytes.is_null() {
            return Err(null("bytes"));
        }
        let slice = std::slice::from_raw_parts(bytes, len);
        store(out, FiniteAutomorphism::decode(slice, depth as usize).map_err(lib)?)
    })
}

/// Writes the byte encoding of `g` into `buf`. `*written` always receives
/// the required length; a null or short buffer yields
/// `TG_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `g` must be a live handle; `buf` must have `capacity` writable bytes or
/// be null; `written` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_encode(
    g: *const TgElement,
    buf: *mut u8,
    capacity: size_t,
    written: *mut size_t,
) -> i32 {
    guard(|| {
        let g = elem(g, "g")?;
        if written.is_null() {
            return Err(null("written"));
        }
        let bytes = g.encode();
        *written = bytes.len();
        if buf.is_null() || capacity < bytes.len() {
            return Err((TG_BUFFER_TOO_SMALL, format!("need {} bytes", bytes.len())));
        }
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len());
        Ok(())
    })
}

/// # Safety
/// `hex` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_from_hex(hex: *const c_char, depth: u32, out: *mut *mut TgElement) -> i32 {
    guard(|| {
        let s = read_str(hex, "hex")?;
        store(out, FiniteAutomorphism::from_hex(s, depth as usize).map_err(lib)?)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_to_hex(g: *const TgElement, out: *mut *mut c_char) -> i32 {
    guard(|| store_string(out, elem(g, "g")?.to_hex()))
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_depth(g: *const TgElement, out: *mut u32) -> i32 {
    guard(|| {
        let g = elem(g, "g")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = g.depth() as u32;
        Ok(())
    })
}

/// `lhs * rhs`, with `rhs` acting first.
///
/// # Safety
/// `lhs` and `rhs` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_compose(
    lhs: *const TgElement,
    rhs: *const TgElement,
    out: *mut *mut TgElement,
) -> i32 {
    guard(|| {
        let (a, b) = (elem(lhs, "lhs")?, elem(rhs, "rhs")?);
        store(out, a.compose(b).map_err(lib)?)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_invert(g: *const TgElement, out: *mut *mut TgElement) -> i32 {
    guard(|| store(out, elem(g, "g")?.invert()))
}

/// `[g, h] = g^-1 h^-1 g h`.
///
/// # Safety
/// `g` and `h` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_commutator(
    g: *const TgElement,
    h: *const TgElement,
    out: *mut *mut TgElement,
) -> i32 {
    guard(|| {
        let (a, b) = (elem(g, "g")?, elem(h, "h")?);
        store(out, a.commutator(b).map_err(lib)?)
    })
}

/// Image of the word `word` (a string over `0`/`1`) under `g`.
///
/// # Safety
/// `g` must be a live handle; `word` NUL-terminated; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_apply(g: *const TgElement, word: *const c_char, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let g = elem(g, "g")?;
        let w: Vertex = read_str(word, "word")?.parse().map_err(lib)?;
        store_string(out, g.apply(&w).map_err(lib)?.to_string())
    })
}

/// Label parity over the levels set in `level_mask` (bit `j` = level `j`).
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_alpha(g: *const TgElement, level_mask: u32, out: *mut u8) -> i32 {
    guard(|| {
        let g = elem(g, "g")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = g.alpha(LevelSet::from_mask(level_mask)).map_err(lib)?.as_u8();
        Ok(())
    })
}

/// Whether two handles hold the same element.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_equal(a: *const TgElement, b: *const TgElement, out: *mut bool) -> i32 {
    guard(|| {
        let (x, y) = (elem(a, "a")?, elem(b, "b")?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = x == y;
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_free(g: *mut TgElement) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Hausdorff dimension `num/den` of the finitely constrained group defined
/// by the essential reduction of `P_J`, `J` given as a level mask.
///
/// # Safety
/// `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_pj_dimension(depth: u32, level_mask: u32, num: *mut u64, den: *mut u64) -> i32 {
    guard(|| {
        if num.is_null() || den.is_null() {
            return Err(null("num/den"));
        }
        let dim = pj_dimension(depth as usize, LevelSet::from_mask(level_mask)).map_err(lib)?;
        *num = dim.num;
        *den = dim.den;
        Ok(())
    })
}

/// Classification report for every `P_J` of `G(depth)` as JSON. The report
/// is written even when a check fails, in which case `TG_CHECK_FAILED` is
/// returned.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tg_classify_json(depth: u32, gf2: bool, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let method = if gf2 { Method::Gf2 } else { Method::Enumeration };
        let report = classify_maximal(depth as usize, method, EnumerationCap::from_env()).map_err(lib)?;
        let json = serde_json::to_string(&report).map_err(|e| (TG_INTERNAL, e.to_string()))?;
        store_string(out, json)?;
        if report.passed() {
            Ok(())
        } else {
            Err((TG_CHECK_FAILED, report.violations.join("; ")))
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
