//! C interface to `lsq`.
//!
//! Squares are opaque handles created by `lsq_square_parse` or
//! `lsq_square_from_cells` and released with `lsq_square_free`. Every
//! fallible call returns an [`LsqStatus`]; the message of the last failure
//! on the calling thread is available from `lsq_last_error`. Symbols are
//! `1..=n` on both sides of the interface. Strings returned through
//! caller buffers are NUL terminated; when the buffer is too small the
//! call fails with `LSQ_BUFFER_TOO_SMALL` and reports the size needed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lsq::canonical::certificate;
use lsq::census::{derived_census, CountKind};
use lsq::verify::{run_suite, Suite, VerifyOptions};
use lsq::{canonical_form, EquivalenceRelation, LatinSquare, PropertyFilter};

/// Opaque Latin square.
pub struct LsqSquare(LatinSquare);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsqStatus {
    Ok = 0,
    NullPointer = 1,
    NotLatin = 2,
    Parse = 3,
    InvalidArgument = 4,
    Unsupported = 5,
    Precondition = 6,
    Io = 7,
    BufferTooSmall = 8,
    ClaimFailed = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsqRelation {
    Isomorphism = 0,
    RrsIsotopism = 1,
    Isotopism = 2,
    Species = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsqProperty {
    Symmetric = 0,
    Semisymmetric = 1,
    TotallySymmetric = 2,
    Reduced = 3,
    Diagonal = 4,
    Idempotent = 5,
    Unipotent = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsqCount {
    IsomorphismClasses = 0,
    RrsIsotopismClasses = 1,
    IsotopismClasses = 2,
    Species = 3,
    AllSquares = 4,
}

impl From<LsqRelation> for EquivalenceRelation {
    fn from(r: LsqRelation) -> Self {
        match r {
            LsqRelation::Isomorphism => EquivalenceRelation::Isomorphism,
            LsqRelation::RrsIsotopism => EquivalenceRelation::RrsIsotopism,
            LsqRelation::Isotopism => EquivalenceRelation::Isotopism,
            LsqRelation::Species => EquivalenceRelation::Species,
        }
    }
}

impl From<LsqCount> for CountKind {
    fn from(c: LsqCount) -> Self {
        match c {
            LsqCount::IsomorphismClasses => CountKind::Isomorphism,
            LsqCount::RrsIsotopismClasses => CountKind::RrsIsotopism,
            LsqCount::IsotopismClasses => CountKind::Isotopism,
            LsqCount::Species => CountKind::Species,
            LsqCount::AllSquares => CountKind::AllSquares,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: LsqStatus, msg: impl Into<String>) -> LsqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn from_error(e: lsq::Error) -> LsqStatus {
    let status = match &e {
        lsq::Error::NotLatin(_) => LsqStatus::NotLatin,
        lsq::Error::Parse(_) => LsqStatus::Parse,
        lsq::Error::InvalidPermutation(_) | lsq::Error::InvalidCycleStructure(_) | lsq::Error::DegreeMismatch { .. } => {
            LsqStatus::InvalidArgument
        }
        lsq::Error::Precondition(_) => LsqStatus::Precondition,
        lsq::Error::Unsupported(_) => LsqStatus::Unsupported,
        lsq::Error::Io(_) => LsqStatus::Io,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into `LSQ_PANIC`.
fn guard(f: impl FnOnce() -> LsqStatus) -> LsqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(LsqStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, LsqStatus> {
    if p.is_null() {
        return Err(fail(LsqStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(LsqStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn square_arg<'a>(p: *const LsqSquare) -> Result<&'a LatinSquare, LsqStatus> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| fail(LsqStatus::NullPointer, "square handle is null"))
}

/// Copies `s` with a trailing NUL into `buf`, always storing the needed
/// size in `needed` when it is not null.
unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> LsqStatus {
    let want = s.len() + 1;
    if !needed.is_null() {
        *needed = want;
    }
    if buf.is_null() || len < want {
        return fail(LsqStatus::BufferTooSmall, format!("{want} bytes needed"));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    LsqStatus::Ok
}

fn put_square(l: LatinSquare, out: *mut *mut LsqSquare) -> LsqStatus {
    if out.is_null() {
        return fail(LsqStatus::NullPointer, "output pointer is null");
    }
    unsafe { *out = Box::into_raw(Box::new(LsqSquare(l))) };
    LsqStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn lsq_status_message(status: LsqStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        LsqStatus::Ok => b"ok\0",
        LsqStatus::NullPointer => b"null pointer\0",
        LsqStatus::NotLatin => b"not a Latin square\0",
        LsqStatus::Parse => b"parse error\0",
        LsqStatus::InvalidArgument => b"invalid argument\0",
        LsqStatus::Unsupported => b"unsupported\0",
        LsqStatus::Precondition => b"precondition failed\0",
        LsqStatus::Io => b"i/o error\0",
        LsqStatus::BufferTooSmall => b"buffer too small\0",
        LsqStatus::ClaimFailed => b"claim failed\0",
        LsqStatus::Panic => b"internal panic\0",
    };
    s.as_ptr() as *const c_char
}

/// Message of the last failure on this thread.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes; `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> LsqStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    let want = msg.len() + 1;
    if !needed.is_null() {
        *needed = want;
    }
    if buf.is_null() || len < want {
        // Leaves the stored message in place.
        return LsqStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, msg.len());
    *buf.add(msg.len()) = 0;
    LsqStatus::Ok
}

/// Parses the text format: `n`, then `n` rows of `n` symbols.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_parse(text: *const c_char, out: *mut *mut LsqSquare) -> LsqStatus {
    guard(|| {
        let t = tri!(str_arg(text, "text"));
        match LatinSquare::parse_text(t) {
            Ok(l) => put_square(l, out),
            Err(e) => from_error(e),
        }
    })
}

/// Square of order `n` from `n*n` row-major symbols in `1..=n`.
///
/// # Safety
/// `cells` must be valid for `n*n` bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_from_cells(n: usize, cells: *const u8, out: *mut *mut LsqSquare) -> LsqStatus {
    guard(|| {
        if cells.is_null() && n > 0 {
            return fail(LsqStatus::NullPointer, "cells is null");
        }
        if n > 255 {
            return fail(LsqStatus::InvalidArgument, "order above 255");
        }
        let raw = if n == 0 { &[][..] } else { std::slice::from_raw_parts(cells, n * n) };
        if let Some(&bad) = raw.iter().find(|&&s| s == 0 || s as usize > n) {
            return fail(LsqStatus::InvalidArgument, format!("symbol {bad} outside 1..={n}"));
        }
        match LatinSquare::from_cells(n, raw.iter().map(|s| s - 1).collect()) {
            Ok(l) => put_square(l, out),
            Err(e) => from_error(e),
        }
    })
}

/// Releases a square; null is ignored.
///
/// # Safety
/// `sq` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_free(sq: *mut LsqSquare) {
    if !sq.is_null() {
        drop(Box::from_raw(sq));
    }
}

/// Order of the square, 0 for null.
///
/// # Safety
/// `sq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_order(sq: *const LsqSquare) -> usize {
    sq.as_ref().map_or(0, |s| s.0.order())
}

/// Symbol in row `r`, column `c` (zero-based positions).
///
/// # Safety
/// `sq` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_get(sq: *const LsqSquare, r: usize, c: usize, out: *mut usize) -> LsqStatus {
    guard(|| {
        let l = tri!(square_arg(sq));
        if out.is_null() {
            return fail(LsqStatus::NullPointer, "output pointer is null");
        }
        if r >= l.order() || c >= l.order() {
            return fail(LsqStatus::InvalidArgument, format!("cell ({r}, {c}) outside order {}", l.order()));
        }
        *out = l.get(r, c) + 1;
        LsqStatus::Ok
    })
}

/// Whether the square has `prop`.
///
/// # Safety
/// `sq` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_has(sq: *const LsqSquare, prop: LsqProperty, out: *mut bool) -> LsqStatus {
    guard(|| {
        let l = tri!(square_arg(sq));
        if out.is_null() {
            return fail(LsqStatus::NullPointer, "output pointer is null");
        }
        *out = match prop {
            LsqProperty::Symmetric => l.is_symmetric(),
            LsqProperty::Semisymmetric => l.is_semisymmetric(),
            LsqProperty::TotallySymmetric => l.is_totally_symmetric(),
            LsqProperty::Reduced => l.is_reduced(),
            LsqProperty::Diagonal => l.is_diagonal(),
            LsqProperty::Idempotent => l.is_idempotent(),
            LsqProperty::Unipotent => l.is_unipotent(),
        };
        LsqStatus::Ok
    })
}

/// Number of `i` with `L[i][i] = i`.
///
/// # Safety
/// `sq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_idempotent_count(sq: *const LsqSquare) -> usize {
    sq.as_ref().map_or(0, |s| s.0.idempotent_count())
}

/// Canonical representative of the square's class under `rel`.
///
/// # Safety
/// `sq` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_canonical(sq: *const LsqSquare, rel: LsqRelation, out: *mut *mut LsqSquare) -> LsqStatus {
    guard(|| {
        let l = tri!(square_arg(sq));
        put_square(canonical_form(l, rel.into()), out)
    })
}

/// Whether two squares lie in the same class of `rel`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_equivalent(
    a: *const LsqSquare,
    b: *const LsqSquare,
    rel: LsqRelation,
    out: *mut bool,
) -> LsqStatus {
    guard(|| {
        let (a, b) = (tri!(square_arg(a)), tri!(square_arg(b)));
        if out.is_null() {
            return fail(LsqStatus::NullPointer, "output pointer is null");
        }
        let rel = rel.into();
        *out = a.order() == b.order() && certificate(a, rel) == certificate(b, rel);
        LsqStatus::Ok
    })
}

/// The square in text format.
///
/// # Safety
/// `sq` must be a live handle; `buf` null or valid for `len` bytes;
/// `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_square_to_text(sq: *const LsqSquare, buf: *mut c_char, len: usize, needed: *mut usize) -> LsqStatus {
    guard(|| {
        let l = tri!(square_arg(sq));
        write_str(&l.to_text(), buf, len, needed)
    })
}

/// One count of a category as a decimal string. `filter` is a symmetry
/// optionally followed by `+shape` terms, e.g. `semisymmetric+idempotent`.
///
/// # Safety
/// `filter` must be a NUL-terminated string; `buf` null or valid for
/// `len` bytes; `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_count(
    order: usize,
    filter: *const c_char,
    kind: LsqCount,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> LsqStatus {
    guard(|| {
        let f: PropertyFilter = match tri!(str_arg(filter, "filter")).parse() {
            Ok(f) => f,
            Err(e) => return from_error(e),
        };
        let row = match derived_census(order, &f) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        match row.require(kind.into()) {
            Ok(v) => write_str(&v.to_string(), buf, len, needed),
            Err(e) => from_error(e),
        }
    })
}

/// Runs one verification suite with default bounds; `LSQ_CLAIM_FAILED`
/// when a claim fails. The text report goes to `buf` when it fits.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `buf` null or valid for `len`
/// bytes; `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lsq_verify(suite: *const c_char, buf: *mut c_char, len: usize, needed: *mut usize) -> LsqStatus {
    guard(|| {
        let s: Suite = match tri!(str_arg(suite, "suite")).parse() {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let report = run_suite(s, &VerifyOptions::default());
        let text = report.to_text();
        if !buf.is_null() || !needed.is_null() {
            let st = write_str(&text, buf, len, needed);
            if st != LsqStatus::Ok && !buf.is_null() {
                return st;
            }
        }
        if report.passed() {
            LsqStatus::Ok
        } else {
            fail(LsqStatus::ClaimFailed, format!("{} claims failed", report.failed().count()))
        }
    })
}
