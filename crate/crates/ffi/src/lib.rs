//! C ABI over `relword`.
//!
//! Words and schemes are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns an [`RwStatus`];
//! on failure [`rw_last_error`] describes the problem. Positions are
//! 1-based, insertion gaps 0-based, as in the library.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use relword::decider::{decide_membership, delete_word, Budget, Member, SimpleScheme};
use relword::engine::{delete_block, insert_block};
use relword::format::render_matrix;
use relword::RelationalWord;

/// A relational word.
pub struct RwWord(RelationalWord);

/// A scheme with one insertion and one deletion rule.
pub struct RwScheme(SimpleScheme);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RwStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidWord = 2,
    InvalidScheme = 3,
    OutOfRange = 4,
    NotApplicable = 5,
    InvalidUtf8 = 6,
    BufferTooSmall = 7,
    Internal = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RwVerdict {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: RwStatus, msg: impl Into<String>) -> RwStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> RwStatus) -> RwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == RwStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(RwStatus::Internal, "internal error"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, RwStatus> {
    if s.is_null() {
        return Err(fail(RwStatus::NullArgument, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(RwStatus::InvalidUtf8, "string is not UTF-8"))
}

fn emit<T>(out: *mut *mut T, value: T) -> RwStatus {
    unsafe { *out = Box::into_raw(Box::new(value)) };
    RwStatus::Ok
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a word of length `n` from `n * n` row-major cells, each 0 (NEQ),
/// 1 (EQ) or 2 (undefined).
///
/// # Safety
/// `cells` must point to `n * n` readable bytes (or be null when `n` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rw_word_from_matrix(cells: *const u8, n: usize, out: *mut *mut RwWord) -> RwStatus {
    guard(|| {
        if out.is_null() || (cells.is_null() && n > 0) {
            return fail(RwStatus::NullArgument, "null argument");
        }
        let Some(total) = n.checked_mul(n) else {
            return fail(RwStatus::OutOfRange, "matrix too large");
        };
        let data = if n == 0 { &[][..] } else { std::slice::from_raw_parts(cells, total) };
        let rows: Vec<&[u8]> = data.chunks(n.max(1)).collect();
        match RelationalWord::from_matrix(&rows) {
            Ok(w) => emit(out, RwWord(w)),
            Err(e) => fail(RwStatus::InvalidWord, e.to_string()),
        }
    })
}

/// The fully defined word of a letter string: equal letters are equal.
///
/// # Safety
/// `letters` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rw_word_from_string(letters: *const c_char, out: *mut *mut RwWord) -> RwStatus {
    guard(|| {
        if out.is_null() {
            return fail(RwStatus::NullArgument, "null argument");
        }
        match read_str(letters) {
            Ok(s) => emit(out, RwWord(RelationalWord::from_string(s))),
            Err(st) => st,
        }
    })
}

/// # Safety
/// `w` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn rw_word_len(w: *const RwWord) -> usize {
    w.as_ref().map_or(0, |w| w.0.len())
}

/// Relation between positions `i` and `j` (1-based) as 0, 1 or 2.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rw_word_cell(w: *const RwWord, i: usize, j: usize, out: *mut u8) -> RwStatus {
    guard(|| {
        let (Some(w), false) = (w.as_ref(), out.is_null()) else {
            return fail(RwStatus::NullArgument, "null argument");
        };
        let n = w.0.len();
        if i == 0 || j == 0 || i > n || j > n {
            return fail(RwStatus::OutOfRange, format!("cell ({i}, {j}) outside a word of length {n}"));
        }
        *out = w.0.relation(i, j).digit();
        RwStatus::Ok
    })
}

/// 1 if the words are equal, 0 if not, -1 if either is null.
///
/// # Safety
/// Both arguments must be live handles or null.
#[no_mangle]
pub unsafe extern "C" fn rw_word_equals(a: *const RwWord, b: *const RwWord) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => c_int::from(a.0.equals(&b.0)),
        _ => -1,
    }
}

/// 1 if every pair of positions is defined, 0 if not, -1 for null.
///
/// # Safety
/// `w` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn rw_word_is_fully_defined(w: *const RwWord) -> c_int {
    w.as_ref().map_or(-1, |w| c_int::from(w.0.is_fully_defined()))
}

/// Write the matrix text (digit rows, `ε` for the empty word) into `buf`,
/// NUL-terminated. `needed` receives the buffer size required, terminator
/// included; a too-small buffer gives `BufferTooSmall` and is left alone.
///
/// # Safety
/// `buf` must have `cap` writable bytes (or be null with `cap` 0);
/// `needed` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn rw_word_to_text(
    w: *const RwWord,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> RwStatus {
    guard(|| {
        let Some(w) = w.as_ref() else {
            return fail(RwStatus::NullArgument, "null word");
        };
        let text = render_matrix(&w.0);
        let size = text.len() + 1;
        if !needed.is_null() {
            *needed = size;
        }
        if buf.is_null() || cap < size {
            return fail(RwStatus::BufferTooSmall, format!("need {size} bytes"));
        }
        ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
        RwStatus::Ok
    })
}

/// # Safety
/// `w` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn rw_word_free(w: *mut RwWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// A scheme from insertion and deletion letter strings of lengths 3/2 or
/// 2/3, e.g. `"aba"` and `"ab"`.
///
/// # Safety
/// `ins` and `del` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rw_scheme_new(ins: *const c_char, del: *const c_char, out: *mut *mut RwScheme) -> RwStatus {
    guard(|| {
        if out.is_null() {
            return fail(RwStatus::NullArgument, "null argument");
        }
        let (ins, del) = match (read_str(ins), read_str(del)) {
            (Ok(i), Ok(d)) => (i, d),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match SimpleScheme::new(ins, del) {
            Ok(s) => emit(out, RwScheme(s)),
            Err(e) => fail(RwStatus::InvalidScheme, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn rw_scheme_free(s: *mut RwScheme) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Insert the scheme's insertion rule after the first `k` positions.
///
/// # Safety
/// `w` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rw_insert(w: *const RwWord, s: *const RwScheme, k: usize, out: *mut *mut RwWord) -> RwStatus {
    guard(|| {
        let (Some(w), Some(s), false) = (w.as_ref(), s.as_ref(), out.is_null()) else {
            return fail(RwStatus::NullArgument, "null argument");
        };
        match insert_block(&w.0, s.0.ins_rule.body(), k) {
            Ok(r) => emit(out, RwWord(r)),
            Err(e) => fail(RwStatus::OutOfRange, e.to_string()),
        }
    })
}

/// Delete the scheme's deletion rule at window `k` (1-based).
///
/// # Safety
/// `w` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rw_delete(w: *const RwWord, s: *const RwScheme, k: usize, out: *mut *mut RwWord) -> RwStatus {
    guard(|| {
        let (Some(w), Some(s), false) = (w.as_ref(), s.as_ref(), out.is_null()) else {
            return fail(RwStatus::NullArgument, "null argument");
        };
        let d = s.0.del_rule.body();
        if k == 0 || k + d.len() > w.0.len() + 1 {
            return fail(RwStatus::OutOfRange, format!("window {k} does not fit a word of length {}", w.0.len()));
        }
        match delete_block(&w.0, d, k) {
            Some(r) => emit(out, RwWord(r)),
            None => fail(RwStatus::NotApplicable, format!("deletion does not apply at {k}")),
        }
    })
}

/// Is the fully defined word `w` derivable from ε? A zero budget field
/// takes the library default.
///
/// # Safety
/// `s` and `w` must be live handles; `verdict` must be writable; `states`
/// must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn rw_decide(
    s: *const RwScheme,
    w: *const RwWord,
    max_len: usize,
    max_depth: usize,
    verdict: *mut RwVerdict,
    states: *mut usize,
) -> RwStatus {
    guard(|| {
        let (Some(s), Some(w), false) = (s.as_ref(), w.as_ref(), verdict.is_null()) else {
            return fail(RwStatus::NullArgument, "null argument");
        };
        let def = Budget::default();
        let budget = Budget {
            max_len: if max_len == 0 { def.max_len } else { max_len },
            max_depth: if max_depth == 0 { def.max_depth } else { max_depth },
        };
        match decide_membership(&s.0, &w.0, budget) {
            Ok(v) => {
                *verdict = match v.member {
                    Member::Yes => RwVerdict::Yes,
                    Member::No => RwVerdict::No,
                    Member::Unknown => RwVerdict::Unknown,
                };
                if !states.is_null() {
                    *states = v.states;
                }
                RwStatus::Ok
            }
            Err(e) => fail(RwStatus::InvalidWord, e.to_string()),
        }
    })
}

/// Derive ε from `w`; `steps` receives the derivation's length.
///
/// # Safety
/// `s` and `w` must be live handles; `steps` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rw_delete_word(s: *const RwScheme, w: *const RwWord, steps: *mut usize) -> RwStatus {
    guard(|| {
        let (Some(s), Some(w), false) = (s.as_ref(), w.as_ref(), steps.is_null()) else {
            return fail(RwStatus::NullArgument, "null argument");
        };
        match delete_word(&s.0, &w.0) {
            Ok(t) => {
                debug_assert!(t.final_word().is_empty());
                *steps = t.len();
                RwStatus::Ok
            }
            Err(e) => fail(RwStatus::Internal, e.to_string()),
        }
    })
}
