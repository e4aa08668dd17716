//! C ABI for stabkit.
//!
//! Codes and syndrome tables are opaque handles created by `stk_*` functions
//! and released with the matching `*_free`. Every fallible call returns a
//! [`StkStatus`]; on failure `stk_last_error()` describes the problem.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with `stk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stabkit::bits::BitVec;
use stabkit::bounds::hamming_bound;
use stabkit::decoder::{DecodeError, SyndromeTable};
use stabkit::stabilizer::{builtin, Distance, StabilizerError, StabilizerGroup};
use stabkit::PauliOperator;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed text input (code file, Pauli string, built-in name).
    Parse = 3,
    /// Well-formed input that fails validation, e.g. anticommuting generators.
    Invalid = 4,
    /// The syndrome has no entry in the table.
    UnknownSyndrome = 5,
    /// A length or size argument does not match the code.
    BadLength = 6,
    /// The distance exceeds the requested weight cap.
    AboveCap = 7,
    /// An internal panic was caught at the boundary.
    Internal = 8,
}

/// Opaque stabilizer code.
pub struct StkCode {
    group: StabilizerGroup,
}

/// Opaque lookup-table decoder.
pub struct StkTable {
    table: SyndromeTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: StkStatus, msg: impl Into<String>) -> StkStatus {
    set_error(msg);
    status
}

/// Runs `f` with panics turned into `StkStatus::Internal`.
fn guard(f: impl FnOnce() -> StkStatus) -> StkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(StkStatus::Internal, "internal error"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, StkStatus> {
    if p.is_null() {
        return Err(fail(StkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(StkStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn stabilizer_status(e: &StabilizerError) -> StkStatus {
    match e {
        StabilizerError::Parse { .. } | StabilizerError::Pauli(_) | StabilizerError::UnknownBuiltin(_) => {
            StkStatus::Parse
        }
        _ => StkStatus::Invalid,
    }
}

fn into_string_out(s: String, out: *mut *mut c_char) -> StkStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            StkStatus::Ok
        }
        Err(_) => fail(StkStatus::Internal, "string contains NUL"),
    }
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next `stk_*` call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn stk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from a `stk_*` out-parameter and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn stk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn store_code(result: Result<StabilizerGroup, StabilizerError>, out: *mut *mut StkCode) -> StkStatus {
    match result {
        Ok(group) => {
            unsafe { *out = Box::into_raw(Box::new(StkCode { group })) };
            StkStatus::Ok
        }
        Err(e) => fail(stabilizer_status(&e), e.to_string()),
    }
}

/// Creates one of the built-in codes: "shor9", "steane7" or "five_qubit".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_code_builtin(name: *const c_char, out: *mut *mut StkCode) -> StkStatus {
    guard(|| {
        if out.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        match read_str(name) {
            Ok(name) => store_code(builtin(name), out),
            Err(s) => s,
        }
    })
}

/// Parses a code in the `.stab` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_code_parse(text: *const c_char, out: *mut *mut StkCode) -> StkStatus {
    guard(|| {
        if out.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        match read_str(text) {
            Ok(text) => store_code(StabilizerGroup::parse_stab(text), out),
            Err(s) => s,
        }
    })
}

/// Releases a code. Null is ignored.
///
/// # Safety
/// `code` must come from `stk_code_builtin` or `stk_code_parse`.
#[no_mangle]
pub unsafe extern "C" fn stk_code_free(code: *mut StkCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

unsafe fn code_ref<'a>(code: *const StkCode) -> Result<&'a StkCode, StkStatus> {
    code.as_ref().ok_or_else(|| fail(StkStatus::NullPointer, "null code handle"))
}

unsafe fn code_query(code: *const StkCode, out: *mut usize, f: fn(&StabilizerGroup) -> usize) -> StkStatus {
    guard(|| {
        let code = match code_ref(code) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        *out = f(&code.group);
        StkStatus::Ok
    })
}

/// Number of physical qubits.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_code_num_qubits(code: *const StkCode, out: *mut usize) -> StkStatus {
    code_query(code, out, |g| g.num_qubits())
}

/// Number of stabilizer generators (the syndrome length).
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_code_num_generators(code: *const StkCode, out: *mut usize) -> StkStatus {
    code_query(code, out, |g| g.num_generators())
}

/// Number of encoded qubits.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_code_num_logical(code: *const StkCode, out: *mut usize) -> StkStatus {
    code_query(code, out, |g| g.num_logical())
}

/// Exhaustive distance up to `weight_cap`. Returns `STK_STATUS_ABOVE_CAP`
/// when no logical operator of weight `<= weight_cap` exists.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_code_distance(code: *const StkCode, weight_cap: usize, out: *mut usize) -> StkStatus {
    guard(|| {
        let code = match code_ref(code) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        match code.group.distance(weight_cap) {
            Distance::Exact(d) => {
                *out = d;
                StkStatus::Ok
            }
            Distance::AboveCap(cap) => fail(StkStatus::AboveCap, format!("distance exceeds {cap}")),
        }
    })
}

/// Writes the code in `.stab` text format to `*out`.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_code_to_string(code: *const StkCode, out: *mut *mut c_char) -> StkStatus {
    guard(|| {
        let code = match code_ref(code) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        into_string_out(code.group.to_stab_string(), out)
    })
}

/// Syndrome of a Pauli string such as "XIZII" or "-iY". Writes one byte
/// (0 or 1) per generator into `bits`, which must hold `len` bytes with
/// `len >= stk_code_num_generators`.
///
/// # Safety
/// `code` must be a live handle, `pauli` a NUL-terminated string and `bits`
/// valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn stk_code_syndrome(
    code: *const StkCode,
    pauli: *const c_char,
    bits: *mut u8,
    len: usize,
) -> StkStatus {
    guard(|| {
        let code = match code_ref(code) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let text = match read_str(pauli) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if bits.is_null() {
            return fail(StkStatus::NullPointer, "null syndrome buffer");
        }
        let m = code.group.num_generators();
        if len < m {
            return fail(StkStatus::BadLength, format!("buffer holds {len} bits, syndrome has {m}"));
        }
        let p: PauliOperator = match text.parse() {
            Ok(p) => p,
            Err(e) => return fail(StkStatus::Parse, format!("{e}")),
        };
        let syn = match code.group.syndrome(&p) {
            Ok(s) => s,
            Err(e) => return fail(StkStatus::BadLength, e.to_string()),
        };
        let out = std::slice::from_raw_parts_mut(bits, m);
        for (i, b) in out.iter_mut().enumerate() {
            *b = syn.get(i) as u8;
        }
        StkStatus::Ok
    })
}

/// Builds the minimum-weight lookup table for errors of weight `<= t`.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_table_build(code: *const StkCode, t: usize, out: *mut *mut StkTable) -> StkStatus {
    guard(|| {
        let code = match code_ref(code) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        let table = SyndromeTable::build(&code.group, t);
        *out = Box::into_raw(Box::new(StkTable { table }));
        StkStatus::Ok
    })
}

/// Number of distinct syndromes in the table.
///
/// # Safety
/// `table` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_table_len(table: *const StkTable, out: *mut usize) -> StkStatus {
    guard(|| {
        let Some(table) = table.as_ref() else {
            return fail(StkStatus::NullPointer, "null table handle");
        };
        if out.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        *out = table.table.len();
        StkStatus::Ok
    })
}

/// Looks up the correction for a syndrome given as `len` bytes of 0/1 and
/// writes it as a Pauli string to `*out`.
///
/// # Safety
/// `table` must be a live handle, `bits` valid for `len` reads and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_table_decode(
    table: *const StkTable,
    bits: *const u8,
    len: usize,
    out: *mut *mut c_char,
) -> StkStatus {
    guard(|| {
        let Some(table) = table.as_ref() else {
            return fail(StkStatus::NullPointer, "null table handle");
        };
        if bits.is_null() || out.is_null() {
            return fail(StkStatus::NullPointer, "null pointer argument");
        }
        let raw = std::slice::from_raw_parts(bits, len);
        if let Some(b) = raw.iter().find(|&&b| b > 1) {
            return fail(StkStatus::Parse, format!("syndrome byte {b} is not 0 or 1"));
        }
        let syn = BitVec::from_bools(raw.iter().map(|&b| b == 1));
        match table.table.decode(&syn) {
            Ok(c) => into_string_out(c.to_string(), out),
            Err(e @ DecodeError::UnknownSyndrome { .. }) => fail(StkStatus::UnknownSyndrome, e.to_string()),
            Err(e) => fail(StkStatus::BadLength, e.to_string()),
        }
    })
}

/// Releases a table. Null is ignored.
///
/// # Safety
/// `table` must come from `stk_table_build`.
#[no_mangle]
pub unsafe extern "C" fn stk_table_free(table: *mut StkTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Quantum Hamming bound for `[[n, k]]` correcting `t` errors, evaluated
/// exactly. `*satisfied` is set to 1 or 0.
///
/// # Safety
/// `satisfied` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stk_hamming_bound(n: usize, k: usize, t: usize, satisfied: *mut u8) -> StkStatus {
    guard(|| {
        if satisfied.is_null() {
            return fail(StkStatus::NullPointer, "null out pointer");
        }
        *satisfied = hamming_bound(n, k, t).satisfied as u8;
        StkStatus::Ok
    })
}
