//! C ABI over `qpath`.
//!
//! Objects are opaque handles created by `*_new`/`*_parse` and released with
//! the matching `*_free`. Every fallible call returns a [`QpStatus`]; after a
//! non-`Ok` status, [`qp_last_error`] describes the problem. Strings handed
//! out by the library must be released with [`qp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qpath::cli::{self, CommandError};
use qpath::dsl::{self, Document};
use qpath::linalg::{ComplexMatrix, ComplexScalar, QuantumState};
use qpath::measure::{self, Part};
use qpath::paths::PathDiagram;

/// Status codes. Values 1 to 5 match the `qpath` binary's exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    ParseError = 1,
    SemanticError = 2,
    VerificationFailed = 3,
    ResourceCap = 4,
    IndexOutOfRange = 5,
    /// Null pointer, bad length or invalid UTF-8 in an argument.
    InvalidArgument = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpPart {
    Real = 0,
    Imag = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QpComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QpHadamardResult {
    /// Selected part of `<psi|U|psi>`.
    pub exact: f64,
    pub exact_p0: f64,
    pub sampled_p0: f64,
    pub estimate: f64,
}

/// Parsed document handle.
pub struct QpDocument(Document);

/// Dense complex matrix handle.
pub struct QpMatrix(ComplexMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: QpStatus, message: impl Into<String>) -> QpStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> QpStatus) -> QpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(QpStatus::Internal, "internal panic"))
}

fn status_of(e: &CommandError) -> QpStatus {
    match e.exit_code() {
        cli::exit::VERIFY => QpStatus::VerificationFailed,
        cli::exit::RESOURCE_CAP => QpStatus::ResourceCap,
        cli::exit::INDEX => QpStatus::IndexOutOfRange,
        _ => QpStatus::SemanticError,
    }
}

unsafe fn complex_slice(data: *const f64, count: usize) -> Result<Vec<ComplexScalar>, QpStatus> {
    if data.is_null() {
        return Err(fail(QpStatus::InvalidArgument, "null data pointer"));
    }
    let len = count
        .checked_mul(2)
        .ok_or_else(|| fail(QpStatus::InvalidArgument, "length overflow"))?;
    let raw = std::slice::from_raw_parts(data, len);
    Ok(raw
        .chunks_exact(2)
        .map(|c| ComplexScalar::new(c[0], c[1]))
        .collect())
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " "))
        .expect("interior NULs replaced")
        .into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn qp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `len` bytes of document source.
///
/// # Safety
/// `source` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_document_parse(
    source: *const u8,
    len: usize,
    out: *mut *mut QpDocument,
) -> QpStatus {
    guard(|| {
        if source.is_null() || out.is_null() {
            return fail(QpStatus::InvalidArgument, "null pointer");
        }
        *out = ptr::null_mut();
        let bytes = std::slice::from_raw_parts(source, len);
        match dsl::parse_bytes(bytes) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(QpDocument(doc)));
                QpStatus::Ok
            }
            Err(diags) => {
                let text: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
                fail(QpStatus::ParseError, text.join("\n"))
            }
        }
    })
}

/// # Safety
/// `doc` must come from [`qp_document_parse`] or be null.
#[no_mangle]
pub unsafe extern "C" fn qp_document_free(doc: *mut QpDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Runs a subcommand given as `argv` (subcommand name first, no program
/// name or file). On `Ok`, and on `VerificationFailed`, `*out_text`
/// receives the report; release it with [`qp_string_free`].
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_run(
    doc: *const QpDocument,
    argv: *const *const c_char,
    argc: usize,
    out_text: *mut *mut c_char,
) -> QpStatus {
    guard(|| {
        if doc.is_null() || out_text.is_null() || (argv.is_null() && argc > 0) {
            return fail(QpStatus::InvalidArgument, "null pointer");
        }
        *out_text = ptr::null_mut();
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            let p = *argv.add(i);
            if p.is_null() {
                return fail(QpStatus::InvalidArgument, format!("argv[{i}] is null"));
            }
            match CStr::from_ptr(p).to_str() {
                Ok(s) => args.push(s.to_string()),
                Err(_) => {
                    return fail(QpStatus::InvalidArgument, format!("argv[{i}] is not UTF-8"))
                }
            }
        }
        let command = match cli::parse_command(args) {
            Ok(c) => c,
            Err(e) => return fail(QpStatus::InvalidArgument, e.to_string()),
        };
        match cli::run_command(&(*doc).0, &command) {
            Ok(text) => {
                *out_text = into_c_string(text);
                QpStatus::Ok
            }
            Err(CommandError::Verification(report)) => {
                *out_text = into_c_string(report);
                fail(QpStatus::VerificationFailed, "verification failed")
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a `rows x cols` matrix from row-major interleaved `re, im` pairs
/// (`2 * rows * cols` doubles).
///
/// # Safety
/// `data` must point to `2 * rows * cols` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out: *mut *mut QpMatrix,
) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::InvalidArgument, "null pointer");
        }
        *out = ptr::null_mut();
        let Some(count) = rows.checked_mul(cols) else {
            return fail(QpStatus::InvalidArgument, "length overflow");
        };
        let entries = match complex_slice(data, count) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match ComplexMatrix::new(rows, cols, entries) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(QpMatrix(m)));
                QpStatus::Ok
            }
            Err(e) => fail(QpStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `m` must come from [`qp_matrix_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn qp_matrix_free(m: *mut QpMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `<output| U_L ... U_1 |input>` as a sum over paths; `layers[0]` acts first.
///
/// # Safety
/// `layers` must hold `n_layers` valid matrix handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_path_sum_amplitude(
    layers: *const *const QpMatrix,
    n_layers: usize,
    input: usize,
    output: usize,
    out: *mut QpComplex,
) -> QpStatus {
    guard(|| {
        if out.is_null() || (layers.is_null() && n_layers > 0) {
            return fail(QpStatus::InvalidArgument, "null pointer");
        }
        let mut ms = Vec::with_capacity(n_layers);
        for i in 0..n_layers {
            let p = *layers.add(i);
            if p.is_null() {
                return fail(QpStatus::InvalidArgument, format!("layer {i} is null"));
            }
            ms.push((*p).0.clone());
        }
        let result = PathDiagram::new(ms, input).and_then(|d| d.path_sum_amplitude(output));
        match result {
            Ok(z) => {
                *out = QpComplex { re: z.re, im: z.im };
                QpStatus::Ok
            }
            Err(e) => fail(status_of(&CommandError::from(e.clone())), e.to_string()),
        }
    })
}

/// Runs the Hadamard test of `u` on the state given as `dim` interleaved
/// `re, im` pairs.
///
/// # Safety
/// `u` must be a valid handle, `psi` must point to `2 * dim` doubles and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_hadamard_test(
    u: *const QpMatrix,
    psi: *const f64,
    dim: usize,
    part: QpPart,
    shots: u64,
    seed: u64,
    out: *mut QpHadamardResult,
) -> QpStatus {
    guard(|| {
        if u.is_null() || out.is_null() {
            return fail(QpStatus::InvalidArgument, "null pointer");
        }
        let amplitudes = match complex_slice(psi, dim) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let state = match QuantumState::new(amplitudes) {
            Ok(s) => s,
            Err(e) => return fail(QpStatus::InvalidArgument, e.to_string()),
        };
        let part = match part {
            QpPart::Real => Part::Real,
            QpPart::Imag => Part::Imag,
        };
        match measure::hadamard_test(&(*u).0, &state, part, shots, seed) {
            Ok(r) => {
                *out = QpHadamardResult {
                    exact: r.exact_value(),
                    exact_p0: r.exact_p0,
                    sampled_p0: r.sampled_p0,
                    estimate: r.estimate,
                };
                QpStatus::Ok
            }
            Err(e) => fail(QpStatus::SemanticError, e.to_string()),
        }
    })
}
