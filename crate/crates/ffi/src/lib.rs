//! C ABI over the `gridsat` crate.
//!
//! Objects are opaque handles created by `gs_*_parse`/`gs_*_build`
//! functions and released with the matching `gs_*_free`. Every fallible
//! function returns a [`GsStatus`]; on failure, [`gs_last_error`] describes
//! the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gridsat::engine::{Decision, EngineConfig, Variant};
use gridsat::extract::{extract_self_reduce, ExtractionStatus};
use gridsat::oracle::{self, OracleDecision};
use gridsat::{parse_dimacs_str, Assignment, CompatMatrix, Cnf};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// The input contains an empty clause.
    TriviallyUnsat = 4,
    OracleLimit = 5,
    EngineError = 6,
    FormatError = 7,
    BufferTooSmall = 8,
    InvalidArgument = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsVariant {
    Basic = 0,
    Async = 1,
    Triangular = 2,
    Square = 3,
}

/// Engine verdict on a matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsDecision {
    Unsat = 0,
    SatClaim = 1,
}

/// Solver verdict, numbered like the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsVerdict {
    /// The engine claimed SAT but no model could be extracted.
    Unknown = 0,
    Sat = 10,
    Unsat = 20,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GsStats {
    pub decision: GsDecision,
    pub sweeps: usize,
    pub box_updates: u64,
    pub early_exit: bool,
}

/// A parsed formula.
pub struct GsCnf(Cnf);

/// A compatibility matrix.
pub struct GsMatrix(CompatMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let msg = CString::new(msg.to_string().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: GsStatus, msg: impl ToString) -> GsStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into [`GsStatus::Panic`].
fn guard(f: impl FnOnce() -> GsStatus) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(GsStatus::Panic, msg)
        }
    }
}

/// Variants cross the boundary as integers so that out-of-range values
/// from C are rejected instead of being undefined behavior.
fn variant_of(v: u32) -> Result<Variant, GsStatus> {
    Ok(match v {
        x if x == GsVariant::Basic as u32 => Variant::Basic,
        x if x == GsVariant::Async as u32 => Variant::Async,
        x if x == GsVariant::Triangular as u32 => Variant::Triangular,
        x if x == GsVariant::Square as u32 => Variant::Square,
        _ => return Err(fail(GsStatus::InvalidArgument, format!("unknown variant {v}"))),
    })
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, GsStatus> {
    if text.is_null() {
        return Err(fail(GsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(GsStatus::InvalidUtf8, e))
}

unsafe fn write_model(a: &Assignment, model: *mut i32, model_len: usize) -> GsStatus {
    let lits = a.to_dimacs();
    if lits.is_empty() {
        return GsStatus::Ok;
    }
    if model.is_null() {
        return fail(GsStatus::NullPointer, "null model buffer");
    }
    if model_len < lits.len() {
        return fail(
            GsStatus::BufferTooSmall,
            format!("model needs {} slots, buffer has {model_len}", lits.len()),
        );
    }
    for (k, lit) in lits.into_iter().enumerate() {
        *model.add(k) = lit as i32;
    }
    GsStatus::Ok
}

/// The message of the last failed call on this thread, or an empty string.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses DIMACS text into `*out`. An empty clause yields
/// `GS_STATUS_TRIVIALLY_UNSAT` and no handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_cnf_parse(text: *const c_char, out: *mut *mut GsCnf) -> GsStatus {
    guard(|| {
        if out.is_null() {
            return fail(GsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_dimacs_str(text) {
            Ok(parsed) => {
                *out = Box::into_raw(Box::new(GsCnf(parsed.cnf)));
                GsStatus::Ok
            }
            Err(e) if e.is_trivially_unsat() => fail(GsStatus::TriviallyUnsat, e),
            Err(e) => fail(GsStatus::ParseError, e),
        }
    })
}

/// # Safety
/// `cnf` must be null or a handle from [`gs_cnf_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_cnf_free(cnf: *mut GsCnf) {
    if !cnf.is_null() {
        drop(Box::from_raw(cnf));
    }
}

/// Declared variable count, or 0 for a null handle.
///
/// # Safety
/// `cnf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gs_cnf_num_vars(cnf: *const GsCnf) -> u32 {
    cnf.as_ref().map_or(0, |c| c.0.num_vars())
}

/// Clause count after normalization, or 0 for a null handle.
///
/// # Safety
/// `cnf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gs_cnf_num_clauses(cnf: *const GsCnf) -> usize {
    cnf.as_ref().map_or(0, |c| c.0.num_clauses())
}

/// Decides `cnf` with `variant` (a [`GsVariant`] value) and, on a SAT
/// claim, extracts a model into `model` as DIMACS literals, one per
/// variable in order. `model` may be null when the formula has no
/// variables.
///
/// # Safety
/// `cnf` must be a live handle, `verdict` writable, and `model` valid for
/// `model_len` writes.
#[no_mangle]
pub unsafe extern "C" fn gs_solve(
    cnf: *const GsCnf,
    variant: u32,
    verdict: *mut GsVerdict,
    model: *mut i32,
    model_len: usize,
) -> GsStatus {
    guard(|| {
        let (Some(cnf), false) = (cnf.as_ref(), verdict.is_null()) else {
            return fail(GsStatus::NullPointer, "null handle or verdict pointer");
        };
        let engine = match variant_of(variant) {
            Ok(v) => EngineConfig::new(v),
            Err(s) => return s,
        };
        let decided = match engine.decide_formula(&cnf.0) {
            Ok(v) => v,
            Err(e) => return fail(GsStatus::EngineError, e),
        };
        if decided.decision == Decision::Unsat {
            *verdict = GsVerdict::Unsat;
            return GsStatus::Ok;
        }
        let outcome = match extract_self_reduce(&cnf.0, &engine) {
            Ok(o) => o,
            Err(e) => return fail(GsStatus::EngineError, e),
        };
        match (outcome.status, &outcome.model) {
            (ExtractionStatus::Model, Some(a)) => {
                let status = write_model(a, model, model_len);
                if status == GsStatus::Ok {
                    *verdict = GsVerdict::Sat;
                }
                status
            }
            _ => {
                *verdict = GsVerdict::Unknown;
                GsStatus::Ok
            }
        }
    })
}

/// Decides `cnf` by exhaustive enumeration; a model is written on SAT.
///
/// # Safety
/// Same contract as [`gs_solve`].
#[no_mangle]
pub unsafe extern "C" fn gs_oracle(
    cnf: *const GsCnf,
    verdict: *mut GsVerdict,
    model: *mut i32,
    model_len: usize,
) -> GsStatus {
    guard(|| {
        let (Some(cnf), false) = (cnf.as_ref(), verdict.is_null()) else {
            return fail(GsStatus::NullPointer, "null handle or verdict pointer");
        };
        let result = match oracle::brute_force(&cnf.0, false) {
            Ok(r) => r,
            Err(e) => return fail(GsStatus::OracleLimit, e),
        };
        match result.decision {
            OracleDecision::Unsat => {
                *verdict = GsVerdict::Unsat;
                GsStatus::Ok
            }
            OracleDecision::Sat => {
                let status = write_model(&result.models[0], model, model_len);
                if status == GsStatus::Ok {
                    *verdict = GsVerdict::Sat;
                }
                status
            }
        }
    })
}

/// Builds the compatibility matrix of `cnf`.
///
/// # Safety
/// `cnf` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_matrix_build(cnf: *const GsCnf, out: *mut *mut GsMatrix) -> GsStatus {
    guard(|| {
        let (Some(cnf), false) = (cnf.as_ref(), out.is_null()) else {
            return fail(GsStatus::NullPointer, "null handle or output pointer");
        };
        *out = Box::into_raw(Box::new(GsMatrix(CompatMatrix::build(&cnf.0))));
        GsStatus::Ok
    })
}

/// Reads a matrix in the text format produced by [`gs_matrix_serialize`].
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_matrix_deserialize(text: *const c_char, out: *mut *mut GsMatrix) -> GsStatus {
    guard(|| {
        if out.is_null() {
            return fail(GsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match CompatMatrix::deserialize(text) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(GsMatrix(c)));
                GsStatus::Ok
            }
            Err(e) => fail(GsStatus::FormatError, e),
        }
    })
}

/// # Safety
/// `matrix` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn gs_matrix_free(matrix: *mut GsMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Text form of `matrix`; release with [`gs_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gs_matrix_serialize(matrix: *const GsMatrix) -> *mut c_char {
    match matrix.as_ref() {
        Some(m) => CString::new(m.0.serialize()).expect("no nul bytes").into_raw(),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Counts structural violations of `matrix` into `*violations`.
///
/// # Safety
/// `matrix` must be a live handle and `violations` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_matrix_check_structure(matrix: *const GsMatrix, violations: *mut usize) -> GsStatus {
    guard(|| {
        let (Some(m), false) = (matrix.as_ref(), violations.is_null()) else {
            return fail(GsStatus::NullPointer, "null handle or output pointer");
        };
        let found = m.0.check_structure();
        if let Some(first) = found.first() {
            set_error(first);
        }
        *violations = found.len();
        GsStatus::Ok
    })
}

/// Runs `variant` (a [`GsVariant`] value) on a copy of `matrix` with the default schedule. Writes
/// run statistics to `*stats` and, when `fixpoint` is not null, a new
/// handle holding the final matrix to `*fixpoint`.
///
/// # Safety
/// `matrix` must be a live handle, `stats` writable, `fixpoint` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gs_matrix_run(
    matrix: *const GsMatrix,
    variant: u32,
    early_exit: bool,
    stats: *mut GsStats,
    fixpoint: *mut *mut GsMatrix,
) -> GsStatus {
    guard(|| {
        let (Some(m), false) = (matrix.as_ref(), stats.is_null()) else {
            return fail(GsStatus::NullPointer, "null handle or stats pointer");
        };
        let variant = match variant_of(variant) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let verdict = match EngineConfig::new(variant).with_early_exit(early_exit).run(m.0.clone()) {
            Ok(v) => v,
            Err(e) => return fail(GsStatus::EngineError, e),
        };
        *stats = GsStats {
            decision: match verdict.decision {
                Decision::Unsat => GsDecision::Unsat,
                Decision::SatClaim => GsDecision::SatClaim,
            },
            sweeps: verdict.stats.sweeps,
            box_updates: verdict.stats.box_updates,
            early_exit: verdict.stats.terminated_early,
        };
        if !fixpoint.is_null() {
            *fixpoint = Box::into_raw(Box::new(GsMatrix(verdict.fixpoint)));
        }
        GsStatus::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> *mut GsCnf {
        let text = CString::new(text).unwrap();
        let mut cnf = ptr::null_mut();
        assert_eq!(unsafe { gs_cnf_parse(text.as_ptr(), &mut cnf) }, GsStatus::Ok);
        cnf
    }

    #[test]
    fn parse_and_counts() {
        let cnf = parse("p cnf 3 2\n1 -2 0\n3 0\n");
        unsafe {
            assert_eq!(gs_cnf_num_vars(cnf), 3);
            assert_eq!(gs_cnf_num_clauses(cnf), 2);
            gs_cnf_free(cnf);
            assert_eq!(gs_cnf_num_vars(ptr::null()), 0);
        }
    }

    #[test]
    fn parse_errors_set_message() {
        let text = CString::new("p cnf 1 1\n2 0\n").unwrap();
        let mut cnf = ptr::null_mut();
        let status = unsafe { gs_cnf_parse(text.as_ptr(), &mut cnf) };
        assert_eq!(status, GsStatus::ParseError);
        assert!(cnf.is_null());
        let msg = unsafe { CStr::from_ptr(gs_last_error()) }.to_str().unwrap();
        assert!(!msg.is_empty());

        let text = CString::new("p cnf 1 1\n0\n").unwrap();
        assert_eq!(unsafe { gs_cnf_parse(text.as_ptr(), &mut cnf) }, GsStatus::TriviallyUnsat);
        assert_eq!(unsafe { gs_cnf_parse(ptr::null(), &mut cnf) }, GsStatus::NullPointer);
    }

    #[test]
    fn solve_small_model() {
        let cnf = parse("p cnf 2 2\n1 2 0\n-1 0\n");
        let mut verdict = GsVerdict::Unknown;
        let mut model = [0i32; 2];
        unsafe {
            assert_eq!(gs_solve(cnf, GsVariant::Basic as u32, &mut verdict, model.as_mut_ptr(), 2), GsStatus::Ok);
            assert_eq!((verdict, model), (GsVerdict::Sat, [-1, 2]));
            assert_eq!(
                gs_solve(cnf, GsVariant::Basic as u32, &mut verdict, model.as_mut_ptr(), 1),
                GsStatus::BufferTooSmall
            );
            assert_eq!(gs_solve(cnf, 9, &mut verdict, model.as_mut_ptr(), 2), GsStatus::InvalidArgument);
            gs_cnf_free(cnf);
        }
    }

    #[test]
    fn matrix_round_trip() {
        let cnf = parse("p cnf 1 2\n1 0\n-1 0\n");
        unsafe {
            let mut m = ptr::null_mut();
            assert_eq!(gs_matrix_build(cnf, &mut m), GsStatus::Ok);
            let text = gs_matrix_serialize(m);
            let mut back = ptr::null_mut();
            assert_eq!(gs_matrix_deserialize(text, &mut back), GsStatus::Ok);
            assert_eq!((*m).0, (*back).0);
            gs_string_free(text);
            gs_matrix_free(back);
            gs_matrix_free(m);
            gs_cnf_free(cnf);
        }
    }
}
