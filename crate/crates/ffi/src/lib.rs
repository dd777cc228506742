//! C ABI for `kernseq`.
//!
//! Relations and verdicts live behind opaque handles that the caller frees
//! with the matching `*_free` function. Every fallible call returns a
//! [`KsStatus`]; on failure, [`ks_last_error`] describes what went wrong on
//! the calling thread. Strings handed out by the library are released with
//! [`ks_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kernseq::decision::{decide_kerseq_ll, decide_kerseq_lp, LpOptions, Outcome, Reason, Verdict};
use kernseq::format;
use kernseq::machine::Machine;
use kernseq::relation::validate_relation;
use kernseq::{Error, LetterTransducer};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The text is not a well-formed transducer file.
    Parse = 3,
    /// The file describes a machine other than a letter-transducer.
    NotRelation = 4,
    /// The relation does not meet a precondition of the requested operation.
    InvalidInput = 5,
    /// The verdict carries no witness.
    NoWitness = 6,
    /// An internal consistency check failed.
    Internal = 7,
    /// The library panicked; the handles passed in should not be reused.
    Panic = 8,
}

/// Answer of a decision procedure; the values match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsOutcome {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsReason {
    None = 0,
    NotLengthPreserving = 1,
    NotPrefixClosed = 2,
    InfiniteIndex = 3,
    ClosureCapExhausted = 4,
}

/// A parsed letter-to-letter relation.
pub struct KsRelation {
    inner: LetterTransducer,
}

/// The verdict of a decision procedure, with its witness when the answer is yes.
pub struct KsVerdict {
    inner: Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: KsStatus, message: impl Into<String>) -> KsStatus {
    set_error(message);
    status
}

fn from_error(e: Error) -> KsStatus {
    let status = match &e {
        Error::Parse { .. } | Error::Semantic { .. } => KsStatus::Parse,
        e if e.is_internal() => KsStatus::Internal,
        _ => KsStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

/// Runs `body`, turning a panic into [`KsStatus::Panic`].
fn guard(body: impl FnOnce() -> KsStatus) -> KsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(KsStatus::Panic, message)
        }
    }
}

fn outcome(o: Outcome) -> KsOutcome {
    match o {
        Outcome::Yes => KsOutcome::Yes,
        Outcome::No => KsOutcome::No,
        Outcome::Unknown => KsOutcome::Unknown,
    }
}

fn reason(r: Option<Reason>) -> KsReason {
    match r {
        None => KsReason::None,
        Some(Reason::NotLengthPreserving) => KsReason::NotLengthPreserving,
        Some(Reason::NotPrefixClosed) => KsReason::NotPrefixClosed,
        Some(Reason::InfiniteIndex) => KsReason::InfiniteIndex,
        Some(Reason::ClosureCapExhausted) => KsReason::ClosureCapExhausted,
    }
}

unsafe fn give_string(text: String, out: *mut *mut c_char) -> KsStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            KsStatus::Ok
        }
        Err(_) => fail(KsStatus::Internal, "string contains a NUL byte"),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ks_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ks_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a letter-transducer from the text of a transducer file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_relation_parse(text: *const c_char, out: *mut *mut KsRelation) -> KsStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(KsStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(KsStatus::InvalidUtf8, "text is not UTF-8");
        };
        match format::parse(text) {
            Ok(file) => match file.machine {
                Machine::Letter(inner) => {
                    *out = Box::into_raw(Box::new(KsRelation { inner }));
                    KsStatus::Ok
                }
                other => fail(
                    KsStatus::NotRelation,
                    format!("expected a letter-transducer, found a {} machine", other.kind()),
                ),
            },
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `relation` must be null or a handle from [`ks_relation_parse`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ks_relation_free(relation: *mut KsRelation) {
    if !relation.is_null() {
        drop(Box::from_raw(relation));
    }
}

/// Number of states of the parsed transducer, 0 for a null handle.
///
/// # Safety
/// `relation` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_relation_num_states(relation: *const KsRelation) -> usize {
    relation.as_ref().map_or(0, |r| r.inner.num_states())
}

/// Whether the relation is an equivalence over its alphabet.
///
/// # Safety
/// `relation` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_relation_is_equivalence(relation: *const KsRelation, out: *mut bool) -> KsStatus {
    guard(|| {
        let (Some(r), false) = (relation.as_ref(), out.is_null()) else {
            return fail(KsStatus::NullArgument, "null argument");
        };
        *out = validate_relation(&r.inner).is_equivalence();
        KsStatus::Ok
    })
}

unsafe fn decide(
    relation: *const KsRelation,
    out: *mut *mut KsVerdict,
    run: impl FnOnce(&LetterTransducer) -> kernseq::Result<Verdict>,
) -> KsStatus {
    guard(|| {
        let (Some(r), false) = (relation.as_ref(), out.is_null()) else {
            return fail(KsStatus::NullArgument, "null argument");
        };
        *out = ptr::null_mut();
        match run(&r.inner) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(KsVerdict { inner }));
                KsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Is the relation the kernel of a Mealy machine?
///
/// # Safety
/// `relation` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_decide_ll(relation: *const KsRelation, out: *mut *mut KsVerdict) -> KsStatus {
    decide(relation, out, decide_kerseq_ll)
}

/// Is the relation the kernel of a sequential function? The closure of its
/// prefix closure is computed with at most `closure_cap` rounds; the witness
/// is sequential when `eliminate_final_output` is set, subsequential otherwise.
///
/// # Safety
/// `relation` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_decide_lp(
    relation: *const KsRelation,
    closure_cap: usize,
    eliminate_final_output: bool,
    out: *mut *mut KsVerdict,
) -> KsStatus {
    let options = LpOptions {
        cap: closure_cap,
        eliminate_final_output,
        ..LpOptions::default()
    };
    decide(relation, out, |r| decide_kerseq_lp(r, None, options))
}

/// # Safety
/// `verdict` must be null or a handle from a decision call that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ks_verdict_free(verdict: *mut KsVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// Outcome of a verdict; a null handle reads as unknown.
///
/// # Safety
/// `verdict` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_verdict_outcome(verdict: *const KsVerdict) -> KsOutcome {
    verdict
        .as_ref()
        .map_or(KsOutcome::Unknown, |v| outcome(v.inner.outcome))
}

/// # Safety
/// `verdict` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_verdict_reason(verdict: *const KsVerdict) -> KsReason {
    verdict.as_ref().map_or(KsReason::None, |v| reason(v.inner.reason))
}

/// Number of states of the witness, 0 when there is none.
///
/// # Safety
/// `verdict` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_verdict_witness_states(verdict: *const KsVerdict) -> usize {
    verdict
        .as_ref()
        .and_then(|v| v.inner.witness.as_ref())
        .map_or(0, |w| w.machine.num_states())
}

/// The witness in the transducer file format. Free it with [`ks_string_free`].
///
/// # Safety
/// `verdict` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_verdict_witness_text(verdict: *const KsVerdict, out: *mut *mut c_char) -> KsStatus {
    guard(|| {
        let (Some(v), false) = (verdict.as_ref(), out.is_null()) else {
            return fail(KsStatus::NullArgument, "null argument");
        };
        *out = ptr::null_mut();
        match &v.inner.witness {
            Some(w) => give_string(format::print(&w.machine), out),
            None => fail(KsStatus::NoWitness, "the verdict has no witness"),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
