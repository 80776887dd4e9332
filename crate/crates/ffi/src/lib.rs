//! C ABI over `fwcs-core`.
//!
//! Every function returns an [`FwcsStatus`]. Results come back through out
//! pointers. Strings handed out are NUL-terminated UTF-8 owned by the caller
//! and released with [`fwcs_string_free`]; handles are released with their
//! own `_free` function. On failure, [`fwcs_last_error`] returns a message
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fwcs_core::compiler::{self, CompilerInput};
use fwcs_core::cs::{self, Report};
use fwcs_core::document::{self, Document, Payload};
use fwcs_core::fw::{self, Indexing};
use fwcs_core::rewrite::RewriteOp;
use fwcs_core::session::{Session, SessionError};

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FwcsStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// Input bytes were not UTF-8 or not well-formed for the expected type.
    Parse = 2,
    /// The document holds the wrong kind of payload for this call.
    WrongKind = 3,
    /// The input failed a check. Any report is still written.
    CheckFailed = 4,
    /// A rewrite or computation refused its input.
    Refused = 5,
    /// Undo or redo with nothing to step over.
    NoHistory = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

/// Payload kind of a document.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FwcsKind {
    FwSystem = 0,
    Presentation = 1,
    CompilerInput = 2,
}

/// Opaque parsed document.
pub struct FwcsDocument(Document);

/// Opaque rewrite session with undo history.
pub struct FwcsSession(Session);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FwcsStatus, String);

fn to_cstring(s: String) -> CString {
    CString::new(s).unwrap_or_else(|e| {
        let mut bytes = e.into_vec();
        bytes.retain(|&b| b != 0);
        CString::new(bytes).expect("NUL bytes removed")
    })
}

fn guard(f: impl FnOnce() -> Result<FwcsStatus, Failure>) -> FwcsStatus {
    let (status, message) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => (s, None),
        Ok(Err(Failure(s, m))) => (s, Some(m)),
        Err(_) => (FwcsStatus::Internal, Some("panic in fwcs".to_string())),
    };
    LAST_ERROR.with(|e| *e.borrow_mut() = message.map(to_cstring));
    status
}

fn null(what: &str) -> Failure {
    Failure(FwcsStatus::NullArgument, format!("{what} is NULL"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn out<T>(p: *mut T, what: &str, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    let c = CStr::from_ptr(deref(p, what)?);
    c.to_str().map_err(|e| Failure(FwcsStatus::Parse, format!("{what} is not UTF-8: {e}")))
}

fn give_string(s: String) -> *mut c_char {
    to_cstring(s).into_raw()
}

fn give_doc(d: Document) -> *mut FwcsDocument {
    Box::into_raw(Box::new(FwcsDocument(d)))
}

unsafe fn report_out(r: &Report, report: *mut *mut c_char) -> Result<FwcsStatus, Failure> {
    if !report.is_null() {
        report.write(give_string(document::to_canonical_json(r)));
    }
    if r.ok {
        Ok(FwcsStatus::Ok)
    } else {
        let first = r.violations.first().map_or(String::new(), |v| format!("{}: {}", v.code, v.message));
        Err(Failure(FwcsStatus::CheckFailed, first))
    }
}

fn wrong_kind(want: &str, got: &Payload) -> Failure {
    Failure(FwcsStatus::WrongKind, format!("expected a {want} document, found {:?}", got.kind()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn fwcs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or NULL. The caller
/// owns the copy.
#[no_mangle]
pub extern "C" fn fwcs_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Parses `len` bytes of document JSON.
///
/// # Safety
/// `bytes` must point to `len` readable bytes; `out_doc` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_document_parse(
    bytes: *const u8,
    len: usize,
    out_doc: *mut *mut FwcsDocument,
) -> FwcsStatus {
    guard(|| {
        let data = std::slice::from_raw_parts(deref(bytes, "bytes")?, len);
        let d = document::parse(data).map_err(|e| Failure(FwcsStatus::Parse, e.to_string()))?;
        out(out_doc, "out_doc", give_doc(d))?;
        Ok(FwcsStatus::Ok)
    })
}

/// Writes the canonical JSON form of `doc`.
///
/// # Safety
/// `doc` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_document_serialize(doc: *const FwcsDocument, out_json: *mut *mut c_char) -> FwcsStatus {
    guard(|| {
        let d = deref(doc, "doc")?;
        out(out_json, "out_json", give_string(document::to_canonical_json(&d.0)))?;
        Ok(FwcsStatus::Ok)
    })
}

/// # Safety
/// `doc` must be a live handle; `out_kind` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_document_kind(doc: *const FwcsDocument, out_kind: *mut FwcsKind) -> FwcsStatus {
    guard(|| {
        let kind = match deref(doc, "doc")?.0.payload {
            Payload::FwSystem(_) => FwcsKind::FwSystem,
            Payload::Presentation(_) => FwcsKind::Presentation,
            Payload::CompilerInput(_) => FwcsKind::CompilerInput,
        };
        out(out_kind, "out_kind", kind)?;
        Ok(FwcsStatus::Ok)
    })
}

/// Releases a document. NULL is ignored.
///
/// # Safety
/// `doc` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn fwcs_document_free(doc: *mut FwcsDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Checks a document of any kind. `out_report`, when not NULL, receives the
/// report JSON even if the check fails.
///
/// # Safety
/// `doc` must be a live handle; `out_report` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_validate(doc: *const FwcsDocument, out_report: *mut *mut c_char) -> FwcsStatus {
    guard(|| report_out(&deref(doc, "doc")?.0.validate(), out_report))
}

/// Checks a presentation against the FWCS arrow rules.
///
/// # Safety
/// As [`fwcs_validate`].
#[no_mangle]
pub unsafe extern "C" fn fwcs_check_fwcs(doc: *const FwcsDocument, out_report: *mut *mut c_char) -> FwcsStatus {
    guard(|| match &deref(doc, "doc")?.0.payload {
        Payload::Presentation(p) => report_out(&cs::check_fwcs(p), out_report),
        other => Err(wrong_kind("presentation", other)),
    })
}

/// Compiles a compilerInput document, or a base-indexed fwSystem, into a
/// presentation document.
///
/// # Safety
/// `doc` must be a live handle; `out_doc` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_compile(doc: *const FwcsDocument, out_doc: *mut *mut FwcsDocument) -> FwcsStatus {
    guard(|| {
        let input = match &deref(doc, "doc")?.0.payload {
            Payload::CompilerInput(c) => c.clone(),
            Payload::FwSystem(s) if s.indexing == Indexing::Base => CompilerInput::from_base(s, Vec::new()),
            other => return Err(wrong_kind("compilerInput or base-indexed fwSystem", other)),
        };
        let compiled = compiler::compile(&input).map_err(|e| Failure(FwcsStatus::Refused, e.to_string()))?;
        out(out_doc, "out_doc", give_doc(Document::presentation(compiled.presentation)))?;
        Ok(FwcsStatus::Ok)
    })
}

/// Lifts an fwSystem to its cyclic cover of degree `degree`.
///
/// # Safety
/// `doc` must be a live handle; `out_doc` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_lift(
    doc: *const FwcsDocument,
    degree: i64,
    out_doc: *mut *mut FwcsDocument,
) -> FwcsStatus {
    guard(|| match &deref(doc, "doc")?.0.payload {
        Payload::FwSystem(s) => {
            let lifted = fw::lift_to_cover(s, degree).map_err(|e| Failure(FwcsStatus::Refused, e.to_string()))?;
            out(out_doc, "out_doc", give_doc(Document::fw_system(lifted)))?;
            Ok(FwcsStatus::Ok)
        }
        other => Err(wrong_kind("fwSystem", other)),
    })
}

/// Runs the finger-graph criterion. `out_trivial` is 1 when it proves the
/// system S-trivial and 0 when it does not decide.
///
/// # Safety
/// `doc` must be a live handle; `out_trivial` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_s_trivial(doc: *const FwcsDocument, out_trivial: *mut i32) -> FwcsStatus {
    guard(|| match &deref(doc, "doc")?.0.payload {
        Payload::FwSystem(s) => {
            s.validate().map_err(|e| Failure(FwcsStatus::CheckFailed, e.to_string()))?;
            out(out_trivial, "out_trivial", i32::from(fw::s_trivial_by_graph(s)))?;
            Ok(FwcsStatus::Ok)
        }
        other => Err(wrong_kind("fwSystem", other)),
    })
}

fn session_failure(e: SessionError) -> Failure {
    let status = match e {
        SessionError::NothingToUndo | SessionError::NothingToRedo => FwcsStatus::NoHistory,
        SessionError::Invalid(_) => FwcsStatus::CheckFailed,
        SessionError::Rewrite(_) => FwcsStatus::Refused,
    };
    Failure(status, format!("{}: {e}", e.code()))
}

/// Starts a session on a copy of a presentation document.
///
/// # Safety
/// `doc` must be a live handle; `out_session` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_session_new(doc: *const FwcsDocument, out_session: *mut *mut FwcsSession) -> FwcsStatus {
    guard(|| match &deref(doc, "doc")?.0.payload {
        Payload::Presentation(p) => {
            let s = Session::new(p.clone()).map_err(session_failure)?;
            out(out_session, "out_session", Box::into_raw(Box::new(FwcsSession(s))))?;
            Ok(FwcsStatus::Ok)
        }
        other => Err(wrong_kind("presentation", other)),
    })
}

/// Applies one rewrite given as JSON. `out_diff`, when not NULL, receives
/// the diff JSON. A refused op leaves the session unchanged.
///
/// # Safety
/// `session` must be a live handle; `op_json` a NUL-terminated string;
/// `out_diff` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_session_apply(
    session: *mut FwcsSession,
    op_json: *const c_char,
    out_diff: *mut *mut c_char,
) -> FwcsStatus {
    guard(|| {
        let s = deref_mut(session, "session")?;
        let op: RewriteOp =
            document::parse_json(text(op_json, "op_json")?).map_err(|e| Failure(FwcsStatus::Parse, e.to_string()))?;
        let diff = s.0.apply(op).map_err(session_failure)?;
        if !out_diff.is_null() {
            out_diff.write(give_string(document::to_canonical_json(&diff)));
        }
        Ok(FwcsStatus::Ok)
    })
}

/// # Safety
/// `session` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fwcs_session_undo(session: *mut FwcsSession) -> FwcsStatus {
    guard(|| {
        deref_mut(session, "session")?.0.undo().map_err(session_failure)?;
        Ok(FwcsStatus::Ok)
    })
}

/// # Safety
/// `session` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fwcs_session_redo(session: *mut FwcsSession) -> FwcsStatus {
    guard(|| {
        deref_mut(session, "session")?.0.redo().map_err(session_failure)?;
        Ok(FwcsStatus::Ok)
    })
}

/// Copies the current snapshot out as a presentation document.
///
/// # Safety
/// `session` must be a live handle; `out_doc` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_session_current(
    session: *const FwcsSession,
    out_doc: *mut *mut FwcsDocument,
) -> FwcsStatus {
    guard(|| {
        let s = deref(session, "session")?;
        out(out_doc, "out_doc", give_doc(Document::presentation(s.0.current().clone())))?;
        Ok(FwcsStatus::Ok)
    })
}

/// # Safety
/// `session` must be a live handle; `out_cursor` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fwcs_session_cursor(session: *const FwcsSession, out_cursor: *mut usize) -> FwcsStatus {
    guard(|| {
        out(out_cursor, "out_cursor", deref(session, "session")?.0.cursor())?;
        Ok(FwcsStatus::Ok)
    })
}

/// Releases a session. NULL is ignored.
///
/// # Safety
/// `session` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn fwcs_session_free(session: *mut FwcsSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}
