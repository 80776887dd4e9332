#ifndef FWCS_H
#define FWCS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes shared by every entry point.
 */
typedef enum FwcsStatus {
  FWCS_STATUS_OK = 0,
  /*
   A required pointer argument was NULL.
   */
  FWCS_STATUS_NULL_ARGUMENT = 1,
  /*
   Input bytes were not UTF-8 or not well-formed for the expected type.
   */
  FWCS_STATUS_PARSE = 2,
  /*
   The document holds the wrong kind of payload for this call.
   */
  FWCS_STATUS_WRONG_KIND = 3,
  /*
   The input failed a check. Any report is still written.
   */
  FWCS_STATUS_CHECK_FAILED = 4,
  /*
   A rewrite or computation refused its input.
   */
  FWCS_STATUS_REFUSED = 5,
  /*
   Undo or redo with nothing to step over.
   */
  FWCS_STATUS_NO_HISTORY = 6,
  /*
   A Rust panic was caught at the boundary.
   */
  FWCS_STATUS_INTERNAL = 7,
} FwcsStatus;

/*
 Payload kind of a document.
 */
typedef enum FwcsKind {
  FWCS_KIND_FW_SYSTEM = 0,
  FWCS_KIND_PRESENTATION = 1,
  FWCS_KIND_COMPILER_INPUT = 2,
} FwcsKind;

/*
 Opaque parsed document.
 */
typedef struct FwcsDocument FwcsDocument;

/*
 Opaque rewrite session with undo history.
 */
typedef struct FwcsSession FwcsSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void fwcs_string_free(char *s);

/*
 Message for the last failed call on this thread, or NULL. The caller
 owns the copy.
 */
char *fwcs_last_error(void);

/*
 Parses `len` bytes of document JSON.

 # Safety
 `bytes` must point to `len` readable bytes; `out_doc` must be writable.
 */
enum FwcsStatus fwcs_document_parse(const uint8_t *bytes,
                                    uintptr_t len,
                                    struct FwcsDocument **out_doc);

/*
 Writes the canonical JSON form of `doc`.

 # Safety
 `doc` must be a live handle; `out_json` must be writable.
 */
enum FwcsStatus fwcs_document_serialize(const struct FwcsDocument *doc, char **out_json);

/*
 # Safety
 `doc` must be a live handle; `out_kind` must be writable.
 */
enum FwcsStatus fwcs_document_kind(const struct FwcsDocument *doc, enum FwcsKind *out_kind);

/*
 Releases a document. NULL is ignored.

 # Safety
 `doc` must come from this library and not have been freed already.
 */
void fwcs_document_free(struct FwcsDocument *doc);

/*
 Checks a document of any kind. `out_report`, when not NULL, receives the
 report JSON even if the check fails.

 # Safety
 `doc` must be a live handle; `out_report` must be NULL or writable.
 */
enum FwcsStatus fwcs_validate(const struct FwcsDocument *doc, char **out_report);

/*
 Checks a presentation against the FWCS arrow rules.

 # Safety
 As [`fwcs_validate`].
 */
enum FwcsStatus fwcs_check_fwcs(const struct FwcsDocument *doc, char **out_report);

/*
 Compiles a compilerInput document, or a base-indexed fwSystem, into a
 presentation document.

 # Safety
 `doc` must be a live handle; `out_doc` must be writable.
 */
enum FwcsStatus fwcs_compile(const struct FwcsDocument *doc, struct FwcsDocument **out_doc);

/*
 Lifts an fwSystem to its cyclic cover of degree `degree`.

 # Safety
 `doc` must be a live handle; `out_doc` must be writable.
 */
enum FwcsStatus fwcs_lift(const struct FwcsDocument *doc,
                          int64_t degree,
                          struct FwcsDocument **out_doc);

/*
 Runs the finger-graph criterion. `out_trivial` is 1 when it proves the
 system S-trivial and 0 when it does not decide.

 # Safety
 `doc` must be a live handle; `out_trivial` must be writable.
 */
enum FwcsStatus fwcs_s_trivial(const struct FwcsDocument *doc, int32_t *out_trivial);

/*
 Starts a session on a copy of a presentation document.

 # Safety
 `doc` must be a live handle; `out_session` must be writable.
 */
enum FwcsStatus fwcs_session_new(const struct FwcsDocument *doc, struct FwcsSession **out_session);

/*
 Applies one rewrite given as JSON. `out_diff`, when not NULL, receives
 the diff JSON. A refused op leaves the session unchanged.

 # Safety
 `session` must be a live handle; `op_json` a NUL-terminated string;
 `out_diff` NULL or writable.
 */
enum FwcsStatus fwcs_session_apply(struct FwcsSession *session,
                                   const char *op_json,
                                   char **out_diff);

/*
 # Safety
 `session` must be a live handle.
 */
enum FwcsStatus fwcs_session_undo(struct FwcsSession *session);

/*
 # Safety
 `session` must be a live handle.
 */
enum FwcsStatus fwcs_session_redo(struct FwcsSession *session);

/*
 Copies the current snapshot out as a presentation document.

 # Safety
 `session` must be a live handle; `out_doc` must be writable.
 */
enum FwcsStatus fwcs_session_current(const struct FwcsSession *session,
                                     struct FwcsDocument **out_doc);

/*
 # Safety
 `session` must be a live handle; `out_cursor` must be writable.
 */
enum FwcsStatus fwcs_session_cursor(const struct FwcsSession *session, uintptr_t *out_cursor);

/*
 Releases a session. NULL is ignored.

 # Safety
 `session` must come from this library and not have been freed already.
 */
void fwcs_session_free(struct FwcsSession *session);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FWCS_H */
