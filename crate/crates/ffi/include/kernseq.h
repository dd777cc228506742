#ifndef KERNSEQ_H
#define KERNSEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Answer of a decision procedure; the values match the CLI exit codes.
 */
typedef enum KsOutcome {
  KS_OUTCOME_YES = 0,
  KS_OUTCOME_NO = 1,
  KS_OUTCOME_UNKNOWN = 2,
} KsOutcome;

typedef enum KsReason {
  KS_REASON_NONE = 0,
  KS_REASON_NOT_LENGTH_PRESERVING = 1,
  KS_REASON_NOT_PREFIX_CLOSED = 2,
  KS_REASON_INFINITE_INDEX = 3,
  KS_REASON_CLOSURE_CAP_EXHAUSTED = 4,
} KsReason;

/**
 * Result of every fallible call.
 */
typedef enum KsStatus {
  KS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  KS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  KS_STATUS_INVALID_UTF8 = 2,
  /**
   * The text is not a well-formed transducer file.
   */
  KS_STATUS_PARSE = 3,
  /**
   * The file describes a machine other than a letter-transducer.
   */
  KS_STATUS_NOT_RELATION = 4,
  /**
   * The relation does not meet a precondition of the requested operation.
   */
  KS_STATUS_INVALID_INPUT = 5,
  /**
   * The verdict carries no witness.
   */
  KS_STATUS_NO_WITNESS = 6,
  /**
   * An internal consistency check failed.
   */
  KS_STATUS_INTERNAL = 7,
  /**
   * The library panicked; the handles passed in should not be reused.
   */
  KS_STATUS_PANIC = 8,
} KsStatus;

/**
 * A parsed letter-to-letter relation.
 */
typedef struct KsRelation KsRelation;

/**
 * The verdict of a decision procedure, with its witness when the answer is yes.
 */
typedef struct KsVerdict KsVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ks_version(void);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *ks_last_error(void);

/**
 * Parses a letter-transducer from the text of a transducer file.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KsStatus ks_relation_parse(const char *text, struct KsRelation **out);

/**
 * # Safety
 * `relation` must be null or a handle from [`ks_relation_parse`] that has not been freed.
 */
void ks_relation_free(struct KsRelation *relation);

/**
 * Number of states of the parsed transducer, 0 for a null handle.
 *
 * # Safety
 * `relation` must be null or a live handle.
 */
size_t ks_relation_num_states(const struct KsRelation *relation);

/**
 * Whether the relation is an equivalence over its alphabet.
 *
 * # Safety
 * `relation` must be a live handle and `out` a valid pointer.
 */
enum KsStatus ks_relation_is_equivalence(const struct KsRelation *relation, bool *out);

/**
 * Is the relation the kernel of a Mealy machine?
 *
 * # Safety
 * `relation` must be a live handle and `out` a valid pointer.
 */
enum KsStatus ks_decide_ll(const struct KsRelation *relation, struct KsVerdict **out);

/**
 * Is the relation the kernel of a sequential function? The closure of its
 * prefix closure is computed with at most `closure_cap` rounds; the witness
 * is sequential when `eliminate_final_output` is set, subsequential otherwise.
 *
 * # Safety
 * `relation` must be a live handle and `out` a valid pointer.
 */
enum KsStatus ks_decide_lp(const struct KsRelation *relation,
                           size_t closure_cap,
                           bool eliminate_final_output,
                           struct KsVerdict **out);

/**
 * # Safety
 * `verdict` must be null or a handle from a decision call that has not been freed.
 */
void ks_verdict_free(struct KsVerdict *verdict);

/**
 * Outcome of a verdict; a null handle reads as unknown.
 *
 * # Safety
 * `verdict` must be null or a live handle.
 */
enum KsOutcome ks_verdict_outcome(const struct KsVerdict *verdict);

/**
 * # Safety
 * `verdict` must be null or a live handle.
 */
enum KsReason ks_verdict_reason(const struct KsVerdict *verdict);

/**
 * Number of states of the witness, 0 when there is none.
 *
 * # Safety
 * `verdict` must be null or a live handle.
 */
size_t ks_verdict_witness_states(const struct KsVerdict *verdict);

/**
 * The witness in the transducer file format. Free it with [`ks_string_free`].
 *
 * # Safety
 * `verdict` must be a live handle and `out` a valid pointer.
 */
enum KsStatus ks_verdict_witness_text(const struct KsVerdict *verdict, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void ks_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KERNSEQ_H */
