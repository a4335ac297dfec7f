#ifndef IWASAWA_H
#define IWASAWA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IwStatus {
  IW_STATUS_OK = 0,
  /**
   * Malformed input: bad radicands, non-prime modulus, level out of range.
   */
  IW_STATUS_INPUT = 2,
  /**
   * The input is well formed but outside the hypotheses of the formula.
   */
  IW_STATUS_HYPOTHESIS = 3,
  IW_STATUS_INTERNAL = 4,
  IW_STATUS_NULL_POINTER = 5,
  /**
   * A panic was caught at the boundary.
   */
  IW_STATUS_PANIC = 6,
} IwStatus;

typedef enum IwVerdict {
  IW_VERDICT_ODD = 0,
  IW_VERDICT_EVEN = 1,
  IW_VERDICT_EVEN_NOT_DIV4 = 2,
  IW_VERDICT_OUT_OF_SCOPE = 3,
} IwVerdict;

typedef enum IwBehavior {
  IW_BEHAVIOR_SPLIT = 0,
  IW_BEHAVIOR_INERT = 1,
  IW_BEHAVIOR_RAMIFIED = 2,
  IW_BEHAVIOR_MIXED = 3,
} IwBehavior;

/**
 * Opaque multi-quadratic field.
 */
typedef struct IwField IwField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *iw_last_error(void);

/**
 * Parse comma-separated radicands (`"7,3,-1"`) into a new field handle.
 *
 * # Safety
 * `radicands` must be a NUL-terminated string; `out` must be writable.
 */
enum IwStatus iw_field_new(const char *radicands, struct IwField **out);

/**
 * Release a handle from [`iw_field_new`]. NULL is ignored.
 *
 * # Safety
 * `field` must come from [`iw_field_new`] and not be used afterwards.
 */
void iw_field_free(struct IwField *field);

/**
 * Rank of the field's square-class group, so the degree is `2^rank`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum IwStatus iw_field_rank(const struct IwField *field, uint32_t *out);

/**
 * Whether the field is imaginary (1) or real (0).
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum IwStatus iw_field_is_imaginary(const struct IwField *field, bool *out);

/**
 * `lambda_2` of an imaginary field. A negative `lambda_plus` assumes
 * Greenberg's conjecture for the maximal real subfield; otherwise it is the
 * known value of `lambda_2(K^+)`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum IwStatus iw_lambda2(const struct IwField *field, int64_t lambda_plus, uint64_t *out);

/**
 * Class-number parity verdict.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum IwStatus iw_parity(const struct IwField *field, enum IwVerdict *out);

/**
 * Least `f >= 1` with `p^f = +-1 (mod 2^n)`, for an odd prime `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IwStatus iw_f2n(uint64_t p, uint32_t n, uint64_t *out);

/**
 * Number of primes above the odd prime `p` in the n-th layer `Q_n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IwStatus iw_num_primes_qn(uint64_t p, uint32_t n, uint64_t *out);

/**
 * Behaviour of the primes above `p` in `Q_n(sqrt(d)) / Q_n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IwStatus iw_splitting_quadratic(uint64_t p, int64_t d, uint32_t n, enum IwBehavior *out);

/**
 * Full JSON report for `command` (`"lambda"`, `"parity"` or `"genus"`) on
 * the given radicands, as the command-line tool prints with `--json`. The
 * report is written even when it carries errors; free it with
 * [`iw_string_free`].
 *
 * # Safety
 * Both strings must be NUL-terminated; `out` must be writable.
 */
enum IwStatus iw_report_json(const char *command, const char *radicands, char **out);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void iw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IWASAWA_H */
