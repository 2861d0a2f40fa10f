#ifndef WHITEMAN_H
#define WHITEMAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WhtStatus {
  WHT_STATUS_OK = 0,
  WHT_STATUS_NULL_POINTER = 1,
  WHT_STATUS_BUFFER_TOO_SMALL = 2,
  WHT_STATUS_VERIFICATION_FAILED = 3,
  WHT_STATUS_NOT_PRIME = 10,
  WHT_STATUS_EQUAL_PRIMES = 11,
  WHT_STATUS_EVEN_PRIME = 12,
  WHT_STATUS_GCD_NOT_TWO = 13,
  WHT_STATUS_CONGRUENCE_VIOLATION = 14,
  WHT_STATUS_TOO_LARGE = 15,
  WHT_STATUS_NOT_PRIMITIVE_ROOT = 16,
  WHT_STATUS_NO_COMMON_ROOT = 17,
  WHT_STATUS_ODD_E = 18,
  WHT_STATUS_NOT_COPRIME = 19,
  WHT_STATUS_DETERMINANT_CAP = 20,
  WHT_STATUS_NOT_STRICT = 21,
  WHT_STATUS_PREFIX_TOO_SHORT = 22,
  WHT_STATUS_BAD_BIT = 23,
  WHT_STATUS_INTERNAL = 99,
} WhtStatus;

/**
 * Tri-state result of a gated check.
 */
typedef enum WhtVerdict {
  WHT_VERDICT_HOLDS = 0,
  WHT_VERDICT_FAILS = 1,
  WHT_VERDICT_NOT_APPLICABLE = 2,
} WhtVerdict;

/**
 * Opaque handle: validated parameters, partition and one period.
 */
typedef struct WhtSequence WhtSequence;

typedef struct WhtParams {
  uint64_t p;
  uint64_t q;
  uint64_t n;
  uint64_t g;
  uint64_t x;
  uint64_t e;
  bool strict;
  bool theorem1_applicable;
  bool theorem2_applicable;
} WhtParams;

typedef struct WhtAdicSummary {
  uint64_t phi2;
  uint64_t lower_bound;
  bool is_maximal;
  /**
   * `gcd(S(2), 2^N - 1) == 1`
   */
  bool gcd_is_one;
  enum WhtVerdict theorem1;
  enum WhtVerdict theorem2;
} WhtAdicSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never NULL; do not free.
 */
const char *wht_status_message(enum WhtStatus status);

/**
 * Build the sequence for `(p, q)`. `g = 0` selects the smallest common
 * primitive root.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle pointer.
 */
enum WhtStatus wht_sequence_new(uint64_t p,
                                uint64_t q,
                                uint64_t g,
                                bool strict,
                                struct WhtSequence **out);

/**
 * # Safety
 * `seq` must be NULL or a handle from [`wht_sequence_new`] not yet freed.
 */
void wht_sequence_free(struct WhtSequence *seq);

/**
 * Period `N`, or 0 for a NULL handle.
 *
 * # Safety
 * `seq` must be NULL or a live handle.
 */
uint64_t wht_sequence_period(const struct WhtSequence *seq);

/**
 * # Safety
 * `seq` must be a live handle and `out` writable.
 */
enum WhtStatus wht_sequence_params(const struct WhtSequence *seq, struct WhtParams *out);

/**
 * Copy one period (one byte per bit, index 0 first) into `buf`.
 *
 * # Safety
 * `seq` must be a live handle and `buf` must point to `len` writable bytes.
 */
enum WhtStatus wht_sequence_bits(const struct WhtSequence *seq, uint8_t *buf, size_t len);

/**
 * # Safety
 * `seq` must be a live handle and `out` writable.
 */
enum WhtStatus wht_two_adic_complexity(const struct WhtSequence *seq, struct WhtAdicSummary *out);

/**
 * `analyze` report as JSON. On `Ok` or `VerificationFailed`, `*out` holds a
 * string to release with [`wht_string_free`].
 *
 * # Safety
 * `seq` must be a live handle and `out` writable.
 */
enum WhtStatus wht_analyze_json(const struct WhtSequence *seq, char **out);

/**
 * `spectrum` report as JSON.
 *
 * # Safety
 * `seq` must be a live handle and `out` writable.
 */
enum WhtStatus wht_spectrum_json(const struct WhtSequence *seq, char **out);

/**
 * `det` report as JSON (exact determinant, both closed-form branches).
 *
 * # Safety
 * `seq` must be a live handle and `out` writable.
 */
enum WhtStatus wht_det_json(const struct WhtSequence *seq, char **out);

/**
 * The built-in results table as CSV.
 *
 * # Safety
 * `out` must be writable.
 */
enum WhtStatus wht_table_csv(char **out);

/**
 * Rational approximation of a bit prefix. `m` and `n` come back as decimal
 * strings (`n` positive and odd).
 *
 * # Safety
 * `bits` must point to `len` readable bytes; `m_out` and `n_out` writable.
 */
enum WhtStatus wht_raa_synthesize(const uint8_t *bits, size_t len, char **m_out, char **n_out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void wht_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WHITEMAN_H */
