#ifndef DIVSEQ_H
#define DIVSEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DivseqStatus {
  DIVSEQ_STATUS_OK = 0,
  DIVSEQ_STATUS_INPUT = 1,
  DIVSEQ_STATUS_UNSUPPORTED = 2,
  DIVSEQ_STATUS_RESOURCE = 3,
  DIVSEQ_STATUS_NULL_PTR = 4,
  DIVSEQ_STATUS_UTF8 = 5,
  DIVSEQ_STATUS_INTERNAL = 6,
} DivseqStatus;

/**
 * An EDS context parsed from a `kind = eds` or `kind = isogeny-pair` spec.
 */
typedef struct DivseqEds DivseqEds;

/**
 * A Lucas sequence parsed from a `kind = lucas` spec.
 */
typedef struct DivseqLucas DivseqLucas;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *divseq_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void divseq_string_free(char *s);

/**
 * Factors a polynomial written in the expression grammar.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` a valid pointer.
 */
enum DivseqStatus divseq_factor_json(const char *expr, char **out);

/**
 * # Safety
 * `spec` must be a NUL-terminated string; `out` a valid pointer.
 */
enum DivseqStatus divseq_lucas_new(const char *spec, struct DivseqLucas **out);

/**
 * Factored terms L_1 .. L_{n_max} as a JSON array.
 *
 * # Safety
 * `h` must come from `divseq_lucas_new`; `out` a valid pointer.
 */
enum DivseqStatus divseq_lucas_terms_json(const struct DivseqLucas *h, uint64_t n_max, char **out);

/**
 * # Safety
 * `h` must come from `divseq_lucas_new` or be null.
 */
void divseq_lucas_free(struct DivseqLucas *h);

/**
 * # Safety
 * `spec` must be a NUL-terminated string; `out` a valid pointer.
 */
enum DivseqStatus divseq_eds_new(const char *spec, uint64_t seed, struct DivseqEds **out);

/**
 * D_{nP} as `{"n", "degree", "components": [...]}`.
 *
 * # Safety
 * `h` must come from `divseq_eds_new`; `out` a valid pointer.
 */
enum DivseqStatus divseq_eds_divisor_json(const struct DivseqEds *h, uint64_t n, char **out);

/**
 * D_{nP} as a function on C: constant, v-power and primitive u-factors.
 *
 * # Safety
 * `h` must come from `divseq_eds_new`; `out` a valid pointer.
 */
enum DivseqStatus divseq_eds_render_json(const struct DivseqEds *h, uint64_t n, char **out);

/**
 * # Safety
 * `h` must come from `divseq_eds_new` or be null.
 */
void divseq_eds_free(struct DivseqEds *h);

/**
 * Runs a command given as a JSON array of arguments, e.g.
 * `["eds", "divisor", "--spec", "split.spec", "--n", "2"]`. `out` receives
 * standard output on success and the diagnostic otherwise.
 *
 * # Safety
 * `args` must be a NUL-terminated string; `out` and `exit_code` valid pointers.
 */
enum DivseqStatus divseq_run(const char *args, char **out, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIVSEQ_H */
