#ifndef TPG_H
#define TPG_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  TPG_STATUS_OK = 0,
  /**
   * The query has no answer (no improvement step, no equilibrium found).
   */
  TPG_STATUS_NOT_FOUND = 1,
  TPG_STATUS_INVALID_INPUT = 2,
  TPG_STATUS_BUDGET_EXCEEDED = 3,
  TPG_STATUS_UNSUPPORTED = 4,
  TPG_STATUS_NULL_POINTER = 5,
  TPG_STATUS_INTERNAL = 6,
} TpgStatus;

/**
 * Availability or declaration matrix.
 */
typedef struct TpgMatrix TpgMatrix;

/**
 * Improvement step of a coalition.
 */
typedef struct TpgStep TpgStep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *tpg_last_error(void);

/**
 * Builds an `n x m` matrix from `n * m` row-major entries.
 *
 * # Safety
 * `data` must point to `teams * slots` readable values; `out` must be valid
 * for writes.
 */
TpgStatus tpg_matrix_new(size_t teams, size_t slots, const uint64_t *data, TpgMatrix **out);

/**
 * Parses a `tpg v1` document.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
TpgStatus tpg_matrix_parse(const char *text, TpgMatrix **out);

/**
 * Serializes to a `tpg v1` document. Release the result with
 * `tpg_string_free`. Returns null if `matrix` is null.
 *
 * # Safety
 * `matrix` must be null or a live handle.
 */
char *tpg_matrix_serialize(const TpgMatrix *matrix);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void tpg_string_free(char *s);

/**
 * # Safety
 * `matrix` must be null or a live handle; it is invalid afterwards.
 */
void tpg_matrix_free(TpgMatrix *matrix);

/**
 * Number of teams (rows), or 0 for a null handle.
 *
 * # Safety
 * `matrix` must be null or a live handle.
 */
size_t tpg_matrix_teams(const TpgMatrix *matrix);

/**
 * Number of slots (columns), or 0 for a null handle.
 *
 * # Safety
 * `matrix` must be null or a live handle.
 */
size_t tpg_matrix_slots(const TpgMatrix *matrix);

/**
 * # Safety
 * `matrix` must be null or a live handle; `out` must be valid for writes.
 */
TpgStatus tpg_matrix_get(const TpgMatrix *matrix, size_t team, size_t slot, uint64_t *out);

/**
 * Pay-off of `team` under `profile` as the reduced fraction `num / den`.
 *
 * # Safety
 * `profile` must be null or a live handle; `num` and `den` must be valid
 * for writes.
 */
TpgStatus tpg_payoff(const TpgMatrix *profile, size_t team, uint64_t *num, uint64_t *den);

/**
 * Writes the winning slots in ascending order. `len` receives the number of
 * winners; if that exceeds `cap` nothing is written to `out` and
 * `TPG_STATUS_INVALID_INPUT` is returned, so callers can size the buffer.
 *
 * # Safety
 * `profile` must be null or a live handle; `out` must have room for `cap`
 * values; `len` must be valid for writes.
 */
TpgStatus tpg_winners(const TpgMatrix *profile, size_t *out, size_t cap, size_t *len);

/**
 * Improvement step of the given coalition from `profile`, or
 * `TPG_STATUS_NOT_FOUND`.
 *
 * # Safety
 * Handles must be null or live; `members` must point to `len` readable
 * values; `out` must be valid for writes.
 */
TpgStatus tpg_find_improvement(const TpgMatrix *instance,
                               const TpgMatrix *profile,
                               const size_t *members,
                               size_t len,
                               TpgStep **out);

/**
 * First improvement step over all coalitions of at most `max_size` teams,
 * or `TPG_STATUS_NOT_FOUND`.
 *
 * # Safety
 * Handles must be null or live; `out` must be valid for writes.
 */
TpgStatus tpg_find_improvement_any(const TpgMatrix *instance,
                                   const TpgMatrix *profile,
                                   size_t max_size,
                                   bool parallel,
                                   TpgStep **out);

/**
 * # Safety
 * `step` must be null or a live handle; it is invalid afterwards.
 */
void tpg_step_free(TpgStep *step);

/**
 * Coalition size, or 0 for a null handle.
 *
 * # Safety
 * `step` must be null or a live handle.
 */
size_t tpg_step_coalition_len(const TpgStep *step);

/**
 * Team index of the `k`-th coalition member and its pay-off before and
 * after the step. Any of the output pointers may be null.
 *
 * # Safety
 * `step` must be null or a live handle; non-null outputs must be valid for
 * writes.
 */
TpgStatus tpg_step_member(const TpgStep *step,
                          size_t k,
                          size_t *team,
                          uint64_t *old_num,
                          uint64_t *old_den,
                          uint64_t *new_num,
                          uint64_t *new_den);

/**
 * The slot that wins alone after the step, or `TPG_STATUS_NOT_FOUND` when
 * the step leaves a tie.
 *
 * # Safety
 * `step` must be null or a live handle; `out` must be valid for writes.
 */
TpgStatus tpg_step_target_slot(const TpgStep *step, size_t *out);

/**
 * Copy of the whole profile after the step, as a new handle.
 *
 * # Safety
 * `step` must be null or a live handle; `out` must be valid for writes.
 */
TpgStatus tpg_step_profile(const TpgStep *step, TpgMatrix **out);

/**
 * Checks whether `profile` is a `t`-strong Nash equilibrium. On return
 * `is_equilibrium` is set; when it is false and `witness` is non-null, a
 * blocking step is stored there.
 *
 * # Safety
 * Handles must be null or live; `is_equilibrium` must be valid for writes;
 * `witness` may be null.
 */
TpgStatus tpg_ne_verify(const TpgMatrix *instance,
                        const TpgMatrix *profile,
                        size_t t,
                        bool *is_equilibrium,
                        TpgStep **witness);

/**
 * Constructs a 1-strong equilibrium (`t == 1`, instances with entries at
 * most 3) or a 2-strong one (`t == 2`, 0/1 instances).
 *
 * # Safety
 * `instance` must be null or live; `out` must be valid for writes.
 */
TpgStatus tpg_ne_construct(const TpgMatrix *instance, size_t t, uint64_t budget, TpgMatrix **out);

/**
 * First `t`-strong equilibrium in profile order, or `TPG_STATUS_NOT_FOUND`.
 *
 * # Safety
 * `instance` must be null or live; `out` must be valid for writes.
 */
TpgStatus tpg_ne_search(const TpgMatrix *instance,
                        size_t t,
                        uint64_t budget,
                        bool parallel,
                        TpgMatrix **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TPG_H */
