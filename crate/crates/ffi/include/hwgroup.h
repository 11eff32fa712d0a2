#ifndef HWGROUP_H
#define HWGROUP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum {
  HW_STATUS_OK = 0,
  HW_STATUS_NULL_POINTER = 1,
  HW_STATUS_INVALID_ARGUMENT = 2,
  HW_STATUS_NOT_CANONICAL = 3,
  HW_STATUS_RESOURCE_LIMIT = 4,
  HW_STATUS_OVERFLOW = 5,
  HW_STATUS_BUFFER_TOO_SMALL = 6,
  HW_STATUS_OUT_OF_RANGE = 7,
  HW_STATUS_INTERNAL = 8,
} HwStatus;

/**
 * Opaque tensor-product decomposition.
 */
typedef struct HwFusion HwFusion;

/**
 * Opaque group handle.
 */
typedef struct HwGroup HwGroup;

/**
 * Opaque irrep handle.
 */
typedef struct HwIrrep HwIrrep;

/**
 * Group element `z^m x^n y^l`.
 */
typedef struct {
  uint32_t m;
  uint32_t n;
  uint32_t l;
} HwElement;

/**
 * Irrep label `(p, q, r)`.
 */
typedef struct {
  uint32_t p;
  uint32_t q;
  uint32_t r;
} HwLabel;

/**
 * Row `row` of a monomial matrix has `w^exp` in column `col`.
 */
typedef struct {
  uint32_t row;
  uint32_t col;
  uint32_t exp;
} HwMonomialEntry;

/**
 * `scale * w^exp` with `w = exp(2 pi i / root_modulus)`; `scale == 0` is zero.
 */
typedef struct {
  uint64_t scale;
  uint32_t exp;
  uint32_t root_modulus;
} HwCharValue;

typedef struct {
  HwLabel label;
  uint64_t dim;
  uint64_t mult;
} HwFusionTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *hw_last_error_message(void);

/**
 * Static name of a status code; "unknown status" for other values.
 */
const char *hw_status_name(int32_t status);

/**
 * `N_s = 2^{s-1}(3 * 2^s - 1)`; 0 when `s` is outside `1..=16`.
 */
uint64_t hw_irrep_count(uint32_t s);

/**
 * Number of conjugacy classes from the class-size sum; 0 when `s` is
 * outside `1..=16`.
 */
uint64_t hw_class_count(uint32_t s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
HwStatus hw_group_new(uint32_t s, HwGroup **out);

/**
 * # Safety
 * `group` must be null or a handle from [`hw_group_new`] not yet freed.
 */
void hw_group_free(HwGroup *group);

/**
 * # Safety
 * Pointers must be valid; `group` from [`hw_group_new`].
 */
HwStatus hw_group_order(const HwGroup *group, uint64_t *out);

/**
 * # Safety
 * Pointers must be valid; `group` from [`hw_group_new`].
 */
HwStatus hw_group_multiply(const HwGroup *group, HwElement a, HwElement b, HwElement *out);

/**
 * # Safety
 * Pointers must be valid; `group` from [`hw_group_new`].
 */
HwStatus hw_group_inverse(const HwGroup *group, HwElement a, HwElement *out);

/**
 * Reduces any integer triple to its canonical label.
 *
 * # Safety
 * `out` must be valid for writes.
 */
HwStatus hw_label_canonicalize(uint32_t s, int64_t p, int64_t q, int64_t r, HwLabel *out);

/**
 * Creates an irrep handle; fails with `NOT_CANONICAL` unless `q, r < 2^t`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
HwStatus hw_irrep_new(uint32_t s, HwLabel label, HwIrrep **out);

/**
 * # Safety
 * `irrep` must be null or a handle from [`hw_irrep_new`] not yet freed.
 */
void hw_irrep_free(HwIrrep *irrep);

/**
 * Dimension `2^{s-t}`, or 0 for a null handle.
 *
 * # Safety
 * `irrep` must be null or a live handle.
 */
size_t hw_irrep_dim(const HwIrrep *irrep);

/**
 * # Safety
 * Pointers must be valid.
 */
HwStatus hw_irrep_label(const HwIrrep *irrep, HwLabel *out);

/**
 * Writes the `dim` nonzero entries of `Γ(g)` into `entries`. `len_out`
 * always receives `dim`; with `capacity < dim` nothing else is written
 * and `BUFFER_TOO_SMALL` is returned. Exponents are of `exp(2 pi i / 2^s)`.
 *
 * # Safety
 * `entries` must be valid for `capacity` writes (may be null if
 * `capacity == 0`); other pointers must be valid.
 */
HwStatus hw_irrep_matrix(const HwIrrep *irrep,
                         HwElement g,
                         HwMonomialEntry *entries,
                         size_t capacity,
                         size_t *len_out);

/**
 * # Safety
 * Pointers must be valid.
 */
HwStatus hw_character(const HwIrrep *irrep, HwElement g, HwCharValue *out);

/**
 * Multiplicity of `c` in `a ⊗ b` (closed form).
 *
 * # Safety
 * Pointers must be valid.
 */
HwStatus hw_fusion_coeff(const HwIrrep *a, const HwIrrep *b, const HwIrrep *c, uint64_t *out);

/**
 * Multiplicity of `c` in `a ⊗ b` from the exact character sum.
 *
 * # Safety
 * Pointers must be valid.
 */
HwStatus hw_fusion_coeff_bruteforce(const HwIrrep *a,
                                    const HwIrrep *b,
                                    const HwIrrep *c,
                                    uint64_t *out);

/**
 * Decomposes `a ⊗ b`; release the result with [`hw_fusion_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
HwStatus hw_fuse(const HwIrrep *a, const HwIrrep *b, HwFusion **out);

/**
 * Number of distinct irreps in the decomposition, or 0 for null.
 *
 * # Safety
 * `fusion` must be null or a live handle.
 */
size_t hw_fusion_len(const HwFusion *fusion);

/**
 * # Safety
 * Pointers must be valid.
 */
HwStatus hw_fusion_term(const HwFusion *fusion, size_t index, HwFusionTerm *out);

/**
 * # Safety
 * `fusion` must be null or a handle from [`hw_fuse`] not yet freed.
 */
void hw_fusion_free(HwFusion *fusion);

/**
 * Writes `F_D` row-major as separate real and imaginary arrays of
 * `dim * dim` doubles. `len_out` always receives `dim * dim`.
 *
 * # Safety
 * `re` and `im` must each be valid for `capacity` writes; other pointers
 * must be valid.
 */
HwStatus hw_fourier_fd(const HwIrrep *irrep,
                       double *re,
                       double *im,
                       size_t capacity,
                       size_t *len_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HWGROUP_H */
