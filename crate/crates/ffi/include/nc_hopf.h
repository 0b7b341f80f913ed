/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef NC_HOPF_H
#define NC_HOPF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NcHopfDirection {
  NC_HOPF_DIRECTION_CUMULANTS_TO_MOMENTS = 0,
  NC_HOPF_DIRECTION_MOMENTS_TO_CUMULANTS = 1,
} NcHopfDirection;

typedef enum NcHopfFlavor {
  NC_HOPF_FLAVOR_CLASSICAL = 0,
  NC_HOPF_FLAVOR_FREE = 1,
} NcHopfFlavor;

typedef enum NcHopfLattice {
  NC_HOPF_LATTICE_NON_CROSSING = 0,
  NC_HOPF_LATTICE_SET_PARTITIONS = 1,
} NcHopfLattice;

typedef enum NcHopfStatus {
  NC_HOPF_STATUS_OK = 0,
  NC_HOPF_STATUS_NULL_POINTER = 1,
  NC_HOPF_STATUS_INVALID_UTF8 = 2,
  NC_HOPF_STATUS_PARSE_ERROR = 3,
  NC_HOPF_STATUS_DOMAIN_ERROR = 4,
  NC_HOPF_STATUS_SIZE_LIMIT = 5,
  NC_HOPF_STATUS_PANIC = 6,
} NcHopfStatus;

typedef enum NcHopfVariant {
  NC_HOPF_VARIANT_FULL = 0,
  NC_HOPF_VARIANT_LEFT_PLUS = 1,
  NC_HOPF_VARIANT_RIGHT_PLUS = 2,
  NC_HOPF_VARIANT_LEFT = 3,
  NC_HOPF_VARIANT_RIGHT = 4,
  NC_HOPF_VARIANT_REDUCED = 5,
} NcHopfVariant;

/**
 * Opaque set partition handle.
 */
typedef struct NcHopfPartition NcHopfPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread; do not free.
 */
const char *nc_hopf_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void nc_hopf_string_free(char *s);

/**
 * Parses `{1,4}{2,3}` (optionally with an `on {…}` suffix, or the JSON form).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum NcHopfStatus nc_hopf_partition_parse(const char *text, struct NcHopfPartition **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, freed once.
 */
void nc_hopf_partition_free(struct NcHopfPartition *p);

/**
 * Canonical text form. Free the result with [`nc_hopf_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcHopfStatus nc_hopf_partition_to_string(const struct NcHopfPartition *p, char **out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcHopfStatus nc_hopf_partition_size(const struct NcHopfPartition *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcHopfStatus nc_hopf_partition_is_noncrossing(const struct NcHopfPartition *p, bool *out);

/**
 * New handle relabelled onto `1..=n`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcHopfStatus nc_hopf_partition_standardize(const struct NcHopfPartition *p,
                                                struct NcHopfPartition **out);

/**
 * Möbius function of the interval `[lower, upper]`.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum NcHopfStatus nc_hopf_moebius(enum NcHopfLattice lat,
                                  const struct NcHopfPartition *lower,
                                  const struct NcHopfPartition *upper,
                                  int64_t *out);

/**
 * Number of partitions of `1..=n` in the lattice, by enumeration.
 *
 * # Safety
 * `out` must be writable.
 */
enum NcHopfStatus nc_hopf_count(enum NcHopfLattice lat, size_t n, uint64_t *out);

/**
 * Coproduct of a bar word of non-crossing partitions, e.g. `{1,2}{3}|{1}`.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` writable.
 */
enum NcHopfStatus nc_hopf_coproduct_nc(const char *input, enum NcHopfVariant v, char **out);

/**
 * Coproduct of a bar word of words over the comma-separated `alphabet`,
 * e.g. input `a.b|a` with alphabet `a,b`.
 *
 * # Safety
 * `input` and `alphabet` must be NUL-terminated strings and `out` writable.
 */
enum NcHopfStatus nc_hopf_coproduct_word(const char *input,
                                         const char *alphabet,
                                         enum NcHopfVariant v,
                                         char **out);

/**
 * Hierarchy tree of a non-crossing partition as nested parentheses.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NcHopfStatus nc_hopf_hierarchy_tree(const struct NcHopfPartition *p, char **out);

/**
 * Moment-cumulant transform on comma-separated exact values starting at
 * index 1 (`m_1,…` or `k_1,…`). Writes the transformed values in the same
 * format.
 *
 * # Safety
 * `values` must be a NUL-terminated string and `out` writable.
 */
enum NcHopfStatus nc_hopf_transform(enum NcHopfFlavor flavor,
                                    enum NcHopfDirection direction,
                                    const char *values,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NC_HOPF_H */
