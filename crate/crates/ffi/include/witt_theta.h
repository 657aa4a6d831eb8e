#ifndef WITT_THETA_H
#define WITT_THETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  WT_STATUS_OK = 0,
  WT_STATUS_NULL_POINTER = 1,
  WT_STATUS_INVALID_UTF8 = 2,
  WT_STATUS_INVALID_FIELD = 3,
  WT_STATUS_UNSUPPORTED_FIELD = 4,
  WT_STATUS_FIELD_MISMATCH = 5,
  WT_STATUS_INVALID_COEFFICIENT_SYSTEM = 6,
  WT_STATUS_INVALID_FORM = 7,
  WT_STATUS_TYPE_MISMATCH = 8,
  WT_STATUS_INVALID_CLASS = 9,
  WT_STATUS_INVALID_GROUP = 10,
  WT_STATUS_NUMERICS = 11,
  WT_STATUS_INCONSISTENT = 12,
  WT_STATUS_NOT_APPLICABLE = 13,
  WT_STATUS_PARSE = 14,
  WT_STATUS_PANIC = 15,
} WtStatus;

/**
 * The isometry class of a form.
 */
typedef struct WtClass WtClass;

/**
 * A local field.
 */
typedef struct WtField WtField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *wt_last_error(void);

/**
 * Library version as a static string.
 */
const char *wt_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void wt_string_free(char *s);

/**
 * Parses `p3`, `Q_3`, `real`, `complex` or a JSON object.
 *
 * # Safety
 * `name` must be a valid C string and `out` a valid pointer.
 */
WtStatus wt_field_parse(const char *name, WtField **out);

/**
 * # Safety
 * `f` must be null or a handle from `wt_field_parse` not yet freed.
 */
void wt_field_free(WtField *f);

/**
 * Hilbert symbol `(a, b)` over the field, written as +1 or -1.
 *
 * # Safety
 * `field` and `out` must be valid pointers.
 */
WtStatus wt_hilbert(const WtField *field, int64_t a, int64_t b, int *out);

/**
 * Maximal anisotropic degree of a non-archimedean space of the given kind.
 *
 * # Safety
 * `kind` must be a valid C string and `out` a valid pointer.
 */
WtStatus wt_d_max(const char *kind, int64_t *out);

/**
 * Class of the diagonal form `diag[0..len]` of the given kind (`d` as for `FormType`).
 *
 * # Safety
 * `diag` must point to `len` integers (or be null with `len == 0`); other pointers valid.
 */
WtStatus wt_class_from_diag(const WtField *field,
                            const char *kind,
                            int64_t d,
                            const int64_t *diag,
                            size_t len,
                            WtClass **out);

/**
 * Class of a form given only by its dimension (symplectic and dimension-only types).
 *
 * # Safety
 * Pointers must be valid.
 */
WtStatus wt_class_from_dim(const WtField *field,
                           const char *kind,
                           int64_t d,
                           int64_t dim,
                           WtClass **out);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void wt_class_free(WtClass *c);

/**
 * # Safety
 * Pointers must be valid.
 */
WtStatus wt_class_dim(const WtClass *c, int64_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
WtStatus wt_class_split_rank(const WtClass *c, int64_t *out);

/**
 * Writes 1 if anisotropic, 0 otherwise.
 *
 * # Safety
 * Pointers must be valid.
 */
WtStatus wt_class_is_anisotropic(const WtClass *c, int *out);

/**
 * JSON rendering of the class; free with `wt_string_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
WtStatus wt_class_to_json(const WtClass *c, char **out);

/**
 * `2 dim U + d`: first occurrence of the trivial representation in the anti-split tower.
 *
 * # Safety
 * Pointers must be valid.
 */
WtStatus wt_trivial_bound(const WtField *field,
                          const char *u_kind,
                          int64_t d,
                          int64_t dim_u,
                          int64_t *out);

/**
 * First occurrence on the partner tower, given `known` on the least-degree tower compatible
 * with it. `out_partner_deg` may be null.
 *
 * # Safety
 * Pointers other than `out_partner_deg` must be valid.
 */
WtStatus wt_conserve_predict(const WtField *field,
                             const char *u_kind,
                             int64_t d,
                             int64_t dim_u,
                             int64_t known,
                             int64_t *out_n,
                             int64_t *out_partner_deg);

/**
 * Runs a command line (`argv[0]` is the first verb, not a program name). The JSON output
 * goes to `out_json` and the process-style exit code to `out_code`.
 *
 * # Safety
 * `argv` must point to `argc` valid C strings; output pointers must be valid.
 */
WtStatus wt_cli_run(const char *const *argv, size_t argc, char **out_json, int *out_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WITT_THETA_H */
