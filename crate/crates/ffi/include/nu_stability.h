#ifndef NU_STABILITY_H
#define NU_STABILITY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum NuStatus {
  NU_STATUS_OK = 0,
  NU_STATUS_NULL_ARGUMENT = 1,
  NU_STATUS_INVALID_UTF8 = 2,
  NU_STATUS_UNKNOWN_SPACE = 3,
  /*
   Out-of-range parameters, sphere rows, invalid weights and the like.
   */
  NU_STATUS_DOMAIN_ERROR = 4,
  NU_STATUS_CATALOG_LOAD = 5,
  NU_STATUS_UNKNOWN_SUITE = 6,
  /*
   The suite ran and at least one check failed; the report is still written.
   */
  NU_STATUS_VERIFICATION_FAILED = 7,
  /*
   A rational does not fit in 64-bit numerator and denominator.
   */
  NU_STATUS_OVERFLOW = 8,
  NU_STATUS_PANIC = 9,
} NuStatus;

/*
 Opaque catalog handle.
 */
typedef struct NuCatalog NuCatalog;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 Valid until the next call into the library on the same thread.
 */
const char *nu_last_error(void);

/*
 Library version, static storage.
 */
const char *nu_version(void);

/*
 A handle on the built-in families. Free with [`nu_catalog_free`].
 */
struct NuCatalog *nu_catalog_builtin(void);

/*
 Built-in families plus the records in a JSON file.

 # Safety
 `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NuStatus nu_catalog_load(const char *path, struct NuCatalog **out);

/*
 # Safety
 `catalog` must come from this library and not be used afterwards. NULL is ignored.
 */
void nu_catalog_free(struct NuCatalog *catalog);

/*
 # Safety
 `s` must come from this library. NULL is ignored.
 */
void nu_string_free(char *s);

/*
 Verdict for a named space as JSON, the same document `classify` prints.

 # Safety
 `catalog` is a live handle, `name` NUL-terminated, `json_out` valid.
 */
enum NuStatus nu_classify(const struct NuCatalog *catalog, const char *name, char **json_out);

/*
 `-μ_fns/λ` for a named space as a reduced fraction.

 # Safety
 `catalog` is a live handle, `name` NUL-terminated, `num` and `den` valid.
 */
enum NuStatus nu_mu_fns(const struct NuCatalog *catalog,
                        const char *name,
                        int64_t *num,
                        int64_t *den);

/*
 Normalized Casimir eigenvalue `c(Λ)` of the weight with `len` fundamental
 coefficients. `lie_type` is `A`..`D`, `E6`..`E8`, `F4` or `G2`.

 # Safety
 `lie_type` NUL-terminated; `coeffs` points to `len` values; `num`, `den` valid.
 */
enum NuStatus nu_casimir(const char *lie_type,
                         const uint32_t *coeffs,
                         size_t len,
                         int64_t *num,
                         int64_t *den);

/*
 Runs a suite (`lemma33`, ..., or `all`) and writes its JSON report. A NaN
 `tol` keeps each suite's default; `points` 0 means the default.

 # Safety
 `suite` NUL-terminated, `json_out` valid.
 */
enum NuStatus nu_verify(const char *suite,
                        uint64_t seed,
                        size_t points,
                        double tol,
                        char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NU_STABILITY_H */
