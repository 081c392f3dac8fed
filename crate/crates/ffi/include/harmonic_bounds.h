#ifndef HARMONIC_BOUNDS_H
#define HARMONIC_BOUNDS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HbCenterKind {
  HB_CENTER_KIND_TRIVIAL = 0,
  HB_CENTER_KIND_MINIMAL = 1,
} HbCenterKind;

typedef enum HbProvenance {
  HB_PROVENANCE_EQ11 = 0,
  HB_PROVENANCE_EQ12 = 1,
  HB_PROVENANCE_MAX_OF_BOTH = 2,
  HB_PROVENANCE_EXPLICIT = 3,
} HbProvenance;

typedef enum HbStatus {
  HB_STATUS_OK = 0,
  HB_STATUS_NULL_POINTER = 1,
  HB_STATUS_INVALID_UTF8 = 2,
  HB_STATUS_PARSE = 3,
  HB_STATUS_INVARIANT = 4,
  HB_STATUS_SIZE = 5,
  HB_STATUS_DOMAIN = 6,
  HB_STATUS_KIND_MISMATCH = 7,
  HB_STATUS_ANTI_ALIASING = 8,
  HB_STATUS_BASIS_MISMATCH = 9,
  HB_STATUS_CENTER_NOT_ZEROED = 10,
  HB_STATUS_REQUEST = 11,
  HB_STATUS_OUT_OF_RANGE = 12,
  HB_STATUS_BUFFER_TOO_SMALL = 13,
  HB_STATUS_PANIC = 14,
} HbStatus;

/**
 * Opaque proximity band.
 */
typedef struct HbBand HbBand;

/**
 * Opaque bound report.
 */
typedef struct HbBoundReport HbBoundReport;

/**
 * Opaque function spec.
 */
typedef struct HbFunction HbFunction;

/**
 * Opaque coefficient table.
 */
typedef struct HbSpectrum HbSpectrum;

/**
 * Opaque variation report.
 */
typedef struct HbVariation HbVariation;

typedef struct HbExtremum {
  double x;
  double y;
  bool is_max;
} HbExtremum;

typedef struct HbBoundRow {
  size_t j;
  double actual_abs_a;
  /**
   * NaN in the Chebyshev basis.
   */
  double actual_abs_b;
  double bound_variation;
  double bound_extrema;
  double bound_range;
  /**
   * NaN when the variation is zero.
   */
  double ratio_tightness;
  bool satisfied;
} HbBoundRow;

/**
 * Band design request. `n_extrema == 0` means no assumed extrema count.
 */
typedef struct HbDesignRequest {
  size_t j;
  double q;
  double a_j0;
  size_t n_extrema;
  enum HbCenterKind center;
} HbDesignRequest;

typedef struct HbBandWidths {
  /**
   * NaN without an assumed extrema count.
   */
  double delta_eq11;
  double delta_eq12;
  double delta_recommended;
  enum HbProvenance provenance;
  bool already_attained;
} HbBandWidths;

typedef struct HbVerification {
  bool containment;
  double max_deviation;
  double delta_variation;
  size_t delta_extrema;
  double variation_budget;
  bool budget_ok;
  bool chain_ok;
  double achieved_amplitude;
  double target_amplitude;
  bool certified;
} HbVerification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *hb_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must come from this library or be null.
 */
void hb_string_free(char *s);

/**
 * Parse a JSON function spec.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HbStatus hb_function_from_json(const char *json, struct HbFunction **out);

/**
 * Serialize a function spec to JSON; free the result with [`hb_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_function_to_json(const struct HbFunction *f, char **out);

/**
 * # Safety
 * `f` must come from this library or be null.
 */
void hb_function_free(struct HbFunction *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_function_is_periodic(const struct HbFunction *f, bool *out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_function_evaluate(const struct HbFunction *f, double x, double *out);

/**
 * Write `n` samples at `x_i = 2πi/n` into `out`, which holds `len` doubles.
 *
 * # Safety
 * `f` must be a live handle; `out` must point to `len` writable doubles.
 */
enum HbStatus hb_sample_uniform(const struct HbFunction *f, size_t n, double *out, size_t len);

/**
 * Coefficients up to `order` in the basis of the function's domain;
 * `grid == 0` picks the default grid.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_spectrum_new(const struct HbFunction *f,
                              size_t order,
                              size_t grid,
                              struct HbSpectrum **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void hb_spectrum_free(struct HbSpectrum *s);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_spectrum_order(const struct HbSpectrum *s, size_t *out);

/**
 * `a_j`; `j == 0` gives `a_0`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_spectrum_cos(const struct HbSpectrum *s, size_t j, double *out);

/**
 * `b_j`; zero for `j == 0` and in the Chebyshev basis.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_spectrum_sin(const struct HbSpectrum *s, size_t j, double *out);

/**
 * Discrete variation on an `n`-point grid, cyclic for periodic functions and
 * over `[-1, 1]` otherwise.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_variation_new(const struct HbFunction *f,
                               size_t n,
                               double eta,
                               struct HbVariation **out);

/**
 * # Safety
 * `v` must come from this library or be null.
 */
void hb_variation_free(struct HbVariation *v);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_variation_total(const struct HbVariation *v, double *out);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_variation_range(const struct HbVariation *v, double *out);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_variation_extrema_count(const struct HbVariation *v, size_t *out);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_variation_extremum(const struct HbVariation *v, size_t k, struct HbExtremum *out);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_variation_delta_count(const struct HbVariation *v, size_t *out);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_variation_delta(const struct HbVariation *v, size_t k, double *out);

/**
 * Bound report for `j = 1..=order`; `grid == 0` picks the default grid.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_bound_report_new(const struct HbFunction *f,
                                  size_t order,
                                  size_t grid,
                                  double abs_tol,
                                  double rel_tol,
                                  struct HbBoundReport **out);

/**
 * # Safety
 * `r` must come from this library or be null.
 */
void hb_bound_report_free(struct HbBoundReport *r);

/**
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_bound_report_row_count(const struct HbBoundReport *r, size_t *out);

/**
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_bound_report_all_satisfied(const struct HbBoundReport *r, bool *out);

/**
 * Row `k` of the report, for `j = k + 1`.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_bound_report_row(const struct HbBoundReport *r, size_t k, struct HbBoundRow *out);

/**
 * `variation / (j·norm_squared)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum HbStatus hb_generic_bound(double variation, double norm_squared, size_t j, double *out);

/**
 * # Safety
 * `request` must be valid; `out` must be writable.
 */
enum HbStatus hb_variation_budget(const struct HbDesignRequest *request, double *out);

/**
 * # Safety
 * `request` must be valid; `out` must be writable.
 */
enum HbStatus hb_design_width(const struct HbDesignRequest *request, struct HbBandWidths *out);

/**
 * A copy of `f` whose `j`-th harmonic is removed.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_make_center(const struct HbFunction *f,
                             size_t j,
                             enum HbCenterKind kind,
                             size_t grid,
                             struct HbFunction **out);

/**
 * A band of width `delta` around a copy of `center`.
 *
 * # Safety
 * `center` and `request` must be valid; `out` must be writable.
 */
enum HbStatus hb_band_new(const struct HbFunction *center,
                          double delta,
                          const struct HbDesignRequest *request,
                          struct HbBand **out);

/**
 * Parse a band file as written by `band-design`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HbStatus hb_band_from_json(const char *json, struct HbBand **out);

/**
 * # Safety
 * `b` must come from this library or be null.
 */
void hb_band_free(struct HbBand *b);

/**
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum HbStatus hb_band_delta(const struct HbBand *b, double *out);

/**
 * Clamp `f` into the band on a `grid`-point grid, giving a sampled function.
 *
 * # Safety
 * `f` and `b` must be live handles; `out` must be writable.
 */
enum HbStatus hb_clamp_candidate(const struct HbFunction *f,
                                 const struct HbBand *b,
                                 size_t grid,
                                 struct HbFunction **out);

/**
 * Verify `candidate` against the band with its stored request.
 *
 * # Safety
 * `candidate` and `b` must be live handles; `out` must be writable.
 */
enum HbStatus hb_band_verify(const struct HbFunction *candidate,
                             const struct HbBand *b,
                             size_t grid,
                             double tol,
                             struct HbVerification *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARMONIC_BOUNDS_H */
