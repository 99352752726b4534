/* C interface to the zetapprox engine. Generated by cbindgen; do not edit. */

#ifndef ZETAPPROX_H
#define ZETAPPROX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum ZxStatus {
  ZX_STATUS_OK = 0,
  // A required pointer argument was null.
  ZX_STATUS_NULL_POINTER = 1,
  // Arguments failed structural validation.
  ZX_STATUS_INVALID_ARGUMENT = 2,
  // The computation could not produce a trustworthy result.
  ZX_STATUS_NUMERIC_FAILURE = 3,
  // A root stayed on a contour edge through the whole jitter schedule.
  ZX_STATUS_BOUNDARY_ROOT = 4,
  // The caller-provided buffer is too small; nothing was written.
  ZX_STATUS_BUFFER_TOO_SMALL = 5,
} ZxStatus;

// Opaque model handle.
typedef struct ZxModel ZxModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Description of the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *zx_last_error_message(void);

// Create the Riemann-zeta preset model with truncation `n` (n >= 1).
// Returns null on invalid input. Release with [`zx_model_free`].
struct ZxModel *zx_model_zeta_preset(size_t n);

// Create a model from raw arrays: `n` series terms with split complex
// coefficients and exponents, and `omega_len` Gamma factors. Returns null
// when shapes or invariants are rejected; consult `zx_last_error_message`.
//
// # Safety
// `coeff_re`, `coeff_im`, and `exponents` must point to `n` readable
// doubles; `alphas` and `betas` must point to `omega_len` readable doubles.
struct ZxModel *zx_model_new(const double *coeff_re,
                             const double *coeff_im,
                             const double *exponents,
                             size_t n,
                             double lambda,
                             double delta,
                             const double *alphas,
                             const double *betas,
                             size_t omega_len);

// New handle whose first coefficient is shifted to a_1 - a; the input
// handle stays valid.
//
// # Safety
// `model` must be a live handle from this library or null.
struct ZxModel *zx_model_shift_constant(const struct ZxModel *model, double a_re, double a_im);

// Number of failed model invariants (0 means fully valid).
//
// # Safety
// `model` must be a live handle from this library or null.
size_t zx_model_validate(const struct ZxModel *model);

// Release a handle created by this library. Null is ignored.
//
// # Safety
// `model` must be a pointer previously returned by a constructor of this
// library and not yet freed.
void zx_model_free(struct ZxModel *model);

// zeta_N(s) at s = s_re + i s_im.
//
// # Safety
// `model` must be a live handle; `out_re` and `out_im` must be writable.
enum ZxStatus zx_eval_zeta_n(const struct ZxModel *model,
                             double s_re,
                             double s_im,
                             double *out_re,
                             double *out_im);

// The functional-equation factor G(s).
//
// # Safety
// `model` must be a live handle; `out_re` and `out_im` must be writable.
enum ZxStatus zx_eval_g(const struct ZxModel *model,
                        double s_re,
                        double s_im,
                        double *out_re,
                        double *out_im);

// The truncated series F_N(s).
//
// # Safety
// `model` must be a live handle; `out_re` and `out_im` must be writable.
enum ZxStatus zx_eval_series(const struct ZxModel *model,
                             double s_re,
                             double s_im,
                             double *out_re,
                             double *out_im);

// d/dt arg G(sigma + it).
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum ZxStatus zx_arg_g_derivative(const struct ZxModel *model, double sigma, double t, double *out);

// Winding count of zeta_N - a around the rectangle
// sigma_left < sigma < sigma_right, t_bottom < t < t_top.
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum ZxStatus zx_winding_count(const struct ZxModel *model,
                               double a_re,
                               double a_im,
                               double sigma_left,
                               double sigma_right,
                               double t_bottom,
                               double t_top,
                               int64_t *out);

// Localize a-values in a rectangle; writes up to `cap` located roots as
// (sigma, t, multiplicity) triples into `buf` and the total root count into
// `out_len`. Fails with `BufferTooSmall` when `cap` is insufficient.
//
// # Safety
// `model` must be a live handle; `buf` must have room for `3 * cap`
// doubles; `out_len` must be writable.
enum ZxStatus zx_locate_roots(const struct ZxModel *model,
                              double a_re,
                              double a_im,
                              double sigma_left,
                              double sigma_right,
                              double t_bottom,
                              double t_top,
                              double radius,
                              double *buf,
                              size_t cap,
                              size_t *out_len);

// Sign-change zeros of Z(t) on t in (t_start, t_start + window); writes up
// to `cap` ordinates into `buf` and the total into `out_len`.
//
// # Safety
// `model` must be a live handle; `buf` must have room for `cap` doubles;
// `out_len` must be writable.
enum ZxStatus zx_line_zeros(const struct ZxModel *model,
                            double t_start,
                            double window,
                            double *buf,
                            size_t cap,
                            size_t *out_len);

// Critical-line census for a nonzero target a: candidate and hit counts for
// the projection condition at tolerance `hit_tol`.
//
// # Safety
// `model` must be a live handle; `out_candidates` and `out_hits` must be
// writable.
enum ZxStatus zx_avalue_census(const struct ZxModel *model,
                               double a_re,
                               double a_im,
                               double t_start,
                               double window,
                               double hit_tol,
                               size_t *out_candidates,
                               size_t *out_hits);

// Predicted a-value count for a window, from the model constants: the main
// terms (A/pi)((T+U) log(T+U) - T log T) + ((B - log lambda + Psi)/pi) U.
double zx_predicted_count(double a_const,
                          double b_const,
                          double lambda,
                          double lambda2,
                          double a_re,
                          double a_im,
                          double a1_re,
                          double a1_im,
                          double t_start,
                          double window);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETAPPROX_H */
