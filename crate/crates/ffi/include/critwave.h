#ifndef CRITWAVE_H
#define CRITWAVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwCoefficientForm {
  // `(1 - n^-beta)^k`
  CW_COEFFICIENT_FORM_EXACT = 0,
  // `exp(-k / n^beta)`
  CW_COEFFICIENT_FORM_EXPONENTIAL = 1,
} CwCoefficientForm;

typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_INVALID_ARGUMENT = 1,
  CW_STATUS_NON_CONVERGENT = 2,
  CW_STATUS_IO = 3,
  CW_STATUS_NULL_POINTER = 4,
  CW_STATUS_PANIC = 5,
} CwStatus;

typedef enum CwTailChoice {
  // Integral bound `N_low^{1-alpha} / (alpha - 1)`.
  CW_TAIL_CHOICE_RECOMPUTED = 0,
  // The finite sum over `N_low < n <= N_high`.
  CW_TAIL_CHOICE_DIRECT_SUM = 1,
  // The printed constant `(2/65) 1e-26`.
  CW_TAIL_CHOICE_PRINTED = 2,
} CwTailChoice;

// Möbius values `mu(1..=limit)`.
typedef struct CwMoebiusTable CwMoebiusTable;

// A sampled wave `(x_i, psi(x_i))`.
typedef struct CwTrace CwTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a success.
//
// The pointer stays valid until the next `cw_*` call on the same thread.
const char *cw_last_error_message(void);

// Sieves `mu(n)` for `1 <= n <= limit` into a new table.
//
// # Safety
// `out` must be valid for writing one pointer.
enum CwStatus cw_moebius_sieve(uint64_t limit, struct CwMoebiusTable **out);

// # Safety
// `table` must be null or a pointer returned by [`cw_moebius_sieve`] that was not freed.
void cw_moebius_free(struct CwMoebiusTable *table);

// # Safety
// `table` must be a live table handle and `out` valid for writing.
enum CwStatus cw_moebius_limit(const struct CwMoebiusTable *table, uint64_t *out);

// `mu(n)`; `n` outside `1..=limit` is an invalid argument.
//
// # Safety
// `table` must be a live table handle and `out` valid for writing.
enum CwStatus cw_moebius_mu(const struct CwMoebiusTable *table, uint64_t n, int8_t *out);

// `c_k(alpha, beta)` truncated at `n <= truncation`; the table must reach `truncation`.
//
// # Safety
// `table` must be a live table handle and `out` valid for writing.
enum CwStatus cw_ck(const struct CwMoebiusTable *table,
                    double k,
                    double alpha,
                    double beta,
                    size_t truncation,
                    enum CwCoefficientForm form,
                    double *out);

// Riemann zeta for real `s > 1`.
//
// # Safety
// `out` must be valid for writing.
enum CwStatus cw_zeta_real(double s, double *out);

// Final partial sum of the `1/zeta(s)` expansion at `s = s_re + i s_im`.
//
// # Safety
// `table` must be a live handle covering `truncation`; `out_re` and `out_im` valid for writing.
enum CwStatus cw_reciprocal_zeta(const struct CwMoebiusTable *table,
                                 double s_re,
                                 double s_im,
                                 double alpha,
                                 double beta,
                                 size_t truncation,
                                 uint64_t k_max,
                                 double *out_re,
                                 double *out_im);

// First `x >= 0` where the truncation change `N_low -> N_high` reaches
// `amplitude * tolerance`.
//
// `*found` is 0 when the bound never reaches it, and `*out` is then left untouched.
//
// # Safety
// `out` and `found` must be valid for writing.
enum CwStatus cw_stability_threshold(double alpha,
                                     double beta,
                                     double rho,
                                     uint64_t n_low,
                                     uint64_t n_high,
                                     double amplitude,
                                     double tolerance,
                                     enum CwTailChoice tail,
                                     double *out,
                                     int32_t *found);

// Samples `psi(x; alpha, beta, rho)` on `x_min, x_min + step, ..., <= x_max`.
//
// # Safety
// `table` must be a live handle covering `truncation`; `out` valid for writing one pointer.
enum CwStatus cw_psi(const struct CwMoebiusTable *table,
                     double alpha,
                     double beta,
                     double rho,
                     size_t truncation,
                     double x_min,
                     double x_max,
                     double step,
                     struct CwTrace **out);

// # Safety
// `trace` must be null or a pointer returned by [`cw_psi`] that was not freed.
void cw_trace_free(struct CwTrace *trace);

// # Safety
// `trace` must be a live handle and `out` valid for writing.
enum CwStatus cw_trace_len(const struct CwTrace *trace, size_t *out);

// Copies the samples into `xs` and `values`, each of capacity `len`.
//
// `len` must be at least the trace length; either buffer may be null to skip it.
//
// # Safety
// Non-null buffers must be valid for writing `len` doubles.
enum CwStatus cw_trace_copy(const struct CwTrace *trace, double *xs, double *values, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRITWAVE_H */
