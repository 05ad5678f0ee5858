#ifndef LCPKIT_H
#define LCPKIT_H

/* Generated by cbindgen from lcpkit-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of every fallible call.
 */
typedef enum {
  LCPKIT_CODE_OK = 0,
  LCPKIT_CODE_NULL_POINTER = 1,
  LCPKIT_CODE_INVALID_ARGUMENT = 2,
  LCPKIT_CODE_DIMENSION_MISMATCH = 3,
  LCPKIT_CODE_ZERO_DIAGONAL = 4,
  LCPKIT_CODE_SINGULAR = 5,
  LCPKIT_CODE_NOT_LOWER_TRIANGULAR = 6,
  LCPKIT_CODE_PARSE_ERROR = 7,
  LCPKIT_CODE_IO_ERROR = 8,
  LCPKIT_CODE_TOO_LARGE = 9,
  LCPKIT_CODE_NO_SOLUTION = 10,
  LCPKIT_CODE_INTERNAL = 11,
} LcpkitCode;

/**
 * Method selector.
 */
typedef enum {
  LCPKIT_METHOD_NAM_MODULUS = 0,
  LCPKIT_METHOD_NAM_MODIFIED = 1,
  LCPKIT_METHOD_NAM_JACOBI = 2,
  LCPKIT_METHOD_NAMGS = 3,
  LCPKIT_METHOD_NAMSOR = 4,
  LCPKIT_METHOD_NAMAOR = 5,
  LCPKIT_METHOD_MGS = 6,
  LCPKIT_METHOD_MSOR = 7,
  LCPKIT_METHOD_MAOR = 8,
} LcpkitMethod;

/**
 * Relaxation diagonal policy. `Scalar` reads the accompanying value
 * argument; the modulus forms ignore the policy entirely.
 */
typedef enum {
  LCPKIT_OMEGA_DIAG_OF_A = 0,
  LCPKIT_OMEGA_IDENTITY = 1,
  LCPKIT_OMEGA_SCALAR = 2,
} LcpkitOmega;

/**
 * Solve outcome mirrored into the C enum.
 */
typedef enum {
  LCPKIT_STATUS_CONVERGED = 0,
  LCPKIT_STATUS_MAX_ITERS = 1,
  LCPKIT_STATUS_DIVERGED = 2,
} LcpkitStatus;

/**
 * Opaque problem handle.
 */
typedef struct LcpkitProblem LcpkitProblem;

/**
 * Opaque solve-report handle.
 */
typedef struct LcpkitReport LcpkitReport;

/**
 * Opaque splitting handle.
 */
typedef struct LcpkitSpec LcpkitSpec;

/**
 * Parameters accepted by [`lcpkit_solve`]. `s0` may be null for the
 * default alternating start `(1, 0, 1, 0, ...)`; otherwise it must point
 * at `n` doubles. `record_history` != 0 retains the residual trajectory.
 */
typedef struct {
  double epsilon;
  size_t max_iters;
  int32_t record_history;
  const double *s0;
} LcpkitSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build the first benchmark family (`n = m * m`).
 */
LcpkitCode lcpkit_problem_example1(size_t m, double delta, LcpkitProblem **out);

/**
 * Build the second benchmark family (`n = m * m`).
 */
LcpkitCode lcpkit_problem_example2(size_t m, double delta, LcpkitProblem **out);

/**
 * Load a problem from Matrix Market files (`a_path` matrix, `q_path`
 * vector).
 */
LcpkitCode lcpkit_problem_from_files(const char *a_path, const char *q_path, LcpkitProblem **out);

/**
 * # Safety
 * `problem` must come from a `lcpkit_problem_*` constructor and not have
 * been freed.
 */
void lcpkit_problem_free(LcpkitProblem *problem);

/**
 * Problem dimension, or 0 for a null handle.
 */
size_t lcpkit_problem_dim(const LcpkitProblem *problem);

/**
 * Natural residual `||min(z, A z + q)||_2` of a candidate `z` of length
 * `len`.
 */
LcpkitCode lcpkit_problem_residual(const LcpkitProblem *problem,
                                   const double *z,
                                   size_t len,
                                   double *out);

/**
 * Build a splitting for `method` on the problem's matrix.
 *
 * `alpha`/`beta` are read only for the methods that need them; pass any
 * value otherwise. `omega_scalar` is read only when `omega` is `Scalar`.
 */
LcpkitCode lcpkit_spec_create(const LcpkitProblem *problem,
                              LcpkitMethod method,
                              double alpha,
                              double beta,
                              LcpkitOmega omega,
                              double omega_scalar,
                              LcpkitSpec **out);

/**
 * # Safety
 * `spec` must come from [`lcpkit_spec_create`] and not have been freed.
 */
void lcpkit_spec_free(LcpkitSpec *spec);

/**
 * Run the iteration; on `Ok` the caller owns `*out_report`.
 */
LcpkitCode lcpkit_solve(const LcpkitProblem *problem,
                        const LcpkitSpec *spec,
                        const LcpkitSolveOptions *options,
                        LcpkitReport **out_report);

/**
 * # Safety
 * `report` must come from [`lcpkit_solve`] and not have been freed.
 */
void lcpkit_report_free(LcpkitReport *report);

LcpkitStatus lcpkit_report_status(const LcpkitReport *report);

size_t lcpkit_report_iterations(const LcpkitReport *report);

double lcpkit_report_final_residual(const LcpkitReport *report);

double lcpkit_report_wall_seconds(const LcpkitReport *report);

size_t lcpkit_report_dim(const LcpkitReport *report);

/**
 * Copy the solution `z` into `buf` (capacity `len >= dim`).
 */
LcpkitCode lcpkit_report_copy_z(const LcpkitReport *report, double *buf, size_t len);

/**
 * Copy the auxiliary vector `s` into `buf` (capacity `len >= dim`).
 */
LcpkitCode lcpkit_report_copy_s(const LcpkitReport *report, double *buf, size_t len);

/**
 * Number of recorded residuals (0 unless the solve recorded history).
 */
size_t lcpkit_report_history_len(const LcpkitReport *report);

/**
 * Copy the residual trajectory into `buf` (capacity `len`).
 */
LcpkitCode lcpkit_report_copy_history(const LcpkitReport *report, double *buf, size_t len);

/**
 * Solve report as a JSON document; free with [`lcpkit_string_free`].
 */
char *lcpkit_report_to_json(const LcpkitReport *report);

/**
 * Certification report as a JSON document; `*out_certified` is set to 1
 * when convergence is certified. Free the string with
 * [`lcpkit_string_free`].
 */
LcpkitCode lcpkit_certify_json(const LcpkitSpec *spec, int32_t *out_certified, char **out_json);

/**
 * # Safety
 * `s` must be a string returned by this library and not yet freed.
 */
void lcpkit_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *lcpkit_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LCPKIT_H */
