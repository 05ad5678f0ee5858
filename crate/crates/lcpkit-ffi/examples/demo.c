/* Minimal consumer of the lcpkit C API: build a benchmark problem, run the
 * accelerated Gauss-Seidel sweep, print the iteration count and residual.
 *
 * Build (after `cargo build -p lcpkit-ffi --release`):
 *   cc demo.c -I include -L ../../target/release -llcpkit_ffi -lm -o demo
 */
#include <stdio.h>

#include "lcpkit.h"

int main(void) {
  LcpkitProblem *problem = NULL;
  LcpkitSpec *spec = NULL;
  LcpkitReport *report = NULL;
  int rc = 1;

  if (lcpkit_problem_example1(10, 4.0, &problem) != LCPKIT_CODE_OK) goto done;
  if (lcpkit_spec_create(problem, LCPKIT_METHOD_NAMGS, 0.0, 0.0,
                         LCPKIT_OMEGA_SCALAR, 4.0, &spec) != LCPKIT_CODE_OK)
    goto done;
  if (lcpkit_solve(problem, spec, NULL, &report) != LCPKIT_CODE_OK) goto done;

  printf("status=%d iterations=%zu residual=%.3e\n",
         (int)lcpkit_report_status(report), lcpkit_report_iterations(report),
         lcpkit_report_final_residual(report));
  rc = lcpkit_report_status(report) == LCPKIT_STATUS_CONVERGED ? 0 : 2;

done:
  lcpkit_report_free(report);
  lcpkit_spec_free(spec);
  lcpkit_problem_free(problem);
  return rc;
}
