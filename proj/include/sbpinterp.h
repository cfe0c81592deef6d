/* sbpinterp: C API for the SBP operator / interface-interpolation library.
 *
 * All functions return a status code; results pass through opaque handles or
 * malloc'ed strings. Strings returned via char** are owned by the caller and
 * must be released with sbpi_string_free. On failure, sbpi_last_error()
 * returns a thread-local description of the most recent error.
 */
#ifndef SBPINTERP_H
#define SBPINTERP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sbpi_status {
  SBPI_OK = 0,
  SBPI_ERR_INVALID_ARG = 1,
  SBPI_ERR_UNSUPPORTED = 2,
  SBPI_ERR_GRID_TOO_SMALL = 3,
  SBPI_ERR_DIMENSION = 4,
  SBPI_ERR_NUMERIC = 5,
  SBPI_ERR_VERIFICATION_FAILED = 6,
  SBPI_ERR_INTERNAL = 7
} sbpi_status;

typedef struct sbpi_operator sbpi_operator;
typedef struct sbpi_interp sbpi_interp;

const char* sbpi_last_error(void);
void sbpi_string_free(char* s);

/* ---- 1-D SBP operators ---- */
sbpi_status sbpi_operator_create(int order, long npts, double h, sbpi_operator** out);
void sbpi_operator_destroy(sbpi_operator* op);
/* y = D1 x, both of length npts */
sbpi_status sbpi_operator_apply_d1(const sbpi_operator* op, const double* x, size_t n, double* y);
/* verification report as JSON */
sbpi_status sbpi_operator_verify(const sbpi_operator* op, char** json_out);
/* operator dump: {order, N, h, norm_weights, Q} with exact rational strings */
sbpi_status sbpi_operator_dump(const sbpi_operator* op, char** json_out);

/* ---- interpolation pairs ---- */
/* kind: p2|p4|p6|p8|p4_to_2|p8_to_4|nonsbp_p4|nonsbp_p6 */
sbpi_status sbpi_interp_create(const char* kind, long mc, double hc, sbpi_interp** out);
/* conforming identity pair for a given SBP order */
sbpi_status sbpi_interp_create_identity(int order, long m, double h, sbpi_interp** out);
void sbpi_interp_destroy(sbpi_interp* p);
/* combined report: sbp_preserving, accuracy, inter2 blocks; *pass_out=0/1 */
sbpi_status sbpi_interp_verify(const sbpi_interp* p, char** json_out, int* pass_out);
sbpi_status sbpi_interp_dump(const sbpi_interp* p, char** json_out);

/* ---- construction procedure ---- */
/* builds the pair for accuracy order p with the given shape; orders select the
 * coarse/fine norms (0 = trivial all-ones norm); ratio 1 or 2. */
sbpi_status sbpi_build_interp(int p, int order_coarse, int order_fine, int q, int r, int s, long mc,
                              double hc, int ratio, char** json_out);

/* ---- two-block model problem: spectra and energy oracle ---- */
/* config: JSON (strict schema, see README). Outputs the summary JSON and,
 * when csv_out is non-NULL, the eigenvalue CSV (re_scaled,im_scaled). */
sbpi_status sbpi_spectrum_run(const char* config_json, char** summary_out, char** csv_out);

/* ---- Euler vortex convergence study ---- */
/* config: JSON {order_left, order_right, kind, coupling, Ms:[..], tend, cfl,
 * cfl_per_M:[..], jobs, vortex:{...}}. Returns the ConvergenceReport JSON. */
sbpi_status sbpi_vortex_run(const char* config_json, char** report_out);
/* single vortex run with a field dump (x,y,rho,u,v,p CSV) at t_end */
sbpi_status sbpi_vortex_fields(const char* config_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* SBPINTERP_H */
