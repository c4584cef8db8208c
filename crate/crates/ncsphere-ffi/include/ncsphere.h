#ifndef NCSPHERE_H
#define NCSPHERE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NcsStatus {
  NCS_STATUS_OK = 0,
  NCS_STATUS_NULL_POINTER = 1,
  NCS_STATUS_INVALID_ARGUMENT = 2,
  NCS_STATUS_DEGENERATE = 3,
  NCS_STATUS_COMPUTATION_FAILED = 4,
  NCS_STATUS_PANIC = 5,
} NcsStatus;

// Opaque finitely presented algebra.
typedef struct NcsPresentation NcsPresentation;

// Opaque verification report.
typedef struct NcsReport NcsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *ncs_last_error(void);

// Builds 𝒜_u for u_i = π p[i]/q[i], completed through `degree`.
//
// # Safety
// `p` and `q` must point to 3 readable values each; `out` must be writable.
enum NcsStatus ncs_a_u_new(const int64_t *p,
                           const int64_t *q,
                           uintptr_t degree,
                           struct NcsPresentation **out);

// # Safety
// `h` must come from `ncs_a_u_new` and not be freed twice; null is ignored.
void ncs_presentation_free(struct NcsPresentation *h);

// Number of normal words of degree `d`.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum NcsStatus ncs_presentation_graded_dimension(const struct NcsPresentation *h,
                                                 uintptr_t d,
                                                 uintptr_t *out);

// Writes 1 if every defining relation reduces to 0, else 0.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum NcsStatus ncs_presentation_relations_reduce(const struct NcsPresentation *h, int32_t *out);

// Runs a verification suite. `u` is `"p/q,p/q,p/q"`, or null for the default.
//
// # Safety
// `suite` must be a NUL-terminated string, `u` null or NUL-terminated, `out` writable.
enum NcsStatus ncs_verify(const char *suite, const char *u, uint64_t seed, struct NcsReport **out);

// 1 if every check passed.
//
// # Safety
// `r` must be a live report handle.
int32_t ncs_report_passed(const struct NcsReport *r);

// JSON text of the report, owned by the handle.
//
// # Safety
// `r` must be a live report handle.
const char *ncs_report_json(const struct NcsReport *r);

// # Safety
// `r` must come from `ncs_verify` and not be freed twice; null is ignored.
void ncs_report_free(struct NcsReport *r);

// Flows `phi` (radians) for time `t` with RK4 step `dt`; writes the endpoint
// (reduced mod π) to `phi_out` and (J₁₂, J₂₃, J₃₁) there to `j_out`.
//
// # Safety
// `phi` must point to 3 readable doubles, `phi_out` and `j_out` to 3 writable ones.
enum NcsStatus ncs_flow(const double *phi, double t, double dt, double *phi_out, double *j_out);

// Case label of `phi` (radians) as a static NUL-terminated string.
//
// # Safety
// `phi` must point to 3 readable doubles and `out` be writable.
enum NcsStatus ncs_classify(const double *phi, double tol, const char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCSPHERE_H */
