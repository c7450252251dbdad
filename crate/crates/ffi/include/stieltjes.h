#ifndef STIELTJES_H
#define STIELTJES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StjConstant {
  STJ_CONSTANT_GAMMA = 0,
  STJ_CONSTANT_GAMMA1 = 1,
  STJ_CONSTANT_ETA1 = 2,
  STJ_CONSTANT_LN_PI = 3,
  // `B_{2n}`; pass `n` alongside.
  STJ_CONSTANT_BERNOULLI_EVEN = 4,
} StjConstant;

typedef enum StjMethod {
  STJ_METHOD_ORACLE = 0,
  STJ_METHOD_INTEGRAL = 1,
  STJ_METHOD_DILCHER = 2,
  STJ_METHOD_HASSE = 3,
} StjMethod;

typedef enum StjProfile {
  STJ_PROFILE_FAST = 0,
  STJ_PROFILE_DEEP = 1,
} StjProfile;

typedef enum StjStatus {
  STJ_STATUS_OK = 0,
  STJ_STATUS_DOMAIN = 1,
  STJ_STATUS_POLE = 2,
  STJ_STATUS_CONVERGENCE = 3,
  STJ_STATUS_UNSUPPORTED = 4,
  STJ_STATUS_NULL_POINTER = 5,
  STJ_STATUS_INVALID_ARGUMENT = 6,
  STJ_STATUS_PANIC = 7,
} StjStatus;

typedef enum StjZetaRoute {
  STJ_ZETA_ROUTE_EULER_MACLAURIN = 0,
  STJ_ZETA_ROUTE_HASSE1 = 1,
  STJ_ZETA_ROUTE_HASSE2 = 2,
} StjZetaRoute;

// Opaque set of verification results.
typedef struct StjReport StjReport;

// A value with its absolute error estimate.
typedef struct StjValue {
  double value;
  double err;
} StjValue;

// One check of a report. `identity_id` is NUL-terminated.
typedef struct StjCheck {
  char identity_id[8];
  double lhs;
  double rhs;
  double abs_residual;
  double rel_residual;
  double tolerance;
  bool pass;
  uint64_t terms_or_panels;
  uint64_t elapsed_ms;
} StjCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *stj_last_error(void);

// Library version as a static NUL-terminated string.
const char *stj_version(void);

// `gamma_k(a)` by `method`; the Hasse route needs `a = 1`.
//
// # Safety
// `out` must be null or valid for a write of [`StjValue`].
enum StjStatus stj_gamma(uint32_t k,
                         double a,
                         enum StjMethod method,
                         double tol,
                         struct StjValue *out);

// `zeta(s)` by `route`.
//
// # Safety
// `out` must be null or valid for a write of [`StjValue`].
enum StjStatus stj_zeta(double s, enum StjZetaRoute route, double tol, struct StjValue *out);

// A constant from `terms` outer Hasse terms; `n` selects `B_{2n}` and is
// ignored otherwise.
//
// # Safety
// `out` must be null or valid for a write of [`StjValue`].
enum StjStatus stj_hasse_constant(enum StjConstant name,
                                  uint32_t n,
                                  uint32_t terms,
                                  struct StjValue *out);

// Run the default checks of the comma-separated `ids` (or `"all"`).
//
// # Safety
// `ids` must be a valid NUL-terminated string; `out` must be valid for a
// write of a pointer. On success `*out` owns a report to be released with
// [`stj_report_free`].
enum StjStatus stj_verify(const char *ids, enum StjProfile profile, struct StjReport **out);

// Number of checks in `report`; 0 for null.
//
// # Safety
// `report` must be null or a live handle from [`stj_verify`].
size_t stj_report_len(const struct StjReport *report);

// Number of passing checks in `report`; 0 for null.
//
// # Safety
// `report` must be null or a live handle from [`stj_verify`].
size_t stj_report_passed(const struct StjReport *report);

// Copy check `index` of `report` into `out`.
//
// # Safety
// `report` must be null or a live handle; `out` must be null or valid for
// a write of [`StjCheck`].
enum StjStatus stj_report_get(const struct StjReport *report, size_t index, struct StjCheck *out);

// Release a report; null is ignored.
//
// # Safety
// `report` must be null or a handle from [`stj_verify`] not yet freed.
void stj_report_free(struct StjReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STIELTJES_H */
