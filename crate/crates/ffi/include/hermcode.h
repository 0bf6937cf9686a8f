#ifndef HERMCODE_H
#define HERMCODE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HcPoint {
  HC_POINT_PINF = 0,
  HC_POINT_P0 = 1,
} HcPoint;

typedef enum HcRegime {
  HC_REGIME_HIGH_CASE1 = 0,
  HC_REGIME_HIGH_CASE2 = 1,
  HC_REGIME_HIGH_CASE2_PRIME = 2,
  HC_REGIME_HIGH_CASE3 = 3,
  HC_REGIME_HIGH_CASE3_PRIME = 4,
  HC_REGIME_HIGH_CASE4 = 5,
  HC_REGIME_HIGH_MAX_FORM = 6,
  HC_REGIME_LOW_AXIS_POINTS = 10,
  HC_REGIME_LOW_LINE_THROUGH_P0 = 11,
  HC_REGIME_LOW_VERTICAL_LINE = 12,
  HC_REGIME_OUT_ZERO_CODE = 20,
  HC_REGIME_OUT_TRIVIAL_DUAL = 21,
  HC_REGIME_OUT_BEYOND_PROOF_RANGE = 22,
} HcRegime;

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_ARGUMENT = 2,
  // No closed form applies to the input.
  HC_STATUS_OUT_OF_SCOPE = 3,
  // The code is already the full space.
  HC_STATUS_FULL_SPACE = 4,
  // Exhaustive search refused the input as too large.
  HC_STATUS_INFEASIBLE = 5,
  HC_STATUS_WITNESS_FAILED = 6,
  // The output buffer is too short; the required length was written.
  HC_STATUS_BUFFER_TOO_SMALL = 7,
  HC_STATUS_PANIC = 8,
} HcStatus;

// Opaque curve handle.
typedef struct HcCurve HcCurve;

typedef struct HcCurveInfo {
  uint32_t q;
  int64_t genus;
  // Length of the codes, q³ − 1.
  size_t n;
  // All rational points, P∞ included.
  size_t points;
} HcCurveInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the curve over F_{q²}; q must be a prime power in 2..=16.
enum HcStatus hc_curve_new(uint32_t q, struct HcCurve **out);

// Releases a handle from `hc_curve_new`; null is ignored.
void hc_curve_free(struct HcCurve *curve);

enum HcStatus hc_curve_info(const struct HcCurve *curve, struct HcCurveInfo *out);

// dim L(a·P∞ + b·P0).
enum HcStatus hc_rr_dim(const struct HcCurve *curve, int64_t a, int64_t b, size_t *out);

// m_P(2g − 2 + a, b) at the shifted arguments.
enum HcStatus hc_multiplicity(const struct HcCurve *curve,
                              int64_t a,
                              int64_t b,
                              enum HcPoint point,
                              int64_t *out);

// Closed-form d(C(a, b)^⊥). The regime is always written when `regime` is
// non-null; `HC_STATUS_OUT_OF_SCOPE` means no distance was written.
enum HcStatus hc_park_distance(const struct HcCurve *curve,
                               int64_t a,
                               int64_t b,
                               int64_t *out_d,
                               enum HcRegime *regime);

// Primal d(C(m, n)) for 0 ≤ n ≤ q.
enum HcStatus hc_hk_distance(const struct HcCurve *curve, int64_t m, int64_t n, int64_t *out);

// Order bound for d(C(a, b)^⊥). Results are cached on the handle.
enum HcStatus hc_order_bound(const struct HcCurve *curve, int64_t a, int64_t b, int64_t *out);

// Support of a certified minimum-weight dual word. Writes the support size
// to `len`; the indices (into the D ordering) go to `support` when
// `capacity` suffices, otherwise `HC_STATUS_BUFFER_TOO_SMALL` is returned.
enum HcStatus hc_witness_support(const struct HcCurve *curve,
                                 int64_t a,
                                 int64_t b,
                                 size_t *support,
                                 size_t capacity,
                                 size_t *len);

// Exact d(C(a, b)^⊥) by exhaustive search, refused beyond `budget`
// elementary operations.
enum HcStatus hc_dual_distance(const struct HcCurve *curve,
                               int64_t a,
                               int64_t b,
                               double budget,
                               int64_t *out);

// Static description of a status; never null.
const char *hc_status_message(enum HcStatus status);

// Copies the calling thread's last error message, NUL-terminated and
// truncated to `capacity`, into `buf`. Returns the full length including
// the terminator, so a call with a null `buf` sizes the buffer.
size_t hc_last_error(char *buf, size_t capacity);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HERMCODE_H */
