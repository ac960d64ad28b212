#ifndef SLICEREG_SLICEREG_H
#define SLICEREG_SLICEREG_H

/* C interface to libslicereg. Quaternions are double[4] in the order (w, x, y, z).
 * Strings returned through char** are owned by the caller and released with
 * sr_string_free. Every function that can fail returns an sr_status and leaves a
 * message retrievable with sr_last_error on the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SR_API __declspec(dllexport)
#else
#define SR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sr_status {
  SR_OK = 0,
  SR_ERR_INTERNAL = 1,
  SR_ERR_INPUT = 2,      /* malformed JSON, unknown theorem id, bad parameters */
  SR_ERR_DOMAIN = 3,     /* point outside the domain, zero divisor, pole */
  SR_ERR_HYPOTHESIS = 4, /* input violates a theorem's hypotheses */
  SR_ERR_VERIFY = 5      /* a numerical verification failed; output is still produced */
} sr_status;

typedef struct sr_series sr_series;

SR_API const char* sr_version(void);
SR_API const char* sr_last_error(void);
SR_API void sr_string_free(char* s);

SR_API sr_status sr_series_from_json(const char* json, sr_series** out);
/* count quaternions laid out as 4 * count doubles. */
SR_API sr_status sr_series_from_coeffs(const double* coeffs, size_t count, double radius, sr_series** out);
SR_API void sr_series_free(sr_series* f);
SR_API sr_status sr_series_to_json(const sr_series* f, char** out);
SR_API size_t sr_series_order(const sr_series* f);
SR_API double sr_series_radius(const sr_series* f);
SR_API sr_status sr_series_coeff(const sr_series* f, size_t n, double out[4]);

SR_API sr_status sr_series_eval(const sr_series* f, const double q[4], double out[4]);
SR_API sr_status sr_series_star_mul(const sr_series* f, const sr_series* g, size_t max_order, sr_series** out);
SR_API sr_status sr_series_conjugate(const sr_series* f, sr_series** out);
SR_API sr_status sr_series_symmetrize(const sr_series* f, sr_series** out);
/* order 0 keeps the order of f. */
SR_API sr_status sr_series_reciprocal(const sr_series* f, size_t order, sr_series** out);
SR_API sr_status sr_series_cullen_derivative(const sr_series* f, sr_series** out);

SR_API sr_status sr_landau_rho(double a, double* out);

/* JSON commands. config_json may be NULL for defaults; recognized keys:
 * seed, shells, points, newton_tol, max_order, targets, bloch_targets, slice.
 * Every result embeds the normalized config and the tool version. */
SR_API sr_status sr_eval_json(const char* series_json, const char* points_json, const char* config_json,
                              char** out);
SR_API sr_status sr_landau_certify_json(const char* series_json, const char* config_json, char** out);
SR_API sr_status sr_bloch_landau_json(const char* series_json, const char* config_json, char** out);
SR_API sr_status sr_verify_manifest_json(const char* manifest_json, const char* config_json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SLICEREG_SLICEREG_H */
