/*
 * C interface to libunruhqi: two-qubit correlations of Werner states under
 * the fermionic Unruh channel.
 *
 * Conventions
 *   - Every function returns a uqi_status; results come back through out
 *     parameters. On failure the out parameters are left untouched and
 *     uqi_last_error() describes the problem (thread-local, valid until the
 *     next failing call on the same thread).
 *   - States are opaque handles owned by the caller and released with
 *     uqi_state_free(). Handles are immutable and may be shared across threads.
 *   - 4x4 matrices cross the boundary as 32 doubles: row-major, interleaved
 *     (re, im) pairs, basis |q1 q2> in {00, 01, 10, 11}.
 *   - 3x3 real matrices are 9 doubles, row-major.
 *   - Qubit selectors: UQI_FIRST (inertial) and UQI_SECOND (accelerated).
 */
#ifndef UNRUHQI_H
#define UNRUHQI_H

#include <stddef.h>

#if defined(_WIN32)
#define UQI_API __declspec(dllexport)
#else
#define UQI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uqi_status {
  UQI_OK = 0,
  UQI_ERR_NULL_ARGUMENT = 1,
  UQI_ERR_INVALID_ARGUMENT = 2, /* out of range, malformed matrix, bad selector */
  UQI_ERR_DOMAIN = 3,           /* formula not applicable (pure marginal, non-X state, singular T) */
  UQI_ERR_IO = 4,
  UQI_ERR_BUFFER_TOO_SMALL = 5,
  UQI_ERR_INTERNAL = 6
} uqi_status;

typedef enum uqi_qubit { UQI_FIRST = 0, UQI_SECOND = 1 } uqi_qubit;

typedef struct uqi_state uqi_state;
typedef struct uqi_analysis uqi_analysis;

UQI_API const char* uqi_version(void);
UQI_API const char* uqi_last_error(void);
UQI_API const char* uqi_status_name(uqi_status status);

/* States */
UQI_API uqi_status uqi_state_from_matrix(const double entries[32], uqi_state** out);
UQI_API uqi_status uqi_state_werner(double p, uqi_state** out);
UQI_API uqi_status uqi_state_alice_rob(double p, double r, uqi_state** out);
UQI_API uqi_status uqi_state_apply_unruh(const uqi_state* state, int target, double r, uqi_state** out);
UQI_API uqi_status uqi_state_canonical(const uqi_state* state, uqi_state** out);
UQI_API uqi_status uqi_state_matrix(const uqi_state* state, double entries[32]);
UQI_API uqi_status uqi_state_pauli(const uqi_state* state, double a[3], double b[3], double T[9]);
UQI_API uqi_status uqi_state_is_x(const uqi_state* state, double tol, int* is_x);
UQI_API void uqi_state_free(uqi_state* state);

/* Unruh channel */
UQI_API uqi_status uqi_r_from_acceleration(double omega, double accel, double c, double* r);
/* k0, k1: 8 doubles each (2x2 interleaved complex). */
UQI_API uqi_status uqi_unruh_kraus(double r, double k0[8], double k1[8]);

/* Entanglement and nonlocality */
UQI_API uqi_status uqi_concurrence(const uqi_state* state, double* value);
UQI_API uqi_status uqi_concurrence_x(const uqi_state* state, double* value);
UQI_API uqi_status uqi_concurrence_eq17(double p, double r, double* value);
UQI_API uqi_status uqi_ppt(const uqi_state* state, double* min_eigenvalue, int* entangled);
UQI_API uqi_status uqi_chsh_m(const uqi_state* state, double* m, double* b_max);
UQI_API uqi_status uqi_separability_threshold(double r, double* p);
UQI_API uqi_status uqi_bell_threshold(double r, double* p);

/* Steering */
UQI_API uqi_status uqi_steering_ellipsoid(const uqi_state* state, int steered, double center[3],
                                          double semiaxes[3], double axes[9]);
UQI_API uqi_status uqi_msc_closed_form(const uqi_state* state, int steered, double* value);
UQI_API uqi_status uqi_msc_oracle(const uqi_state* state, int steered, int grid_density, int refine_iters,
                                  double* value);
/* value is +inf for p = 0. */
UQI_API uqi_status uqi_critical_radius_analytic(double p, double r, double* value, int* unsteerable);
UQI_API uqi_status uqi_critical_radius_quadrature(const double T[9], int nodes, double* value, int* unsteerable);
UQI_API uqi_status uqi_steerability_threshold(double r, double* p);

/* Reports and files */
typedef struct uqi_options {
  int with_oracles;
  int oracle_grid;      /* default 64 */
  int oracle_refine;    /* default 40 */
  int quadrature_nodes; /* default 64 */
  int threads;          /* 0: hardware concurrency */
} uqi_options;

UQI_API void uqi_options_default(uqi_options* options);

UQI_API uqi_status uqi_analyze(double p, double r, const uqi_options* options, uqi_analysis** out);
/* Copies the JSON text (NUL-terminated) into buffer; *needed receives the
 * required size including the terminator. buffer may be NULL to query. */
UQI_API uqi_status uqi_analysis_json(const uqi_analysis* analysis, char* buffer, size_t size, size_t* needed);
UQI_API void uqi_analysis_free(uqi_analysis* analysis);

typedef struct uqi_sweep_spec {
  double p_min, p_max;
  int p_steps;
  double r_min, r_max;
  int r_steps;
  /* Comma-separated subset of concurrence,concurrence_eq17,chsh_M,msc,r_c,thresholds;
   * NULL or "" selects all. */
  const char* quantities;
} uqi_sweep_spec;

UQI_API void uqi_sweep_spec_default(uqi_sweep_spec* spec);
/* path "-" writes to stdout. */
UQI_API uqi_status uqi_sweep_csv(const uqi_sweep_spec* spec, const uqi_options* options, const char* path);
UQI_API uqi_status uqi_ellipsoid_csv(double p, double r, int steered, int samples, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* UNRUHQI_H */
