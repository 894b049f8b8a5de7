/* Copyright 2026 The Qollide Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* qollide.h
 * ---------
 * C interface to libqollide: a target qubit repeatedly colliding with N-qubit
 * bath clusters.
 *
 * Conventions:
 *  - Every fallible call returns a qollide_status; on failure the handle out
 *    parameter is left untouched and qollide_last_error() /
 *    qollide_last_error_field() describe the problem (thread-local).
 *  - Handles are opaque and owned by the caller; release them with the
 *    matching *_free function (NULL is accepted).
 *  - Strings returned through char** are heap-allocated; release them with
 *    qollide_string_free.
 *  - Bath matrices use the excitation-sorted product basis; the target
 *    qubit uses (|e>, |g>) order. Temperatures are in units of
 *    hbar*omega0/k_B.
 */

#ifndef QOLLIDE_H
#define QOLLIDE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QOLLIDE_BUILDING)
#    define QOLLIDE_API __declspec(dllexport)
#  else
#    define QOLLIDE_API __declspec(dllimport)
#  endif
#else
#  define QOLLIDE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qollide_status {
  QOLLIDE_OK = 0,
  QOLLIDE_ERR_INVALID_ARGUMENT = 1,
  QOLLIDE_ERR_DIMENSION = 2,
  QOLLIDE_ERR_RANGE = 3,
  QOLLIDE_ERR_NUMERIC = 4,
  QOLLIDE_ERR_IO = 5,
  QOLLIDE_ERR_INTERNAL = 6
} qollide_status;

QOLLIDE_API const char* qollide_version(void);
QOLLIDE_API const char* qollide_last_error(void);
/* Name of the field or invariant that failed, e.g. "p_e", "trace". */
QOLLIDE_API const char* qollide_last_error_field(void);
QOLLIDE_API void qollide_string_free(char* s);

/* ---- baths ------------------------------------------------------------ */

typedef struct qollide_bath qollide_bath;

/* Closed-form families accept N up to 64; the density matrix is only
 * materialized for N <= 12. */
QOLLIDE_API qollide_status qollide_bath_product(int n, double p_e, qollide_bath** out);
QOLLIDE_API qollide_status qollide_bath_thermal_hec(int n, double n_bar, qollide_bath** out);
QOLLIDE_API qollide_status qollide_bath_dicke(int n, int k, qollide_bath** out);
/* re_im holds 2^N x 2^N entries row-major, each as an interleaved (re, im) pair. */
QOLLIDE_API qollide_status qollide_bath_explicit(int n, const double* re_im, qollide_bath** out);
QOLLIDE_API qollide_status qollide_bath_load_csv(const char* path, qollide_bath** out);
QOLLIDE_API void qollide_bath_free(qollide_bath* bath);

QOLLIDE_API int qollide_bath_qubits(const qollide_bath* bath);
/* "product", "thermal-hec", "dicke" or "explicit"; owned by the handle. */
QOLLIDE_API const char* qollide_bath_kind(const qollide_bath* bath);
QOLLIDE_API int qollide_bath_has_matrix(const qollide_bath* bath);
QOLLIDE_API qollide_status qollide_bath_matrix_csv(const qollide_bath* bath, char** out);

/* ---- master-equation coefficients --------------------------------------- */

typedef struct qollide_collision_params {
  double g;      /* coupling rate, >= 0 */
  double tau;    /* interaction duration, > 0 */
  double p;      /* collision rate, > 0 */
  double omega0; /* qubit frequency, > 0 */
} qollide_collision_params;

/* g = 0.1, tau = 1, p = 100 (so mu = p (g tau)^2 = 1), omega0 = 1. */
QOLLIDE_API void qollide_collision_params_default(qollide_collision_params* params);
QOLLIDE_API qollide_status qollide_collision_params_validate(const qollide_collision_params* params);
/* Nonzero when g*tau > 0.3. */
QOLLIDE_API int qollide_collision_params_outside_second_order(const qollide_collision_params* params);

typedef struct qollide_coefficients {
  double lambda_re, lambda_im;   /* <J->   */
  double epsilon_re, epsilon_im; /* <J-^2> */
  double r_e;                    /* <J+J-> */
  double r_d;                    /* <J-J+> */
  double mu;                     /* p (g tau)^2 */
  double pg_tau;                 /* p g tau */
} qollide_coefficients;

/* Collective-spin moments of the materialized bath state. */
QOLLIDE_API qollide_status qollide_coefficients_from_state(const qollide_bath* bath,
                                                           const qollide_collision_params* params,
                                                           qollide_coefficients* out);
/* Closed forms for product, thermal-hec and dicke baths. */
QOLLIDE_API qollide_status qollide_coefficients_closed_form(const qollide_bath* bath,
                                                            const qollide_collision_params* params,
                                                            qollide_coefficients* out);
QOLLIDE_API qollide_status qollide_coefficients_json(const qollide_coefficients* c, char** out);
/* +inf when r_e + r_d = 0. */
QOLLIDE_API double qollide_thermalization_time(const qollide_coefficients* c);
/* 0 for r_e = 0, +inf for r_e = r_d, negative under inversion. */
QOLLIDE_API double qollide_steady_temperature(const qollide_coefficients* c);

/* ---- target-qubit evolution --------------------------------------------- */

typedef enum qollide_engine {
  QOLLIDE_ENGINE_ANALYTIC = 0,
  QOLLIDE_ENGINE_ODE = 1,
  QOLLIDE_ENGINE_COLLISIONS = 2
} qollide_engine;

typedef enum qollide_collision_mode {
  QOLLIDE_MODE_EXACT = 0,
  QOLLIDE_MODE_SECOND_ORDER = 1
} qollide_collision_mode;

typedef struct qollide_evolve_options {
  qollide_engine engine;
  double t_end;
  double dt;         /* max step for ODE and collision engines */
  size_t n_points;   /* uniform output grid on [0, t_end]; 0 = empty */
  double rho_ee0;    /* initial excited population */
  double rho_eg0_re; /* initial coherence */
  double rho_eg0_im;
  qollide_collision_mode mode;
  int stochastic;
  uint64_t seed;
  size_t trajectories;
} qollide_evolve_options;

QOLLIDE_API void qollide_evolve_options_default(qollide_evolve_options* options);

typedef struct qollide_trajectory qollide_trajectory;

typedef struct qollide_trajectory_point {
  double t, mu_t;
  double rho_ee, rho_gg;
  double rho_eg_re, rho_eg_im;
  double temperature;
  double entropy;
} qollide_trajectory_point;

QOLLIDE_API qollide_status qollide_evolve(const qollide_bath* bath, const qollide_collision_params* params,
                                          const qollide_evolve_options* options, qollide_trajectory** out);
QOLLIDE_API void qollide_trajectory_free(qollide_trajectory* traj);
QOLLIDE_API size_t qollide_trajectory_size(const qollide_trajectory* traj);
QOLLIDE_API qollide_status qollide_trajectory_point_at(const qollide_trajectory* traj, size_t index,
                                                       qollide_trajectory_point* out);
/* Nonzero when some recorded |rho_eg| > 1e-6 (temperatures use populations only). */
QOLLIDE_API int qollide_trajectory_coherence_flag(const qollide_trajectory* traj);
QOLLIDE_API qollide_status qollide_trajectory_csv(const qollide_trajectory* traj, char** out);

/* ---- scaling sweeps ----------------------------------------------------- */

typedef enum qollide_family {
  QOLLIDE_FAMILY_PRODUCT = 0,
  QOLLIDE_FAMILY_THERMAL_HEC = 1,
  QOLLIDE_FAMILY_DICKE = 2
} qollide_family;

typedef enum qollide_k_rule {
  QOLLIDE_KRULE_QUARTER = 0,       /* floor(N/4) */
  QOLLIDE_KRULE_HALF_MINUS_ONE = 1 /* ceil(N/2) - 1 */
} qollide_k_rule;

typedef struct qollide_sweep qollide_sweep;

QOLLIDE_API qollide_status qollide_sweep_run(qollide_family family, qollide_k_rule k_rule, double p_e, double n_bar,
                                             const int* ns, size_t count, const qollide_collision_params* params,
                                             qollide_sweep** out);
QOLLIDE_API void qollide_sweep_free(qollide_sweep* sweep);
QOLLIDE_API size_t qollide_sweep_size(const qollide_sweep* sweep);
/* Bit 0 set when *slope_t_q was written, bit 1 when *slope_temperature was. */
QOLLIDE_API int qollide_sweep_slopes(const qollide_sweep* sweep, double* slope_t_q, double* slope_temperature);
QOLLIDE_API qollide_status qollide_sweep_csv(const qollide_sweep* sweep, char** out);
QOLLIDE_API qollide_status qollide_sweep_fit_json(const qollide_sweep* sweep, char** out);

/* ---- coherence classification ------------------------------------------- */

typedef enum qollide_coherence {
  QOLLIDE_COHERENCE_POPULATION = 1,
  QOLLIDE_COHERENCE_HEC = 2,
  QOLLIDE_COHERENCE_DISPLACEMENT = 4,
  QOLLIDE_COHERENCE_SQUEEZING = 8,
  QOLLIDE_COHERENCE_INEFFECTIVE = 16
} qollide_coherence;

typedef struct qollide_coherence_map qollide_coherence_map;

QOLLIDE_API qollide_status qollide_classify(const qollide_bath* bath, qollide_coherence_map** out);
QOLLIDE_API void qollide_coherence_map_free(qollide_coherence_map* map);
QOLLIDE_API size_t qollide_coherence_map_dim(const qollide_coherence_map* map);
/* Primary label of entry (i, j); 0 when out of range. */
QOLLIDE_API int qollide_coherence_map_label(const qollide_coherence_map* map, size_t i, size_t j);
/* Bitwise OR of every label whose test fired for entry (i, j). */
QOLLIDE_API int qollide_coherence_map_labels(const qollide_coherence_map* map, size_t i, size_t j);
QOLLIDE_API qollide_status qollide_coherence_map_json(const qollide_coherence_map* map, int with_entries,
                                                      char** out);
QOLLIDE_API qollide_status qollide_coherence_map_text(const qollide_coherence_map* map, char** out);

/* ---- thermal preparation of the Dicke ladder ---------------------------- */

typedef struct qollide_preparation qollide_preparation;

QOLLIDE_API qollide_status qollide_prepare(int n, double n_bar, double gamma0, double t_end, double dt,
                                           size_t n_points, qollide_preparation** out);
QOLLIDE_API void qollide_preparation_free(qollide_preparation* prep);
QOLLIDE_API size_t qollide_preparation_size(const qollide_preparation* prep);
QOLLIDE_API qollide_status qollide_preparation_population(const qollide_preparation* prep, size_t time_index,
                                                          int k, double* out);
QOLLIDE_API qollide_status qollide_preparation_ladder_csv(const qollide_preparation* prep, char** out);
/* Final product-basis state in the bath matrix CSV format. */
QOLLIDE_API qollide_status qollide_preparation_matrix_csv(const qollide_preparation* prep, char** out);

/* ---- figure datasets ---------------------------------------------------- */

typedef struct qollide_figures qollide_figures;

QOLLIDE_API qollide_status qollide_figures_generate(size_t n_points, qollide_figures** out);
QOLLIDE_API void qollide_figures_free(qollide_figures* figs);
QOLLIDE_API size_t qollide_figures_count(const qollide_figures* figs);
/* File name and CSV body of dataset `index`; both owned by the handle. */
QOLLIDE_API const char* qollide_figures_name(const qollide_figures* figs, size_t index);
QOLLIDE_API const char* qollide_figures_csv(const qollide_figures* figs, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* QOLLIDE_H */
