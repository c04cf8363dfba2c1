// Copyright 2026 The dicke-fringe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICKE_FRINGE_H
#define DICKE_FRINGE_H

/* Plain C interface to the dicke-fringe library.
 *
 * Units: time in 1/gamma, Omega in gamma, lengths in optical wavelengths,
 * angles in radians. Every function returns a df_status; on failure
 * df_last_error() describes the problem for the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DF_BUILDING_LIBRARY)
#define DF_API __declspec(dllexport)
#else
#define DF_API __declspec(dllimport)
#endif
#else
#define DF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum df_status {
  DF_OK = 0,
  DF_ERR_INVALID_ARGUMENT = 1,
  DF_ERR_INVALID_GEOMETRY = 2,
  DF_ERR_BASIS_MISMATCH = 3,
  DF_ERR_DEGENERATE_DRIVE = 4,
  DF_ERR_NO_PHOTON = 5,
  DF_ERR_SINGULAR = 6,
  DF_ERR_DOMAIN = 7,
  DF_ERR_INVALID_STATE = 8,
  DF_ERR_IO = 9,
  DF_ERR_INTERNAL = 10
} df_status;

typedef enum df_basis { DF_BASIS_PRODUCT = 0, DF_BASIS_SYMMETRIZED = 1 } df_basis;

typedef enum df_method {
  DF_METHOD_ANALYTIC = 0,
  DF_METHOD_NUMERIC = 1,
  DF_METHOD_MONTE_CARLO = 2
} df_method;

typedef struct df_system df_system;
typedef struct df_state df_state;
typedef struct df_clicks df_clicks;
typedef struct df_report df_report;

DF_API const char* df_version(void);
/* Message for the most recent failure on this thread; empty when none. */
DF_API const char* df_last_error(void);
DF_API const char* df_status_name(df_status status);

/* Systems */
DF_API df_status df_system_create(double omega, double phi, df_system** out);
DF_API df_status df_system_create_geometry(double omega, const double laser_dir[3],
                                           const double separation[3], df_system** out);
DF_API void df_system_free(df_system* sys);
DF_API df_status df_system_omega(const df_system* sys, double* out);
DF_API df_status df_system_phi(const df_system* sys, double* out);
/* delta = (k_L - k r_hat) . x12 reduced to [0, 2pi); raw is optional. */
DF_API df_status df_detection_phase(const df_system* sys, const double direction[3],
                                    double* reduced, double* raw);

/* States: 4x4 complex matrices, row-major, interleaved (re, im). */
DF_API df_status df_state_create(const double entries[32], df_basis basis, double phi,
                                 df_state** out);
DF_API void df_state_free(df_state* state);
DF_API df_status df_state_entries(const df_state* state, double entries[32]);
DF_API df_status df_state_basis(const df_state* state, df_basis* out);
DF_API df_status df_state_to_symmetrized(const df_state* state, double phi, df_state** out);
DF_API df_status df_state_to_product(const df_state* state, df_state** out);

/* Steady state and dynamics */
/* populations[4] = {gg, ss, aa, ee} */
DF_API df_status df_steady_state_closed_form(const df_system* sys, double populations[4]);
DF_API df_status df_steady_state_numeric(const df_system* sys, df_state** out);
DF_API df_status df_propagate(const df_system* sys, const df_state* rho0, double t,
                              df_state** out);

/* Detection */
DF_API df_status df_detection_probability(const df_state* rho, double delta, double phi,
                                          double* out);
DF_API df_status df_reduce_on_detection(const df_state* rho, double delta, double phi,
                                        df_state** out);
DF_API df_status df_sa_coherence(const df_state* rho_sym, double* out);
DF_API df_status df_separability_witness(const df_state* rho, int* separable);

/* Correlations */
DF_API df_status df_g1_intensity(const df_system* sys, double delta, double* out);
DF_API df_status df_g1_visibility(const df_system* sys, double* out);
DF_API df_status df_g2_analytic(const df_system* sys, double delta1, double delta2,
                                double t, double* out);
DF_API df_status df_g2_zero_delay(const df_system* sys, double delta1, double delta2,
                                  double* out);
DF_API df_status df_g2_numeric(const df_system* sys, double delta1, double delta2,
                               double t, double* out);
/* Evaluates every (delta1[i], delta2[j], tau[k]) into out[(i*n2 + j)*nt + k]. */
DF_API df_status df_g2_grid(const df_system* sys, df_method method, const double* delta1,
                            size_t n1, const double* delta2, size_t n2, const double* tau,
                            size_t nt, double* out);
DF_API df_status df_inequality_check(const df_system* sys, double delta1, double delta2,
                                     double* lhs, double* rhs, int* violated);

/* Quantum-jump simulation */
DF_API df_status df_simulate(const df_system* sys, double duration, uint64_t seed,
                             df_clicks** out);
DF_API void df_clicks_free(df_clicks* clicks);
DF_API df_status df_clicks_count(const df_clicks* clicks, size_t* out);
DF_API df_status df_clicks_get(const df_clicks* clicks, size_t index, double* time,
                               double* delta);
DF_API df_status df_clicks_write(const df_clicks* clicks, const char* path);
DF_API df_status df_clicks_read(const char* path, df_clicks** out);

typedef struct df_mc_options {
  double budget;               /* total observed time, 1/gamma */
  uint64_t seed;
  unsigned workers;            /* 0: hardware concurrency */
  double trajectory_duration;  /* 1/gamma */
  double burn_in;              /* 1/gamma */
} df_mc_options;

DF_API void df_mc_options_default(df_mc_options* opts);

/* Coincidence estimate for one detector-window pair. Arrays value, stderr
 * and defined have n_edges - 1 entries. */
DF_API df_status df_g2_monte_carlo(const df_system* sys, double delta1, double delta2,
                                   double half_width, const double* tau_edges,
                                   size_t n_edges, const df_mc_options* opts,
                                   double* value, double* standard_error, int* defined);

/* Acceptance suite */
typedef struct df_acceptance_options {
  int fast;
  double mc_budget;
  size_t ensemble_trajectories;
  uint64_t seed;
  unsigned workers;
} df_acceptance_options;

DF_API void df_acceptance_options_default(df_acceptance_options* opts);
DF_API df_status df_run_acceptance(const df_acceptance_options* opts, df_report** out);
DF_API void df_report_free(df_report* report);
DF_API size_t df_report_count(const df_report* report);
/* Strings remain valid until df_report_free. */
DF_API df_status df_report_entry(const df_report* report, size_t index, int* id,
                                 const char** title, const char** measured, int* passed,
                                 int* skipped, double* seconds);

#ifdef __cplusplus
}
#endif

#endif /* DICKE_FRINGE_H */
