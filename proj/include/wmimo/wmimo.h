/* SPDX-License-Identifier: Apache-2.0
 *
 * wmimo - Weichselberger massive MIMO channel statistics
 * Copyright (C) 2026 the wmimo authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ----------------------------------------------------------------------
 *
 * C interface of the wmimo shared library.
 *
 * Conventions:
 *  - Complex arrays are interleaved doubles (re, im), matrices row-major,
 *    so an m x m matrix occupies 2*m*m doubles and a vector 2*m.
 *  - Every fallible call returns a wm_status code; on failure a message
 *    is available from wm_last_error() until the next call on the same
 *    thread.
 *  - Strings returned through char** are heap-allocated; release them
 *    with wm_string_free().  Handles are released with their _free call.
 */

#ifndef WMIMO_H
#define WMIMO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wm_status {
    WM_OK = 0,
    WM_E_ARG = 1,     /* invalid argument or precondition violation */
    WM_E_CONFIG = 2,  /* malformed or inconsistent experiment config */
    WM_E_NUMERIC = 3, /* eigensolver or quadrature failure */
    WM_E_IO = 4       /* file read or write failure */
} wm_status;

typedef struct wm_rng wm_rng;       /* deterministic random stream */
typedef struct wm_spec wm_spec;     /* per-user channel specification */
typedef struct wm_config wm_config; /* experiment configuration */
typedef struct wm_result wm_result; /* sweep result table */

/* Library version string, static storage. */
const char *wm_version(void);

/* Message of the last failing call on this thread; static until the next
 * library call from the same thread.  Empty string if none. */
const char *wm_last_error(void);

void wm_string_free(char *str);

/* ---- random streams -------------------------------------------------- */

wm_status wm_rng_new(uint64_t seed, uint64_t stream, wm_rng **out);
void wm_rng_free(wm_rng *rng);

/* ---- channel specs --------------------------------------------------- */

/* Build a spec from an eigenbasis u (2*m*m doubles), coupling vector
 * omega (m doubles, nonnegative; rescaled so the sum is exactly m) and
 * LoS response hbar (2*m doubles, rescaled to squared norm m).
 * k_factor >= 0; HUGE_VAL selects the pure LoS channel. */
wm_status wm_spec_new(size_t m, double k_factor, const double *u, const double *omega,
                      const double *hbar, wm_spec **out);

/* i.i.d. Rayleigh: K = 0, identity basis, flat unit coupling. */
wm_status wm_spec_new_iid(size_t m, wm_spec **out);

/* Random spec: K uniform on [0, k_max], Haar eigenbasis, Dirichlet
 * coupling scaled to sum m, Gaussian LoS response scaled to norm^2 m. */
wm_status wm_spec_new_random(size_t m, double k_max, wm_rng *rng, wm_spec **out);

void wm_spec_free(wm_spec *spec);
size_t wm_spec_dim(const wm_spec *spec);

/* One channel draw, out = 2*m doubles. */
wm_status wm_sample_channel(const wm_spec *spec, wm_rng *rng, double *out);

/* ---- deterministic builders ------------------------------------------ */

/* ULA steering vector for angle phi (radians) and antenna spacing in
 * wavelengths, out = 2*m doubles. */
wm_status wm_ula_steering(size_t m, double phi, double spacing, double *out);

/* Coupling scenarios: 1 flat, 2 half-energy first entry, 3 rank-1.
 * out = m doubles. */
wm_status wm_coupling_scenario(int id, size_t m, double *out);

/* One-ring covariance, spread is the half-spread in radians (0, pi],
 * phi0 the nominal arrival angle.  out = 2*m*m doubles. */
wm_status wm_one_ring_covariance(size_t m, double spread, double phi0, double spacing,
                                 double *out);

/* Block test covariances of the interference study, id 1 or 2,
 * 1 <= d_rank < m.  out = 2*m*m doubles. */
wm_status wm_block_covariance(int id, size_t m, size_t d_rank, double *out);

/* All-ones matrix, out = 2*m*m doubles. */
wm_status wm_ones_matrix(size_t m, double *out);

/* Haar-distributed random unitary, out = 2*m*m doubles. */
wm_status wm_haar_unitary(size_t m, wm_rng *rng, double *out);

/* ---- closed-form moments --------------------------------------------- */

/* E||h||^4 of one user. */
wm_status wm_fourth_moment(const wm_spec *spec, double *out);

/* E||h||^4 of the pure NLoS channel with coupling omega (m doubles). */
wm_status wm_nlos_fourth_moment(const double *omega, size_t m, double *out);

/* E|h_k^H h_l|^2 split into its four terms.
 * out[5] = value, los_los, nlos_nlos, k_los, l_los. */
wm_status wm_cross_moment(const wm_spec *spec_k, const wm_spec *spec_l, double *out);

/* Scaled channel gain variance Var(||h||^2)/M^2 and its decomposition.
 * out[5] = variance, los_term, nlos_term, rr_lower, rr_upper; the last
 * two bracket the LoS quadratic form v^H diag(omega) v / M^2. */
wm_status wm_hardening_variance(const wm_spec *spec, double *out);

/* Scaled cross moment E|h_k^H h_l|^2 / M^2 and its decomposition.
 * out[8] = variance, los_los, nlos_nlos, k_los, l_los, trace_value,
 * trace_lower, trace_upper. */
wm_status wm_fp_variance(const wm_spec *spec_k, const wm_spec *spec_l, double *out);

/* tr(Q_k Q_l) for two m x m covariance inputs (interleaved, row-major).
 * out[4] = value, has_bounds (0 or 1), lower, upper.  Bounds are only
 * reported for Hermitian PSD inputs with trace m. */
wm_status wm_trace_interference(const double *q_k, const double *q_l, size_t m,
                                double *out);

/* Quadratic form value (omega_1 + omega_2) / (2 m) of the equal-weight
 * two-eigenvector LoS alignment example. */
wm_status wm_quadratic_form_alignment(const double *omega, size_t m, double *out);

/* ---- Monte Carlo estimators ------------------------------------------ */

/* out[4] = mean ||h||^2, its std error, mean ||h||^4, its std error. */
wm_status wm_mc_gain_moments(const wm_spec *spec, uint64_t trials, uint64_t seed,
                             unsigned workers, double *out);

/* out[2] = mean |h_k^H h_l|^2, its std error. */
wm_status wm_mc_cross_moment(const wm_spec *spec_k, const wm_spec *spec_l,
                             uint64_t trials, uint64_t seed, unsigned workers,
                             double *out);

/* ---- experiment configs and runs ------------------------------------- */

/* Built-in defaults for one of: hardening, block-interference,
 * one-ring-interference, moment-validate, scaling-diagnostic. */
wm_status wm_config_default(const char *experiment, wm_config **out);

/* Parse a JSON config document.  experiment may be NULL when the
 * document names one; when both are given they must agree. */
wm_status wm_config_parse(const char *json_text, const char *experiment, wm_config **out);

/* Assign one field from a JSON value fragment, e.g. key "m" and
 * json_value "[16,32]".  Keys the experiment does not use are rejected. */
wm_status wm_config_set(wm_config *cfg, const char *key, const char *json_value);

/* Canonical single-line JSON echo of the config. */
wm_status wm_config_canonical(const wm_config *cfg, char **out);

void wm_config_free(wm_config *cfg);

/* Validate the config and run the experiment it names. */
wm_status wm_run(const wm_config *cfg, wm_result **out);

/* Full CSV document (metadata lines, header, data rows). */
wm_status wm_result_csv(const wm_result *result, char **out);

/* Write the CSV document to a file. */
wm_status wm_result_write_csv(const wm_result *result, const char *path);

/* Row count and metric column count (the axis column not included). */
wm_status wm_result_shape(const wm_result *result, size_t *rows, size_t *cols);

void wm_result_free(wm_result *result);

#ifdef __cplusplus
}
#endif

#endif /* WMIMO_H */
