// SPDX-License-Identifier: Apache-2.0
//
// wmimo - Weichselberger massive MIMO channel statistics
// Copyright (C) 2026 the wmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WMIMO_MOMENTS_MOMENTS_HPP
#define WMIMO_MOMENTS_MOMENTS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "channel/channel.hpp"
#include "core/types.hpp"

namespace wmimo {

/// Closed-form hardening statistics for one user:
///   Var(||h||^2 / E||h||^2) = (gamma^2 / M^2) (los_term + nlos_term)
/// with los_term = 2 eta^2 v^H diag(omega) v and nlos_term = gamma^2 tr(diag(omega)^2).
/// rr_lower/rr_upper are the Rayleigh-Ritz bounds on v^H diag(omega) v / M^2.
struct HardeningReport {
    double variance = 0.0;
    double los_term = 0.0;
    double nlos_term = 0.0;
    double rr_lower = 0.0;
    double rr_upper = 0.0;
};

/// Closed-form favorable-propagation variance for a user pair:
///   Var(h_k^H h_l / M) = E|h_k^H h_l|^2 / M^2,
/// split into the four mechanisms of the cross moment.  trace_value is
/// tr(Q_k Q_l); trace_lower = M and trace_upper = M^2 ||V||^2_max are the
/// reference bounds on it (the lower one holds with certainty only for
/// equal coupling; it is reported, not asserted).
struct FpReport {
    double variance = 0.0;
    double term_los_los = 0.0;
    double term_nlos_nlos = 0.0;
    double term_k_los = 0.0; // eta_k^2 gamma_l^2 hbar_k^H Q_l hbar_k
    double term_l_los = 0.0; // gamma_k^2 eta_l^2 hbar_l^H Q_k hbar_l
    double trace_value = 0.0;
    double trace_lower = 0.0;
    double trace_upper = 0.0;
};

/// E||h||^4 = gamma^4 tr(diag(omega)^2) + M^2 + 2 eta^2 gamma^2 v^H diag(omega) v.
double fourth_moment(const UserChannelSpec &spec);

/// Fourth moment of the NLoS part alone: tr(L^2) + (tr L)^2, L = diag(omega).
double nlos_fourth_moment(const std::vector<double> &omega);

struct CrossMoment {
    double value = 0.0;
    double term_los_los = 0.0;
    double term_nlos_nlos = 0.0;
    double term_k_los = 0.0;
    double term_l_los = 0.0;
};

/// E|h_k^H h_l|^2 as the sum of four nonnegative terms.
CrossMoment cross_moment(const UserChannelSpec &spec_k, const UserChannelSpec &spec_l);

HardeningReport hardening_variance(const UserChannelSpec &spec);

/// (min(omega)/M, max(omega)/M), bracketing v^H diag(omega) v / M^2.
std::pair<double, double> rayleigh_ritz_bounds(const UserChannelSpec &spec);

/// Quadratic-form value when the LoS response splits evenly over the two
/// principal eigenvectors: (omega_1 + omega_2) / (2M).
double quadratic_form_alignment(const std::vector<double> &omega);

/// Same quantity evaluated the long way: hbar = sqrt(M/2)(u_1 + u_2),
/// then hbar^H U diag(omega) U^H hbar / M^2.
double quadratic_form_alignment_explicit(const CMat &u, const std::vector<double> &omega);

/// tr(q_k q_l) plus reference bounds.  The bounds need both inputs to be
/// Hermitian PSD with the covariance normalization; when either check
/// fails has_bounds stays false and only the raw trace value is returned
/// (that keeps the as-printed non-Hermitian block scenario usable).
struct TraceInterference {
    double value = 0.0;
    bool has_bounds = false;
    double lower = 0.0; // M, exact for equal coupling
    double upper = 0.0; // M^2 ||V||^2_max
};
TraceInterference trace_interference(const CMat &q_k, const CMat &q_l);

FpReport fp_variance(const UserChannelSpec &spec_k, const UserChannelSpec &spec_l);

/// Boundedness diagnostics: entrywise-extreme statistics whose growth in M
/// signals hardening/FP breakdown.
struct ScalingMetrics {
    double omega_max = 0.0;       // max_i omega_{k,i}
    double v_max_sq = 0.0;        // max_i |v_{k,i}|^2
    double omega_outer_max = 0.0; // max entry of omega_l omega_k^T
    double r_max = 0.0;           // max entry norm of U_k^H U_l
    double nu_max = 0.0;          // max_i |hbar_k^H u_{l,i}|
    double hbar_align = 0.0;      // |hbar_k^H hbar_l|
};
ScalingMetrics scaling_metrics(const UserChannelSpec &spec_k, const UserChannelSpec &spec_l);

/// Log-log least-squares exponent fit: value ~ C * M^epsilon.
struct ScalingDiagnostic {
    std::string metric;
    std::vector<double> m_values;
    std::vector<double> values;
    double epsilon = 0.0;
};
ScalingDiagnostic assess_scaling(const std::string &metric,
                                 const std::vector<double> &m_values,
                                 const std::vector<double> &values);

} // namespace wmimo

#endif
