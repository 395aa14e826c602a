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

#ifndef WMIMO_MC_MONTECARLO_HPP
#define WMIMO_MC_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "channel/channel.hpp"
#include "exp/sweep.hpp"

namespace wmimo {

/// Fixed (trials, seed, workers) reproduce every estimate bit-exactly.
/// Changing workers changes the stream assignment of the chunked
/// estimators and therefore the sample, but not the distribution.
struct McConfig {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

/// Shifted power sums up to the fourth order.  The shift (first sample)
/// keeps the sums conditioned around zero, and makes degenerate inputs
/// (a constant sample, e.g. pure LoS) yield exactly zero variance.
struct PowerSums {
    double shift = 0.0;
    std::uint64_t n = 0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

    void add(double x);
    void merge(const PowerSums &other); // rebases other onto this shift

    double mean() const;
    double variance() const;    // unbiased sample variance
    double se_mean() const;     // standard error of the mean
    double fourth_central() const;
    double variance_se() const; // standard error of variance()
    McEstimate mean_estimate() const;
};

struct GainMoments {
    McEstimate m2; // E||h||^2
    McEstimate m4; // E||h||^4
};

/// Sample means of ||h||^2 and ||h||^4 over independent channel draws.
GainMoments estimate_gain_moments(const UserChannelSpec &spec, const McConfig &cfg);

/// Sample mean of |h_k^H h_l|^2 over independent channel pairs.
McEstimate estimate_cross_moment(const UserChannelSpec &spec_k,
                                 const UserChannelSpec &spec_l, const McConfig &cfg);

/// One shared pass for the validation experiment: the gain moments of
/// user k and the cross moment of the pair, estimated on common draws.
struct MomentValidation {
    McEstimate m2;
    McEstimate m4;
    McEstimate cross;
};
MomentValidation validate_moments(const UserChannelSpec &spec_k,
                                  const UserChannelSpec &spec_l, const McConfig &cfg);

enum class BasisKind { identity, haar };

/// Spec recipe parameterized by M: Ricean K, steering angle and spacing
/// for the LoS response, coupling scenario id, eigenbasis kind.
struct ChannelTemplate {
    double k_factor = 0.0;
    double phi = 0.0;
    double spacing = 0.5;
    int scenario = 1;
    BasisKind basis = BasisKind::haar;
};

struct HardeningTraceConfig {
    std::vector<std::size_t> m_values;
    double k_factor = 0.0;
    double phi = 0.0;
    double spacing = 0.5;
    std::vector<int> scenarios;
    std::size_t basis_draws = 1;
    McConfig mc; // trials are per basis draw
};

/// Hardening study: per M and coupling scenario, the closed-form scaled
/// variance averaged over random eigenbases next to its Monte Carlo
/// estimate.  Columns: s<id>_closed, s<id>_mc, s<id>_mc_se.  Basis draws
/// are indexed by (M, draw), so the output does not depend on the worker
/// count at all.
SweepResult hardening_trace(const HardeningTraceConfig &cfg);

struct FpTraceConfig {
    std::vector<std::size_t> m_values;
    ChannelTemplate user_k;
    ChannelTemplate user_l;
    bool share_basis = false; // user l reuses user k's drawn eigenbasis
    std::size_t basis_draws = 1;
    McConfig mc;
};

/// Favorable-propagation study: per M, closed-form Var(h_k^H h_l / M)
/// next to Monte Carlo estimates of E|h_k^H h_l|^2/M^2 and of the mean of
/// h_k^H h_l / M.  Columns: fp_closed, fp_mc_msq, fp_mc_msq_se,
/// fp_mc_mean_re, fp_mc_mean_im.
SweepResult fp_trace(const FpTraceConfig &cfg);

} // namespace wmimo

#endif
