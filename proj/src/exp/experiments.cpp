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

#include "exp/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "channel/channel.hpp"
#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "mc/montecarlo.hpp"
#include "moments/moments.hpp"
#include "version.hpp"

namespace wmimo {

namespace {

constexpr double pi = 3.14159265358979323846;

void expect_experiment(const ExperimentConfig &cfg, const char *id)
{
    if (cfg.experiment != id)
        throw config_error(std::string("config: experiment '") + cfg.experiment
                           + "' passed to the " + id + " runner");
}

std::string fmt_g(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// common metadata block, prepended so runner-specific entries follow it
void add_common_metadata(SweepResult &r, const ExperimentConfig &cfg, unsigned workers)
{
    const std::vector<std::pair<std::string, std::string>> head = {
        {"version", WMIMO_VERSION_STRING},
        {"experiment", cfg.experiment},
        {"seed", std::to_string(cfg.seed)},
        {"workers", std::to_string(workers)},
        {"config", canonical_json(cfg)},
    };
    r.metadata.insert(r.metadata.begin(), head.begin(), head.end());
}

} // namespace

SweepResult run_hardening(const ExperimentConfig &cfg)
{
    expect_experiment(cfg, "hardening");
    validate(cfg);
    const unsigned workers = resolve_workers(cfg.workers);

    HardeningTraceConfig trace;
    trace.m_values = cfg.m;
    trace.k_factor = cfg.k_factor;
    trace.phi = cfg.phi;
    trace.spacing = cfg.spacing;
    trace.scenarios = cfg.scenarios;
    trace.basis_draws = cfg.basis_draws;
    trace.mc = {cfg.trials, cfg.seed, workers};

    SweepResult r = hardening_trace(trace);
    add_common_metadata(r, cfg, workers);
    return r;
}

SweepResult run_block_interference(const ExperimentConfig &cfg)
{
    expect_experiment(cfg, "block-interference");
    validate(cfg);
    const std::size_t m = cfg.m[0];
    const double md = static_cast<double>(m);

    SweepResult r;
    r.axis = "d_rank";
    for (int s : cfg.scenarios)
        r.columns.push_back({"s" + std::to_string(s) + "_trace_norm", {}});

    const CMat q2 = CMat::ones(m);
    for (std::size_t d : cfg.d_rank) {
        r.axis_values.push_back(static_cast<double>(d));
        for (std::size_t s = 0; s < cfg.scenarios.size(); ++s) {
            const CMat q1 = block_covariance_scenario(cfg.scenarios[s], m, d);
            const double value = trace_product(q1, q2).real();
            r.columns[s].values.push_back(value / (md * md));
        }
    }
    add_common_metadata(r, cfg, resolve_workers(cfg.workers));
    return r;
}

SweepResult run_one_ring_interference(const ExperimentConfig &cfg)
{
    expect_experiment(cfg, "one-ring-interference");
    validate(cfg);
    const std::size_t m = cfg.m[0];
    const double md = static_cast<double>(m);
    const double deg = pi / 180.0;

    SweepResult r;
    r.axis = "spread2_deg";
    std::vector<CMat> q1s;
    q1s.reserve(cfg.spread1_deg.size());
    for (double s1 : cfg.spread1_deg) {
        r.columns.push_back({"dphi1_" + fmt_g(s1), {}});
        q1s.push_back(one_ring_covariance({m, s1 * deg, cfg.phi0[0], cfg.spacing}).q);
    }

    for (double s2 : cfg.spread2_deg) {
        const CMat q2 = one_ring_covariance({m, s2 * deg, cfg.phi0[1], cfg.spacing}).q;
        r.axis_values.push_back(s2);
        for (std::size_t i = 0; i < q1s.size(); ++i)
            r.columns[i].values.push_back(trace_product(q1s[i], q2).real() / md);
    }
    add_common_metadata(r, cfg, resolve_workers(cfg.workers));
    return r;
}

SweepResult run_moment_validate(const ExperimentConfig &cfg)
{
    expect_experiment(cfg, "moment-validate");
    validate(cfg);
    const std::size_t m = cfg.m[0];
    const double md = static_cast<double>(m);
    const unsigned workers = resolve_workers(cfg.workers);

    SweepResult r;
    r.axis = "row";
    r.columns.push_back({"spec_id", {}});
    r.columns.push_back({"metric_id", {}});
    r.columns.push_back({"closed", {}});
    r.columns.push_back({"mc", {}});
    r.columns.push_back({"se", {}});
    r.columns.push_back({"z", {}});

    const auto push_row = [&](std::size_t row, std::size_t spec_id, int metric_id,
                              double closed, const McEstimate &est) {
        double z;
        if (est.std_error == 0.0) {
            const double tol = 1e-9 * std::max(1.0, std::fabs(closed));
            z = (std::fabs(est.mean - closed) <= tol)
                    ? 0.0
                    : std::numeric_limits<double>::infinity();
        } else {
            z = (est.mean - closed) / est.std_error;
        }
        r.axis_values.push_back(static_cast<double>(row));
        r.columns[0].values.push_back(static_cast<double>(spec_id));
        r.columns[1].values.push_back(static_cast<double>(metric_id));
        r.columns[2].values.push_back(closed);
        r.columns[3].values.push_back(est.mean);
        r.columns[4].values.push_back(est.std_error);
        r.columns[5].values.push_back(z);
    };

    for (std::size_t i = 0; i < cfg.specs; ++i) {
        RngStream draw(cfg.seed, {stream_tag::spec_draw, i});
        const UserChannelSpec spec_k = random_spec(m, cfg.k_max, draw);
        const UserChannelSpec spec_l = random_spec(m, cfg.k_max, draw);

        McConfig mc;
        mc.trials = cfg.trials;
        mc.seed = substream_seed(cfg.seed, {stream_tag::spec_draw, i});
        mc.workers = workers;
        const MomentValidation est = validate_moments(spec_k, spec_l, mc);

        push_row(3 * i, i, 1, md, est.m2);
        push_row(3 * i + 1, i, 2, fourth_moment(spec_k), est.m4);
        push_row(3 * i + 2, i, 3, cross_moment(spec_k, spec_l).value, est.cross);
    }
    add_common_metadata(r, cfg, workers);
    return r;
}

SweepResult run_scaling_diagnostic(const ExperimentConfig &cfg)
{
    expect_experiment(cfg, "scaling-diagnostic");
    validate(cfg);
    const std::size_t ns = cfg.scenarios.size();

    SweepResult r;
    r.axis = "m";
    for (int s : cfg.scenarios) {
        const std::string tag = "_s" + std::to_string(s);
        r.columns.push_back({"omega_max" + tag, {}});
        r.columns.push_back({"omega_outer_max" + tag, {}});
    }
    r.columns.push_back({"v_max_sq", {}});
    r.columns.push_back({"r_max", {}});
    r.columns.push_back({"nu_max", {}});
    r.columns.push_back({"hbar_align", {}});

    for (std::size_t m : cfg.m) {
        RngStream rng_k(cfg.seed, {stream_tag::scaling_basis, m, 0});
        RngStream rng_l(cfg.seed, {stream_tag::scaling_basis, m, 1});
        const CMat u_k = haar_unitary(m, rng_k);
        const CMat u_l = haar_unitary(m, rng_l);
        const CVec hbar = ula_steering(m, cfg.phi, cfg.spacing);

        r.axis_values.push_back(static_cast<double>(m));
        ScalingMetrics shared{};
        for (std::size_t s = 0; s < ns; ++s) {
            const std::vector<double> omega = coupling_scenario(cfg.scenarios[s], m);
            const UserChannelSpec spec_k = make_spec(m, 1.0, u_k, omega, hbar);
            const UserChannelSpec spec_l = make_spec(m, 1.0, u_l, omega, hbar);
            const ScalingMetrics sm = scaling_metrics(spec_k, spec_l);
            r.columns[2 * s].values.push_back(sm.omega_max);
            r.columns[2 * s + 1].values.push_back(sm.omega_outer_max);
            if (s == 0)
                shared = sm;
        }
        r.columns[2 * ns].values.push_back(shared.v_max_sq);
        r.columns[2 * ns + 1].values.push_back(shared.r_max);
        r.columns[2 * ns + 2].values.push_back(shared.nu_max);
        r.columns[2 * ns + 3].values.push_back(shared.hbar_align);
    }

    for (const SweepResult::Column &col : r.columns) {
        const ScalingDiagnostic fit = assess_scaling(col.name, r.axis_values, col.values);
        r.add_metadata("epsilon." + col.name, format_real(fit.epsilon));
    }
    add_common_metadata(r, cfg, resolve_workers(cfg.workers));
    return r;
}

SweepResult run(const ExperimentConfig &cfg)
{
    validate(cfg);
    if (cfg.experiment == "hardening")
        return run_hardening(cfg);
    if (cfg.experiment == "block-interference")
        return run_block_interference(cfg);
    if (cfg.experiment == "one-ring-interference")
        return run_one_ring_interference(cfg);
    if (cfg.experiment == "moment-validate")
        return run_moment_validate(cfg);
    if (cfg.experiment == "scaling-diagnostic")
        return run_scaling_diagnostic(cfg);
    throw config_error("config: unknown experiment '" + cfg.experiment + "'");
}

} // namespace wmimo
