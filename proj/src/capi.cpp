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

#include "wmimo/wmimo.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "channel/channel.hpp"
#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "exp/config.hpp"
#include "exp/experiments.hpp"
#include "exp/sweep.hpp"
#include "mc/montecarlo.hpp"
#include "moments/moments.hpp"
#include "version.hpp"

struct wm_rng {
    wmimo::RngStream stream;
};
struct wm_spec {
    wmimo::UserChannelSpec spec;
};
struct wm_config {
    wmimo::ExperimentConfig cfg;
};
struct wm_result {
    wmimo::SweepResult result;
};

namespace {

thread_local std::string t_error;

wm_status fail(wm_status code, const char *what)
{
    t_error = what;
    return code;
}

template <typename Fn>
wm_status guarded(Fn &&fn)
{
    try {
        fn();
        t_error.clear();
        return WM_OK;
    } catch (const wmimo::config_error &e) {
        return fail(WM_E_CONFIG, e.what());
    } catch (const wmimo::numeric_error &e) {
        return fail(WM_E_NUMERIC, e.what());
    } catch (const wmimo::io_error &e) {
        return fail(WM_E_IO, e.what());
    } catch (const std::exception &e) {
        return fail(WM_E_ARG, e.what());
    } catch (...) {
        return fail(WM_E_ARG, "unknown failure");
    }
}

void require(bool ok, const char *what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

char *dup_string(const std::string &s)
{
    char *p = static_cast<char *>(std::malloc(s.size() + 1));
    if (p == nullptr)
        throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

wmimo::CVec vec_from(const double *data, std::size_t m)
{
    wmimo::CVec v(m);
    for (std::size_t i = 0; i < m; ++i)
        v[i] = wmimo::Complex(data[2 * i], data[2 * i + 1]);
    return v;
}

void vec_to(const wmimo::CVec &v, double *out)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[2 * i] = v[i].real();
        out[2 * i + 1] = v[i].imag();
    }
}

wmimo::CMat mat_from(const double *data, std::size_t m)
{
    wmimo::CMat a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t k = 2 * (i * m + j);
            a(i, j) = wmimo::Complex(data[k], data[k + 1]);
        }
    return a;
}

void mat_to(const wmimo::CMat &a, double *out)
{
    const std::size_t m = a.rows();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t k = 2 * (i * m + j);
            out[k] = a(i, j).real();
            out[k + 1] = a(i, j).imag();
        }
}

} // namespace

extern "C" {

const char *wm_version(void) { return WMIMO_VERSION_STRING; }

const char *wm_last_error(void) { return t_error.c_str(); }

void wm_string_free(char *str) { std::free(str); }

wm_status wm_rng_new(uint64_t seed, uint64_t stream, wm_rng **out)
{
    return guarded([&] {
        require(out != nullptr, "wm_rng_new: out is null");
        *out = new wm_rng{wmimo::RngStream(seed, stream)};
    });
}

void wm_rng_free(wm_rng *rng) { delete rng; }

wm_status wm_spec_new(size_t m, double k_factor, const double *u, const double *omega,
                      const double *hbar, wm_spec **out)
{
    return guarded([&] {
        require(out != nullptr, "wm_spec_new: out is null");
        require(u != nullptr && omega != nullptr && hbar != nullptr,
                "wm_spec_new: array argument is null");
        std::vector<double> w(omega, omega + m);
        *out = new wm_spec{
            wmimo::make_spec(m, k_factor, mat_from(u, m), w, vec_from(hbar, m))};
    });
}

wm_status wm_spec_new_iid(size_t m, wm_spec **out)
{
    return guarded([&] {
        require(out != nullptr, "wm_spec_new_iid: out is null");
        *out = new wm_spec{wmimo::iid_spec(m)};
    });
}

wm_status wm_spec_new_random(size_t m, double k_max, wm_rng *rng, wm_spec **out)
{
    return guarded([&] {
        require(out != nullptr, "wm_spec_new_random: out is null");
        require(rng != nullptr, "wm_spec_new_random: rng is null");
        *out = new wm_spec{wmimo::random_spec(m, k_max, rng->stream)};
    });
}

void wm_spec_free(wm_spec *spec) { delete spec; }

size_t wm_spec_dim(const wm_spec *spec) { return spec == nullptr ? 0 : spec->spec.m; }

wm_status wm_sample_channel(const wm_spec *spec, wm_rng *rng, double *out)
{
    return guarded([&] {
        require(spec != nullptr && rng != nullptr && out != nullptr,
                "wm_sample_channel: null argument");
        vec_to(wmimo::sample_channel(spec->spec, rng->stream), out);
    });
}

wm_status wm_ula_steering(size_t m, double phi, double spacing, double *out)
{
    return guarded([&] {
        require(out != nullptr, "wm_ula_steering: out is null");
        vec_to(wmimo::ula_steering(m, phi, spacing), out);
    });
}

wm_status wm_coupling_scenario(int id, size_t m, double *out)
{
    return guarded([&] {
        require(out != nullptr, "wm_coupling_scenario: out is null");
        const std::vector<double> w = wmimo::coupling_scenario(id, m);
        std::memcpy(out, w.data(), m * sizeof(double));
    });
}

wm_status wm_one_ring_covariance(size_t m, double spread, double phi0, double spacing,
                                 double *out)
{
    return guarded([&] {
        require(out != nullptr, "wm_one_ring_covariance: out is null");
        mat_to(wmimo::one_ring_covariance({m, spread, phi0, spacing}).q, out);
    });
}

wm_status wm_block_covariance(int id, size_t m, size_t d_rank, double *out)
{
    return guarded([&] {
        require(out != nullptr, "wm_block_covariance: out is null");
        mat_to(wmimo::block_covariance_scenario(id, m, d_rank), out);
    });
}

wm_status wm_ones_matrix(size_t m, double *out)
{
    return guarded([&] {
        require(out != nullptr, "wm_ones_matrix: out is null");
        require(m > 0, "wm_ones_matrix: m must be positive");
        mat_to(wmimo::CMat::ones(m), out);
    });
}

wm_status wm_haar_unitary(size_t m, wm_rng *rng, double *out)
{
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "wm_haar_unitary: null argument");
        mat_to(wmimo::haar_unitary(m, rng->stream), out);
    });
}

wm_status wm_fourth_moment(const wm_spec *spec, double *out)
{
    return guarded([&] {
        require(spec != nullptr && out != nullptr, "wm_fourth_moment: null argument");
        *out = wmimo::fourth_moment(spec->spec);
    });
}

wm_status wm_nlos_fourth_moment(const double *omega, size_t m, double *out)
{
    return guarded([&] {
        require(omega != nullptr && out != nullptr,
                "wm_nlos_fourth_moment: null argument");
        *out = wmimo::nlos_fourth_moment(std::vector<double>(omega, omega + m));
    });
}

wm_status wm_cross_moment(const wm_spec *spec_k, const wm_spec *spec_l, double *out)
{
    return guarded([&] {
        require(spec_k != nullptr && spec_l != nullptr && out != nullptr,
                "wm_cross_moment: null argument");
        const wmimo::CrossMoment c = wmimo::cross_moment(spec_k->spec, spec_l->spec);
        out[0] = c.value;
        out[1] = c.term_los_los;
        out[2] = c.term_nlos_nlos;
        out[3] = c.term_k_los;
        out[4] = c.term_l_los;
    });
}

wm_status wm_hardening_variance(const wm_spec *spec, double *out)
{
    return guarded([&] {
        require(spec != nullptr && out != nullptr,
                "wm_hardening_variance: null argument");
        const wmimo::HardeningReport r = wmimo::hardening_variance(spec->spec);
        out[0] = r.variance;
        out[1] = r.los_term;
        out[2] = r.nlos_term;
        out[3] = r.rr_lower;
        out[4] = r.rr_upper;
    });
}

wm_status wm_fp_variance(const wm_spec *spec_k, const wm_spec *spec_l, double *out)
{
    return guarded([&] {
        require(spec_k != nullptr && spec_l != nullptr && out != nullptr,
                "wm_fp_variance: null argument");
        const wmimo::FpReport r = wmimo::fp_variance(spec_k->spec, spec_l->spec);
        out[0] = r.variance;
        out[1] = r.term_los_los;
        out[2] = r.term_nlos_nlos;
        out[3] = r.term_k_los;
        out[4] = r.term_l_los;
        out[5] = r.trace_value;
        out[6] = r.trace_lower;
        out[7] = r.trace_upper;
    });
}

wm_status wm_trace_interference(const double *q_k, const double *q_l, size_t m,
                                double *out)
{
    return guarded([&] {
        require(q_k != nullptr && q_l != nullptr && out != nullptr,
                "wm_trace_interference: null argument");
        require(m > 0, "wm_trace_interference: m must be positive");
        const wmimo::TraceInterference t =
            wmimo::trace_interference(mat_from(q_k, m), mat_from(q_l, m));
        out[0] = t.value;
        out[1] = t.has_bounds ? 1.0 : 0.0;
        out[2] = t.lower;
        out[3] = t.upper;
    });
}

wm_status wm_quadratic_form_alignment(const double *omega, size_t m, double *out)
{
    return guarded([&] {
        require(omega != nullptr && out != nullptr,
                "wm_quadratic_form_alignment: null argument");
        *out = wmimo::quadratic_form_alignment(std::vector<double>(omega, omega + m));
    });
}

wm_status wm_mc_gain_moments(const wm_spec *spec, uint64_t trials, uint64_t seed,
                             unsigned workers, double *out)
{
    return guarded([&] {
        require(spec != nullptr && out != nullptr, "wm_mc_gain_moments: null argument");
        const wmimo::GainMoments g =
            wmimo::estimate_gain_moments(spec->spec, {trials, seed, workers});
        out[0] = g.m2.mean;
        out[1] = g.m2.std_error;
        out[2] = g.m4.mean;
        out[3] = g.m4.std_error;
    });
}

wm_status wm_mc_cross_moment(const wm_spec *spec_k, const wm_spec *spec_l,
                             uint64_t trials, uint64_t seed, unsigned workers,
                             double *out)
{
    return guarded([&] {
        require(spec_k != nullptr && spec_l != nullptr && out != nullptr,
                "wm_mc_cross_moment: null argument");
        const wmimo::McEstimate e = wmimo::estimate_cross_moment(
            spec_k->spec, spec_l->spec, {trials, seed, workers});
        out[0] = e.mean;
        out[1] = e.std_error;
    });
}

wm_status wm_config_default(const char *experiment, wm_config **out)
{
    return guarded([&] {
        require(experiment != nullptr && out != nullptr,
                "wm_config_default: null argument");
        *out = new wm_config{wmimo::default_config(experiment)};
    });
}

wm_status wm_config_parse(const char *json_text, const char *experiment, wm_config **out)
{
    return guarded([&] {
        require(json_text != nullptr && out != nullptr, "wm_config_parse: null argument");
        if (experiment == nullptr)
            *out = new wm_config{wmimo::parse_config(json_text)};
        else
            *out = new wm_config{wmimo::parse_config(json_text, experiment)};
    });
}

wm_status wm_config_set(wm_config *cfg, const char *key, const char *json_value)
{
    return guarded([&] {
        require(cfg != nullptr && key != nullptr && json_value != nullptr,
                "wm_config_set: null argument");
        nlohmann::json value;
        try {
            value = nlohmann::json::parse(json_value);
        } catch (const nlohmann::json::parse_error &err) {
            throw wmimo::config_error(std::string("config: invalid JSON value: ")
                                      + err.what());
        }
        wmimo::set_field(cfg->cfg, key, value);
    });
}

wm_status wm_config_canonical(const wm_config *cfg, char **out)
{
    return guarded([&] {
        require(cfg != nullptr && out != nullptr, "wm_config_canonical: null argument");
        *out = dup_string(wmimo::canonical_json(cfg->cfg));
    });
}

void wm_config_free(wm_config *cfg) { delete cfg; }

wm_status wm_run(const wm_config *cfg, wm_result **out)
{
    return guarded([&] {
        require(cfg != nullptr && out != nullptr, "wm_run: null argument");
        *out = new wm_result{wmimo::run(cfg->cfg)};
    });
}

wm_status wm_result_csv(const wm_result *result, char **out)
{
    return guarded([&] {
        require(result != nullptr && out != nullptr, "wm_result_csv: null argument");
        *out = dup_string(wmimo::to_csv(result->result));
    });
}

wm_status wm_result_write_csv(const wm_result *result, const char *path)
{
    return guarded([&] {
        require(result != nullptr && path != nullptr,
                "wm_result_write_csv: null argument");
        wmimo::write_csv_file(result->result, path);
    });
}

wm_status wm_result_shape(const wm_result *result, size_t *rows, size_t *cols)
{
    return guarded([&] {
        require(result != nullptr && rows != nullptr && cols != nullptr,
                "wm_result_shape: null argument");
        *rows = result->result.rows();
        *cols = result->result.columns.size();
    });
}

void wm_result_free(wm_result *result) { delete result; }

} // extern "C"
