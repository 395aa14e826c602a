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

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"

#include "exp/sweep.hpp"
#include "wmimo/wmimo.h"

namespace {

// interleaved identity basis for wm_spec_new
std::vector<double> identity_interleaved(std::size_t m)
{
    std::vector<double> u(2 * m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        u[2 * (i * m + i)] = 1.0;
    return u;
}

struct SpecPtr {
    wm_spec *p = nullptr;
    ~SpecPtr() { wm_spec_free(p); }
};

struct RngPtr {
    wm_rng *p = nullptr;
    ~RngPtr() { wm_rng_free(p); }
};

struct ConfigPtr {
    wm_config *p = nullptr;
    ~ConfigPtr() { wm_config_free(p); }
};

struct ResultPtr {
    wm_result *p = nullptr;
    ~ResultPtr() { wm_result_free(p); }
};

} // namespace

TEST_CASE("version and error strings")
{
    CHECK(std::string(wm_version()) == "0.1.0");

    SpecPtr s;
    CHECK(wm_spec_new_iid(0, &s.p) == WM_E_ARG);
    CHECK(std::strlen(wm_last_error()) > 0);

    // a successful call clears the sticky message
    CHECK(wm_spec_new_iid(4, &s.p) == WM_OK);
    CHECK(std::strlen(wm_last_error()) == 0);
}

TEST_CASE("null arguments are rejected, never dereferenced")
{
    SpecPtr s;
    REQUIRE(wm_spec_new_iid(4, &s.p) == WM_OK);
    double out[8];

    CHECK(wm_spec_new_iid(4, nullptr) == WM_E_ARG);
    CHECK(wm_fourth_moment(nullptr, out) == WM_E_ARG);
    CHECK(wm_fourth_moment(s.p, nullptr) == WM_E_ARG);
    CHECK(wm_cross_moment(s.p, nullptr, out) == WM_E_ARG);
    CHECK(wm_hardening_variance(nullptr, out) == WM_E_ARG);
    CHECK(wm_ula_steering(4, 0.5, 0.5, nullptr) == WM_E_ARG);
    CHECK(wm_rng_new(1, 0, nullptr) == WM_E_ARG);
    CHECK(wm_config_default("hardening", nullptr) == WM_E_ARG);
    CHECK(wm_config_parse(nullptr, "hardening", nullptr) == WM_E_ARG);
    CHECK(wm_run(nullptr, nullptr) == WM_E_ARG);
    CHECK(wm_result_csv(nullptr, nullptr) == WM_E_ARG);

    // free with NULL is a no-op everywhere
    wm_spec_free(nullptr);
    wm_rng_free(nullptr);
    wm_config_free(nullptr);
    wm_result_free(nullptr);
    wm_string_free(nullptr);
}

TEST_CASE("spec construction through the flat interface")
{
    const std::size_t m = 4;
    SpecPtr iid;
    REQUIRE(wm_spec_new_iid(m, &iid.p) == WM_OK);
    CHECK(wm_spec_dim(iid.p) == m);
    CHECK(wm_spec_dim(nullptr) == 0);

    double m4 = 0.0;
    REQUIRE(wm_fourth_moment(iid.p, &m4) == WM_OK);
    CHECK(std::fabs(m4 - 20.0) <= 1e-12 * 20.0); // M^2 + M

    // hand-checked mixed case: M=2, K=1, U=I, omega=(2,0), hbar=(1,1) -> 6
    const std::vector<double> u = identity_interleaved(2);
    const std::vector<double> omega = {2.0, 0.0};
    const std::vector<double> hbar = {1.0, 0.0, 1.0, 0.0};
    SpecPtr hand;
    REQUIRE(wm_spec_new(2, 1.0, u.data(), omega.data(), hbar.data(), &hand.p) == WM_OK);
    REQUIRE(wm_fourth_moment(hand.p, &m4) == WM_OK);
    CHECK(std::fabs(m4 - 6.0) <= 1e-12);

    // negative coupling is API misuse
    const std::vector<double> bad_omega = {3.0, -1.0};
    SpecPtr bad;
    CHECK(wm_spec_new(2, 1.0, u.data(), bad_omega.data(), hbar.data(), &bad.p)
          == WM_E_ARG);
}

TEST_CASE("random specs and channel draws are deterministic")
{
    const std::size_t m = 5;
    RngPtr r1, r2;
    REQUIRE(wm_rng_new(123, 9, &r1.p) == WM_OK);
    REQUIRE(wm_rng_new(123, 9, &r2.p) == WM_OK);

    SpecPtr s1, s2;
    REQUIRE(wm_spec_new_random(m, 8.0, r1.p, &s1.p) == WM_OK);
    REQUIRE(wm_spec_new_random(m, 8.0, r2.p, &s2.p) == WM_OK);

    double a4 = 0.0, b4 = 0.0;
    REQUIRE(wm_fourth_moment(s1.p, &a4) == WM_OK);
    REQUIRE(wm_fourth_moment(s2.p, &b4) == WM_OK);
    CHECK(a4 == b4);

    std::vector<double> ha(2 * m), hb(2 * m);
    REQUIRE(wm_sample_channel(s1.p, r1.p, ha.data()) == WM_OK);
    REQUIRE(wm_sample_channel(s2.p, r2.p, hb.data()) == WM_OK);
    CHECK(ha == hb);

    // a second draw from the same stream differs
    REQUIRE(wm_sample_channel(s1.p, r1.p, hb.data()) == WM_OK);
    CHECK(ha != hb);
}

TEST_CASE("deterministic builders")
{
    const std::size_t m = 4;
    std::vector<double> v(2 * m);
    REQUIRE(wm_ula_steering(m, 1.5707963267948966, 0.5, v.data()) == WM_OK);
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(std::fabs(v[2 * i] - 1.0) <= 1e-12);     // broadside: all ones
        CHECK(std::fabs(v[2 * i + 1]) <= 1e-12);
    }

    std::vector<double> w(m);
    REQUIRE(wm_coupling_scenario(3, m, w.data()) == WM_OK);
    CHECK(w[0] == 4.0);
    CHECK(w[1] == 0.0);
    CHECK(wm_coupling_scenario(7, m, w.data()) == WM_E_ARG);

    std::vector<double> q(2 * m * m);
    REQUIRE(wm_one_ring_covariance(m, 0.2, 0.7, 0.5, q.data()) == WM_OK);
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(std::fabs(q[2 * (i * m + i)] - 1.0) <= 1e-12); // unit diagonal
        CHECK(std::fabs(q[2 * (i * m + i) + 1]) <= 1e-12);
    }
    // Hermitian: q(i,j) = conj(q(j,i))
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            CHECK(q[2 * (i * m + j)] == doctest::Approx(q[2 * (j * m + i)]).epsilon(1e-14));
            CHECK(q[2 * (i * m + j) + 1]
                  == doctest::Approx(-q[2 * (j * m + i) + 1]).epsilon(1e-14));
        }
    CHECK(wm_one_ring_covariance(m, 4.0, 0.7, 0.5, q.data()) == WM_E_ARG);

    REQUIRE(wm_block_covariance(1, m, 1, q.data()) == WM_OK);
    CHECK(q[0] == 1.0);                          // ones block
    CHECK(q[2 * (0 * m + 2)] == 1.0);            // still inside the block
    CHECK(q[2 * (0 * m + 3)] == 0.0);            // identity tail
    CHECK(q[2 * (3 * m + 3)] == 1.0);
    CHECK(wm_block_covariance(1, m, m, q.data()) == WM_E_ARG);

    REQUIRE(wm_ones_matrix(2, q.data()) == WM_OK);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(q[2 * i] == 1.0);
        CHECK(q[2 * i + 1] == 0.0);
    }
}

TEST_CASE("Haar unitary through the C interface")
{
    const std::size_t m = 4;
    RngPtr rng;
    REQUIRE(wm_rng_new(5, 1, &rng.p) == WM_OK);
    std::vector<double> u(2 * m * m);
    REQUIRE(wm_haar_unitary(m, rng.p, u.data()) == WM_OK);

    // U^H U = I, checked on the interleaved layout directly
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double re = 0.0, im = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                const double ar = u[2 * (k * m + i)];
                const double ai = u[2 * (k * m + i) + 1];
                const double br = u[2 * (k * m + j)];
                const double bi = u[2 * (k * m + j) + 1];
                re += ar * br + ai * bi; // conj(a) * b
                im += ar * bi - ai * br;
            }
            CHECK(std::fabs(re - (i == j ? 1.0 : 0.0)) <= 1e-12);
            CHECK(std::fabs(im) <= 1e-12);
        }
}

TEST_CASE("closed-form moment calls")
{
    const std::size_t m = 5;
    std::vector<double> flat(m, 1.0);
    double out = 0.0;
    REQUIRE(wm_nlos_fourth_moment(flat.data(), m, &out) == WM_OK);
    CHECK(out == 30.0); // M + M^2

    SpecPtr a, b;
    REQUIRE(wm_spec_new_iid(m, &a.p) == WM_OK);
    REQUIRE(wm_spec_new_iid(m, &b.p) == WM_OK);

    double cm[5];
    REQUIRE(wm_cross_moment(a.p, b.p, cm) == WM_OK);
    CHECK(cm[0] == 5.0);
    CHECK(cm[1] == 0.0);
    CHECK(cm[2] == 5.0);

    double hv[5];
    REQUIRE(wm_hardening_variance(a.p, hv) == WM_OK);
    CHECK(std::fabs(hv[0] - 0.2) <= 1e-15); // gamma^2 (1 + eta^2) / M
    CHECK(hv[3] == 0.2);                    // rr bounds collapse at flat coupling
    CHECK(hv[4] == 0.2);

    double fp[8];
    REQUIRE(wm_fp_variance(a.p, b.p, fp) == WM_OK);
    CHECK(std::fabs(fp[0] - 0.2) <= 1e-14);
    CHECK(std::fabs(fp[5] - 5.0) <= 1e-14); // tr(Q_k Q_l)
    CHECK(fp[6] == 5.0);
    CHECK(std::fabs(fp[7] - 25.0) <= 1e-12);

    std::vector<double> omega = {3.0, 1.0, 0.0, 0.0};
    REQUIRE(wm_quadratic_form_alignment(omega.data(), 4, &out) == WM_OK);
    CHECK(out == 0.5);
}

TEST_CASE("trace interference through the flat interface")
{
    const std::size_t m = 3;
    const std::vector<double> eye = identity_interleaved(m);
    double out[4];
    REQUIRE(wm_trace_interference(eye.data(), eye.data(), m, out) == WM_OK);
    CHECK(std::fabs(out[0] - 3.0) <= 1e-12);
    CHECK(out[1] == 1.0);
    CHECK(out[2] == 3.0);
    CHECK(std::fabs(out[3] - 9.0) <= 1e-9);
}

TEST_CASE("Monte Carlo estimators through the C interface")
{
    const std::size_t m = 4;
    SpecPtr s;
    REQUIRE(wm_spec_new_iid(m, &s.p) == WM_OK);

    double gm[4];
    REQUIRE(wm_mc_gain_moments(s.p, 20000, 3, 1, gm) == WM_OK);
    CHECK(std::fabs(gm[0] - 4.0) <= 5.0 * gm[1]);
    CHECK(std::fabs(gm[2] - 20.0) <= 5.0 * gm[3]);
    CHECK(wm_mc_gain_moments(s.p, 0, 3, 1, gm) == WM_E_ARG);

    double xm[2];
    REQUIRE(wm_mc_cross_moment(s.p, s.p, 20000, 4, 2, xm) == WM_OK);
    CHECK(std::fabs(xm[0] - 4.0) <= 5.0 * xm[1]);
}

TEST_CASE("config objects over the C interface")
{
    ConfigPtr cfg;
    REQUIRE(wm_config_default("block-interference", &cfg.p) == WM_OK);
    CHECK(wm_config_set(cfg.p, "m", "[12]") == WM_OK);
    CHECK(wm_config_set(cfg.p, "d_rank", "[2,3,4]") == WM_OK);
    CHECK(wm_config_set(cfg.p, "k_factor", "1.5") == WM_E_CONFIG); // wrong experiment
    CHECK(wm_config_set(cfg.p, "m", "[not json") == WM_E_CONFIG);
    CHECK(wm_config_set(cfg.p, "zap", "1") == WM_E_CONFIG);

    char *echo = nullptr;
    REQUIRE(wm_config_canonical(cfg.p, &echo) == WM_OK);
    REQUIRE(echo != nullptr);
    CHECK(std::string(echo).find("\"experiment\":\"block-interference\"")
          != std::string::npos);
    CHECK(std::string(echo).find("\"m\":[12]") != std::string::npos);
    wm_string_free(echo);

    ConfigPtr bad;
    CHECK(wm_config_default("warp-drive", &bad.p) == WM_E_CONFIG);
    CHECK(wm_config_parse("{]", nullptr, &bad.p) == WM_E_CONFIG);
    CHECK(wm_config_parse("{}", nullptr, &bad.p) == WM_E_CONFIG);
    CHECK(wm_config_parse("{}", "hardening", &bad.p) == WM_OK);
}

TEST_CASE("experiment run over the C interface")
{
    ConfigPtr cfg;
    REQUIRE(wm_config_default("block-interference", &cfg.p) == WM_OK);
    REQUIRE(wm_config_set(cfg.p, "m", "[8]") == WM_OK);
    REQUIRE(wm_config_set(cfg.p, "d_rank", "[1,4,7]") == WM_OK);

    ResultPtr res;
    REQUIRE(wm_run(cfg.p, &res.p) == WM_OK);

    size_t rows = 0, cols = 0;
    REQUIRE(wm_result_shape(res.p, &rows, &cols) == WM_OK);
    CHECK(rows == 3);
    CHECK(cols == 2);

    char *csv = nullptr;
    REQUIRE(wm_result_csv(res.p, &csv) == WM_OK);
    REQUIRE(csv != nullptr);
    const std::string text(csv);
    wm_string_free(csv);

    // the emitted document is loadable and matches the identity at d=1
    const wmimo::SweepResult parsed = wmimo::parse_csv(text);
    CHECK(parsed.rows() == 3);
    const double want = (7.0 * 7.0 + 1.0) / 64.0;
    CHECK(std::fabs(parsed.column("s1_trace_norm")[0] - want) <= 1e-12);

    CHECK(wm_result_write_csv(res.p, "/no/such/dir/out.csv") == WM_E_IO);
}
