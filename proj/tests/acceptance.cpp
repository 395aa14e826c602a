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
//
// End-to-end gate: runs every built-in experiment with its default
// configuration and checks the published statistical and structural
// guarantees.  Prints one PASS/FAIL line per criterion; the exit code is
// the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "channel/channel.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "exp/config.hpp"
#include "exp/experiments.hpp"
#include "exp/sweep.hpp"
#include "mc/montecarlo.hpp"
#include "moments/moments.hpp"
#include "version.hpp"

using namespace wmimo;

namespace {

constexpr double pi = 3.14159265358979323846;

int g_failed = 0;

void report(int id, const char *title, bool ok, const std::string &why)
{
    if (ok)
        std::printf("PASS %d %s\n", id, title);
    else
        std::printf("FAIL %d %s | %s\n", id, title, why.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failed;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct ExperimentRun {
    bool ok = false;
    SweepResult result;
    std::string csv_first;
    std::string csv_second;
    double seconds = 0.0;
    std::string error;
};

// each default experiment runs twice on the identical config; the first
// pass is timed and kept, the second only feeds the byte comparison
ExperimentRun run_twice(const std::string &id)
{
    ExperimentRun out;
    try {
        const ExperimentConfig cfg = default_config(id);
        const auto t0 = std::chrono::steady_clock::now();
        SweepResult first = run(cfg);
        const auto t1 = std::chrono::steady_clock::now();
        out.seconds = std::chrono::duration<double>(t1 - t0).count();
        out.csv_first = to_csv(first);
        const SweepResult second = run(cfg);
        out.csv_second = to_csv(second);
        out.result = std::move(first);
        out.ok = true;
    } catch (const std::exception &e) {
        out.error = e.what();
    }
    return out;
}

std::size_t find_row(const SweepResult &r, double axis_value)
{
    for (std::size_t i = 0; i < r.axis_values.size(); ++i)
        if (r.axis_values[i] == axis_value)
            return i;
    return r.axis_values.size();
}

double meta_real(const SweepResult &r, const std::string &key, bool &ok)
{
    const std::string *s = r.find_metadata(key);
    if (s == nullptr) {
        ok = false;
        return 0.0;
    }
    return std::strtod(s->c_str(), nullptr);
}

UserChannelSpec flat_spec(std::size_t m, double k_factor)
{
    return make_spec(m, k_factor, CMat::identity(m), std::vector<double>(m, 1.0),
                     CVec(m, Complex(1.0, 0.0)));
}

// ---- criteria ----------------------------------------------------------

void criterion_moment_validation(const ExperimentRun &mv)
{
    const char *title = "moment validation statistics";
    if (!mv.ok) {
        report(1, title, false, mv.error);
        return;
    }
    try {
        const auto &z = mv.result.column("z");
        std::size_t good = 0;
        for (double v : z)
            if (std::isfinite(v) && std::fabs(v) <= 5.0)
                ++good;
        std::string why;
        bool ok = true;
        if (z.size() != 150 || good + 3 < z.size()) {
            ok = false;
            why = "rows within 5 sigma: " + std::to_string(good) + "/"
                  + std::to_string(z.size());
        }
        if (mv.seconds >= 300.0) {
            ok = false;
            why += (why.empty() ? "" : "; ");
            why += "runtime " + fmt(mv.seconds) + " s exceeds 300 s";
        }
        report(1, title, ok, why);
    } catch (const std::exception &e) {
        report(1, title, false, e.what());
    }
}

void criterion_variance_identity()
{
    const char *title = "variance identity on random specs";
    try {
        const auto t0 = std::chrono::steady_clock::now();
        RngStream rng(20260814, 1);
        const std::size_t m = 16;
        const double md = 16.0;
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const UserChannelSpec s = random_spec(m, 10.0, rng);
            const double m4 = fourth_moment(s);
            const double lhs = hardening_variance(s).variance * md * md + md * md;
            worst = std::max(worst, std::fabs(lhs - m4) / m4);
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string why;
        bool ok = true;
        if (worst > 1e-12) {
            ok = false;
            why = "worst relative defect " + fmt(worst);
        }
        if (secs >= 1.0) {
            ok = false;
            why += (why.empty() ? "" : "; ");
            why += "runtime " + fmt(secs) + " s exceeds 1 s";
        }
        report(2, title, ok, why);
    } catch (const std::exception &e) {
        report(2, title, false, e.what());
    }
}

void criterion_degenerate_forms()
{
    const char *title = "degenerate closed forms";
    try {
        const double inf = std::numeric_limits<double>::infinity();
        std::string why;
        bool ok = true;
        for (std::size_t m : {4u, 16u, 64u, 256u}) {
            const double md = static_cast<double>(m);

            if (hardening_variance(flat_spec(m, inf)).variance != 0.0) {
                ok = false;
                why = "pure LoS variance not exactly zero at M=" + std::to_string(m);
                break;
            }
            const double m4 = fourth_moment(iid_spec(m));
            if (std::fabs(m4 - (md * md + md)) > 1e-12 * (md * md + md)) {
                ok = false;
                why = "iid fourth moment off at M=" + std::to_string(m);
                break;
            }
            for (double k : {0.0, 2.0, 7.5}) {
                const double g2 = 1.0 / (k + 1.0);
                const double e2 = k / (k + 1.0);
                const double want = g2 * (1.0 + e2) / md;
                const double got = hardening_variance(flat_spec(m, k)).variance;
                if (std::fabs(got - want) > 1e-12 * want) {
                    ok = false;
                    why = "flat-coupling variance off at M=" + std::to_string(m)
                          + ", K=" + fmt(k);
                }
            }
            if (!ok)
                break;
        }
        report(3, title, ok, why);
    } catch (const std::exception &e) {
        report(3, title, false, e.what());
    }
}

void criterion_hardening(const ExperimentRun &hd)
{
    const char *title = "hardening trace agreement";
    if (!hd.ok) {
        report(4, title, false, hd.error);
        return;
    }
    try {
        const SweepResult &r = hd.result;
        std::string why;
        bool ok = true;

        // flat coupling with K=1/2 has the basis-independent value 8/(9M)
        const auto &s1 = r.column("s1_closed");
        for (std::size_t i = 0; i < r.rows() && ok; ++i) {
            const double want = 8.0 / (9.0 * r.axis_values[i]);
            if (std::fabs(s1[i] - want) > 1e-9 * want) {
                ok = false;
                why = "s1_closed deviates at M=" + fmt(r.axis_values[i]);
            }
        }

        // large-M plateaus of the concentrated scenarios
        const std::size_t row = find_row(r, 256.0);
        if (row == r.rows()) {
            ok = false;
            why = "no M=256 row";
        } else {
            const double s3 = r.column("s3_closed")[row];
            const double want3 = 4.0 / 9.0;
            if (std::fabs(s3 - want3) > 0.15 * want3) {
                ok = false;
                why = "s3_closed at M=256 is " + fmt(s3) + ", expected near "
                      + fmt(want3);
            }
            const double s2 = r.column("s2_closed")[row];
            const double want2 = (4.0 / 9.0) * (0.25 + 1.0 / (4.0 * 255.0));
            if (std::fabs(s2 - want2) > 0.15 * want2) {
                ok = false;
                why = "s2_closed at M=256 is " + fmt(s2) + ", expected near "
                      + fmt(want2);
            }
        }

        // Monte Carlo columns agree with the closed forms cell by cell
        for (int id : {1, 2, 3}) {
            const std::string base = "s" + std::to_string(id);
            const auto &closed = r.column(base + "_closed");
            const auto &mc = r.column(base + "_mc");
            const auto &se = r.column(base + "_mc_se");
            for (std::size_t i = 0; i < r.rows(); ++i)
                if (std::fabs(mc[i] - closed[i]) > 5.0 * se[i]) {
                    ok = false;
                    why = base + " sampling off at M=" + fmt(r.axis_values[i])
                          + " (" + fmt(std::fabs(mc[i] - closed[i]) / se[i])
                          + " sigma)";
                }
        }

        if (hd.seconds >= 600.0) {
            ok = false;
            why += (why.empty() ? "" : "; ");
            why += "runtime " + fmt(hd.seconds) + " s exceeds 600 s";
        }
        report(4, title, ok, why);
    } catch (const std::exception &e) {
        report(4, title, false, e.what());
    }
}

void criterion_block(const ExperimentRun &bl)
{
    const char *title = "block interference identities";
    if (!bl.ok) {
        report(5, title, false, bl.error);
        return;
    }
    try {
        const SweepResult &r = bl.result;
        const auto &s1 = r.column("s1_trace_norm");
        const auto &s2 = r.column("s2_trace_norm");
        const double md = 100.0;
        std::string why;
        bool ok = (r.rows() == 99);
        if (!ok)
            why = "expected 99 rows, got " + std::to_string(r.rows());
        for (std::size_t i = 0; i < r.rows() && ok; ++i) {
            const double d = r.axis_values[i];
            const double want1 = ((md - d) * (md - d) + d) / (md * md);
            const double want2 = (d * (md - d) + (md - d)) / (md * md);
            if (std::fabs(s1[i] - want1) > 1e-12 || std::fabs(s2[i] - want2) > 1e-12) {
                ok = false;
                why = "closed-form mismatch at D=" + fmt(d);
            }
            if (i > 0 && s1[i] >= s1[i - 1]) {
                ok = false;
                why = "s1_trace_norm not strictly decreasing at D=" + fmt(d);
            }
        }
        if (bl.seconds >= 10.0) {
            ok = false;
            why += (why.empty() ? "" : "; ");
            why += "runtime " + fmt(bl.seconds) + " s exceeds 10 s";
        }
        report(5, title, ok, why);
    } catch (const std::exception &e) {
        report(5, title, false, e.what());
    }
}

void criterion_one_ring(const ExperimentRun &orr)
{
    const char *title = "one-ring interference behavior";
    if (!orr.ok) {
        report(6, title, false, orr.error);
        return;
    }
    try {
        const SweepResult &r = orr.result;
        const auto &narrow = r.column("dphi1_1");
        const auto &wide = r.column("dphi1_40");
        std::string why;
        bool ok = true;

        // at a tight second cluster the narrow first cluster interferes
        // far more strongly than the wide one
        if (!(narrow[0] >= 5.0 * wide[0])) {
            ok = false;
            why = "narrow/wide ratio at 1 degree is "
                  + fmt(narrow[0] / wide[0]) + ", expected >= 5";
        }

        // once both spreads are large the interference trends upward: the
        // wide-cluster curve rises monotonically until the spreads match,
        // and past that point it ripples but stays well above its level at
        // 20 degrees instead of falling back
        const std::size_t at20 = find_row(r, 20.0);
        const std::size_t at40 = find_row(r, 40.0);
        if (at20 == r.rows() || at40 == r.rows()) {
            ok = false;
            why = "expected spread2 rows at 20 and 40 degrees";
        }
        for (std::size_t i = at20 + 1; ok && i <= at40; ++i)
            if (wide[i] < wide[i - 1] * (1.0 - 1e-9)) {
                ok = false;
                why = "dphi1_40 decreases at spread2 " + fmt(r.axis_values[i]);
            }
        for (std::size_t i = at40 + 1; ok && i < r.rows(); ++i)
            if (wide[i] <= wide[at20]) {
                ok = false;
                why = "dphi1_40 falls back to its 20-degree level at spread2 "
                      + fmt(r.axis_values[i]);
            }
        if (ok && wide[r.rows() - 1] <= wide[at20]) {
            ok = false;
            why = "dphi1_40 does not grow between 20 and 60 degrees";
        }

        // the underlying matrices are honest covariances
        const double deg = pi / 180.0;
        for (double spread : {1.0, 40.0}) {
            const CovarianceMatrix cov =
                one_ring_covariance({100, spread * deg, pi / 4.0, 0.5});
            if (!cov.q.is_hermitian()) {
                ok = false;
                why = "covariance not Hermitian at spread " + fmt(spread);
            }
            for (std::size_t i = 0; i < 100; ++i)
                if (std::fabs(cov.q(i, i).real() - 1.0) > 1e-12) {
                    ok = false;
                    why = "covariance diagonal off at spread " + fmt(spread);
                    break;
                }
            const CovarianceMatrix eig = with_eigendecomposition(cov.q);
            for (double w : eig.omega)
                if (w < 0.0) {
                    ok = false;
                    why = "negative eigenvalue at spread " + fmt(spread);
                }
        }

        if (orr.seconds >= 120.0) {
            ok = false;
            why += (why.empty() ? "" : "; ");
            why += "runtime " + fmt(orr.seconds) + " s exceeds 120 s";
        }
        report(6, title, ok, why);
    } catch (const std::exception &e) {
        report(6, title, false, e.what());
    }
}

void criterion_bounds()
{
    const char *title = "interference and alignment bounds";
    try {
        RngStream rng(8086, 2);
        std::string why;
        bool ok = true;

        // random one-ring pairs stay inside the closed bounds
        for (int rep = 0; rep < 100 && ok; ++rep) {
            const std::size_t m = 16 + static_cast<std::size_t>(rng.uniform01() * 49.0);
            const double md = static_cast<double>(m);
            const auto draw_cov = [&] {
                const double spread = 0.01 + rng.uniform01() * (pi - 0.01);
                const double phi0 = rng.uniform01() * 2.0 * pi;
                return one_ring_covariance({m, spread, phi0, 0.1 + 0.9 * rng.uniform01()});
            };
            const CovarianceMatrix qk = draw_cov();
            const CovarianceMatrix ql = draw_cov();
            const TraceInterference t = trace_interference(qk.q, ql.q);
            if (t.value < -1e-9 || t.value > md * md * (1.0 + 1e-12)) {
                ok = false;
                why = "trace outside [0, M^2] at rep " + std::to_string(rep);
            } else if (!t.has_bounds) {
                ok = false;
                why = "bounds missing for a PSD pair at rep " + std::to_string(rep);
            } else if (t.value > t.upper * (1.0 + 1e-9)) {
                ok = false;
                why = "upper bound violated at rep " + std::to_string(rep);
            }
        }

        // near-equal coupling keeps the trace at or above M
        for (int rep = 0; rep < 20 && ok; ++rep) {
            const std::size_t m = 24;
            const double md = 24.0;
            auto near_flat = [&] {
                std::vector<double> w(m);
                double sum = 0.0;
                for (double &x : w) {
                    x = 1.0 + 2e-5 * (rng.uniform01() - 0.5);
                    sum += x;
                }
                for (double &x : w)
                    x *= md / sum;
                return w;
            };
            const CMat uk = haar_unitary(m, rng);
            const CMat ul = haar_unitary(m, rng);
            const CovarianceMatrix qk = build_covariance(uk, near_flat());
            const CovarianceMatrix ql = build_covariance(ul, near_flat());
            const TraceInterference t = trace_interference(qk.q, ql.q);
            if (t.value < md * (1.0 - 1e-4) * (1.0 - 1e-9)) {
                ok = false;
                why = "equal-coupling lower bound violated: trace " + fmt(t.value);
            }
        }

        // exactly flat coupling: the bound is attained by the identity pair
        if (ok) {
            const TraceInterference t =
                trace_interference(CMat::identity(32), CMat::identity(32));
            if (std::fabs(t.value - 32.0) > 1e-9 * 32.0 || !t.has_bounds) {
                ok = false;
                why = "identity pair trace is " + fmt(t.value);
            }
        }

        // Rayleigh-Ritz bracket on the LoS alignment form
        for (int rep = 0; rep < 100 && ok; ++rep) {
            const UserChannelSpec s = random_spec(32, 10.0, rng);
            const auto [lo, hi] = rayleigh_ritz_bounds(s);
            double form = 0.0;
            for (std::size_t i = 0; i < s.omega.size(); ++i)
                form += s.omega[i] * std::norm(s.v[i]);
            form /= 32.0 * 32.0;
            if (form < lo - 1e-9 || form > hi + 1e-9) {
                ok = false;
                why = "alignment form escapes its bracket at rep " + std::to_string(rep);
            }
        }

        report(7, title, ok, why);
    } catch (const std::exception &e) {
        report(7, title, false, e.what());
    }
}

void criterion_reproducibility(const std::vector<std::pair<std::string, const ExperimentRun *>> &runs)
{
    const char *title = "bitwise reproducibility";
    std::string why;
    bool ok = true;
    for (const auto &[id, er] : runs) {
        if (!er->ok) {
            ok = false;
            why = id + ": " + er->error;
            break;
        }
        if (er->csv_first != er->csv_second) {
            ok = false;
            why = id + ": repeated run differs";
            break;
        }
    }
    report(8, title, ok, why);
}

void criterion_scaling(const ExperimentRun &sc)
{
    const char *title = "scaling exponents";
    if (!sc.ok) {
        report(9, title, false, sc.error);
        return;
    }
    bool have = true;
    const double eps1 = meta_real(sc.result, "epsilon.omega_max_s1", have);
    const double eps3 = meta_real(sc.result, "epsilon.omega_max_s3", have);
    std::string why;
    bool ok = true;
    if (!have) {
        ok = false;
        why = "exponent metadata missing";
    } else {
        if (std::fabs(eps1) > 0.1) {
            ok = false;
            why = "flat-coupling exponent " + fmt(eps1) + " not near 0";
        }
        if (std::fabs(eps3 - 1.0) > 0.1) {
            ok = false;
            why += (why.empty() ? "" : "; ");
            why += "single-mode exponent " + fmt(eps3) + " not near 1";
        }
    }
    report(9, title, ok, why);
}

} // namespace

int main()
{
    std::printf("wmimo acceptance run (%s)\n", WMIMO_VERSION_STRING);

    const ExperimentRun block = run_twice("block-interference");
    const ExperimentRun one_ring = run_twice("one-ring-interference");
    const ExperimentRun scaling = run_twice("scaling-diagnostic");
    const ExperimentRun hardening = run_twice("hardening");
    const ExperimentRun validate = run_twice("moment-validate");

    criterion_moment_validation(validate);
    criterion_variance_identity();
    criterion_degenerate_forms();
    criterion_hardening(hardening);
    criterion_block(block);
    criterion_one_ring(one_ring);
    criterion_bounds();
    criterion_reproducibility({{"block-interference", &block},
                               {"one-ring-interference", &one_ring},
                               {"scaling-diagnostic", &scaling},
                               {"hardening", &hardening},
                               {"moment-validate", &validate}});
    criterion_scaling(scaling);

    std::printf("%d of 9 criteria failed\n", g_failed);
    return g_failed;
}
