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

#include "mc/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "core/linalg.hpp"
#include "moments/moments.hpp"

namespace wmimo {

void PowerSums::add(double x)
{
    if (n == 0)
        shift = x;
    const double d = x - shift;
    const double d2 = d * d;
    ++n;
    s1 += d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
}

void PowerSums::merge(const PowerSums &other)
{
    if (other.n == 0)
        return;
    if (n == 0) {
        *this = other;
        return;
    }
    // rebase the other accumulator onto this shift: d' = d + delta
    const double delta = other.shift - shift;
    const double on = static_cast<double>(other.n);
    const double d2 = delta * delta;
    s4 += other.s4 + 4.0 * delta * other.s3 + 6.0 * d2 * other.s2
          + 4.0 * d2 * delta * other.s1 + on * d2 * d2;
    s3 += other.s3 + 3.0 * delta * other.s2 + 3.0 * d2 * other.s1 + on * d2 * delta;
    s2 += other.s2 + 2.0 * delta * other.s1 + on * d2;
    s1 += other.s1 + on * delta;
    n += other.n;
}

double PowerSums::mean() const
{
    if (n == 0)
        throw std::invalid_argument("PowerSums: empty accumulator");
    return shift + s1 / static_cast<double>(n);
}

double PowerSums::variance() const
{
    if (n < 2)
        return 0.0;
    const double nn = static_cast<double>(n);
    const double num = s2 - s1 * s1 / nn;
    return num > 0.0 ? num / (nn - 1.0) : 0.0;
}

double PowerSums::se_mean() const
{
    if (n == 0)
        return 0.0;
    return std::sqrt(variance() / static_cast<double>(n));
}

double PowerSums::fourth_central() const
{
    if (n == 0)
        return 0.0;
    const double nn = static_cast<double>(n);
    const double mb = s1 / nn;
    const double c4 = s4 - 4.0 * mb * s3 + 6.0 * mb * mb * s2 - 3.0 * nn * mb * mb * mb * mb;
    return c4 > 0.0 ? c4 / nn : 0.0;
}

double PowerSums::variance_se() const
{
    if (n < 4)
        return 0.0;
    const double nn = static_cast<double>(n);
    const double s2v = variance();
    const double var_of_var =
        (fourth_central() - s2v * s2v * (nn - 3.0) / (nn - 1.0)) / nn;
    return var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
}

McEstimate PowerSums::mean_estimate() const
{
    return {mean(), se_mean(), n};
}

namespace {

void check_mc(const McConfig &cfg)
{
    if (cfg.trials == 0)
        throw std::invalid_argument("McConfig: trials must be positive");
    if (cfg.workers == 0)
        throw std::invalid_argument("McConfig: workers must be positive");
}

// Contiguous trial chunks, one per worker, each with its own sub-stream.
// Partials are merged in worker order, so results depend on (trials, seed,
// workers) only.
template <typename Partial, typename Work>
std::vector<Partial> run_chunked(const McConfig &cfg, const Work &work)
{
    const unsigned nw = static_cast<unsigned>(
        std::min<std::uint64_t>(cfg.workers, cfg.trials));
    std::vector<Partial> partials(nw);

    const std::uint64_t base = cfg.trials / nw;
    const std::uint64_t extra = cfg.trials % nw;

    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        const std::uint64_t count = base + (w < extra ? 1 : 0);
        pool.emplace_back([&, w, count] { partials[w] = work(w, count); });
    }
    for (auto &t : pool)
        t.join();
    return partials;
}

// Round-robin over independent draw indices; slot outputs keep results
// invariant to the worker count.
template <typename Fn>
void run_draws(std::size_t draws, unsigned workers, const Fn &fn)
{
    const unsigned nw = static_cast<unsigned>(
        std::min<std::size_t>(workers ? workers : 1, draws));
    if (nw <= 1) {
        for (std::size_t j = 0; j < draws; ++j)
            fn(j);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t j = w; j < draws; j += nw)
                fn(j);
        });
    for (auto &t : pool)
        t.join();
}

} // namespace

GainMoments estimate_gain_moments(const UserChannelSpec &spec, const McConfig &cfg)
{
    check_mc(cfg);

    struct Partial {
        PowerSums p, q;
    };
    const auto partials = run_chunked<Partial>(cfg, [&](unsigned w, std::uint64_t count) {
        RngStream rng(cfg.seed, {stream_tag::gain, w});
        Partial acc;
        for (std::uint64_t t = 0; t < count; ++t) {
            const CVec h = sample_channel(spec, rng);
            const double p = norm_sq(h);
            acc.p.add(p);
            acc.q.add(p * p);
        }
        return acc;
    });

    PowerSums p, q;
    for (const Partial &part : partials) {
        p.merge(part.p);
        q.merge(part.q);
    }
    return {p.mean_estimate(), q.mean_estimate()};
}

McEstimate estimate_cross_moment(const UserChannelSpec &spec_k,
                                 const UserChannelSpec &spec_l, const McConfig &cfg)
{
    if (spec_k.m != spec_l.m)
        throw std::invalid_argument("estimate_cross_moment: antenna counts differ");
    check_mc(cfg);

    const auto partials = run_chunked<PowerSums>(cfg, [&](unsigned w, std::uint64_t count) {
        RngStream rng(cfg.seed, {stream_tag::cross, w});
        PowerSums acc;
        for (std::uint64_t t = 0; t < count; ++t) {
            const CVec hk = sample_channel(spec_k, rng);
            const CVec hl = sample_channel(spec_l, rng);
            acc.add(std::norm(dot(hk, hl)));
        }
        return acc;
    });

    PowerSums total;
    for (const PowerSums &part : partials)
        total.merge(part);
    return total.mean_estimate();
}

MomentValidation validate_moments(const UserChannelSpec &spec_k,
                                  const UserChannelSpec &spec_l, const McConfig &cfg)
{
    if (spec_k.m != spec_l.m)
        throw std::invalid_argument("validate_moments: antenna counts differ");
    check_mc(cfg);

    struct Partial {
        PowerSums p, q, c;
    };
    const auto partials = run_chunked<Partial>(cfg, [&](unsigned w, std::uint64_t count) {
        RngStream rng(cfg.seed, {stream_tag::validate, w});
        Partial acc;
        for (std::uint64_t t = 0; t < count; ++t) {
            const CVec hk = sample_channel(spec_k, rng);
            const CVec hl = sample_channel(spec_l, rng);
            const double p = norm_sq(hk);
            acc.p.add(p);
            acc.q.add(p * p);
            acc.c.add(std::norm(dot(hk, hl)));
        }
        return acc;
    });

    PowerSums p, q, c;
    for (const Partial &part : partials) {
        p.merge(part.p);
        q.merge(part.q);
        c.merge(part.c);
    }
    return {p.mean_estimate(), q.mean_estimate(), c.mean_estimate()};
}

SweepResult hardening_trace(const HardeningTraceConfig &cfg)
{
    if (cfg.m_values.empty())
        throw std::invalid_argument("hardening_trace: empty M list");
    if (cfg.scenarios.empty())
        throw std::invalid_argument("hardening_trace: empty scenario list");
    if (cfg.basis_draws == 0)
        throw std::invalid_argument("hardening_trace: basis_draws must be positive");
    check_mc(cfg.mc);

    double eta, gamma;
    if (std::isinf(cfg.k_factor)) {
        eta = 1.0;
        gamma = 0.0;
    } else if (cfg.k_factor >= 0.0) {
        eta = std::sqrt(cfg.k_factor / (cfg.k_factor + 1.0));
        gamma = std::sqrt(1.0 / (cfg.k_factor + 1.0));
    } else {
        throw std::invalid_argument("hardening_trace: k_factor must be >= 0");
    }

    const std::size_t ns = cfg.scenarios.size();
    const std::size_t nj = cfg.basis_draws;

    SweepResult result;
    result.axis = "m";
    for (int sc : cfg.scenarios) {
        const std::string base = "s" + std::to_string(sc);
        result.columns.push_back({base + "_closed", {}});
        result.columns.push_back({base + "_mc", {}});
        result.columns.push_back({base + "_mc_se", {}});
    }

    for (std::size_t m : cfg.m_values) {
        const double md = static_cast<double>(m);
        const CVec hbar = ula_steering(m, cfg.phi, cfg.spacing);

        std::vector<std::vector<double>> omegas, omega_sqrts;
        std::vector<double> sum_sq_omega(ns, 0.0);
        for (std::size_t s = 0; s < ns; ++s) {
            omegas.push_back(coupling_scenario(cfg.scenarios[s], m));
            std::vector<double> root(m);
            double ss = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                root[i] = std::sqrt(omegas[s][i]);
                ss += omegas[s][i] * omegas[s][i];
            }
            omega_sqrts.push_back(std::move(root));
            sum_sq_omega[s] = ss;
        }

        // per (draw, scenario) slots, reduced in draw order afterwards
        std::vector<double> closed(nj * ns), mc_var(nj * ns), mc_se(nj * ns);

        run_draws(nj, cfg.mc.workers, [&](std::size_t j) {
            RngStream basis_rng(cfg.mc.seed, {stream_tag::hardening_basis, m, j});
            const CMat u = haar_unitary(m, basis_rng);
            // every statistic of ||h||^2 only needs the rotated frame:
            // ||h||^2 = ||eta v + gamma (sqrt(omega) (.) z)||^2, v = U^H hbar
            const CVec v = adjoint_matvec(u, hbar);

            for (std::size_t s = 0; s < ns; ++s) {
                double wns = 0.0;
                for (std::size_t i = 0; i < m; ++i)
                    wns += omegas[s][i] * std::norm(v[i]);
                closed[j * ns + s] = gamma * gamma / (md * md)
                                     * (2.0 * eta * eta * wns
                                        + gamma * gamma * sum_sq_omega[s]);
            }

            RngStream trial_rng(cfg.mc.seed, {stream_tag::hardening_trials, m, j});
            std::vector<PowerSums> sums(ns);
            CVec z(m);
            for (std::uint64_t t = 0; t < cfg.mc.trials; ++t) {
                if (gamma != 0.0)
                    trial_rng.fill_complex_normal(z);
                for (std::size_t s = 0; s < ns; ++s) {
                    double p = 0.0;
                    if (gamma != 0.0) {
                        const std::vector<double> &root = omega_sqrts[s];
                        for (std::size_t i = 0; i < m; ++i)
                            p += std::norm(eta * v[i] + gamma * root[i] * z[i]);
                    } else {
                        p = norm_sq(v);
                    }
                    sums[s].add(p);
                }
            }
            for (std::size_t s = 0; s < ns; ++s) {
                mc_var[j * ns + s] = sums[s].variance();
                mc_se[j * ns + s] = sums[s].variance_se();
            }
        });

        result.axis_values.push_back(md);
        for (std::size_t s = 0; s < ns; ++s) {
            double acc_closed = 0.0, acc_var = 0.0, acc_se2 = 0.0;
            for (std::size_t j = 0; j < nj; ++j) {
                acc_closed += closed[j * ns + s];
                acc_var += mc_var[j * ns + s];
                acc_se2 += mc_se[j * ns + s] * mc_se[j * ns + s];
            }
            const double jn = static_cast<double>(nj);
            result.columns[3 * s].values.push_back(acc_closed / jn);
            result.columns[3 * s + 1].values.push_back(acc_var / jn / (md * md));
            result.columns[3 * s + 2].values.push_back(std::sqrt(acc_se2) / jn / (md * md));
        }
    }
    return result;
}

namespace {

UserChannelSpec instantiate(const ChannelTemplate &tpl, std::size_t m, const CMat &basis)
{
    return make_spec(m, tpl.k_factor, basis, coupling_scenario(tpl.scenario, m),
                     ula_steering(m, tpl.phi, tpl.spacing));
}

} // namespace

SweepResult fp_trace(const FpTraceConfig &cfg)
{
    if (cfg.m_values.empty())
        throw std::invalid_argument("fp_trace: empty M list");
    if (cfg.basis_draws == 0)
        throw std::invalid_argument("fp_trace: basis_draws must be positive");
    check_mc(cfg.mc);

    const std::size_t nj = cfg.basis_draws;

    SweepResult result;
    result.axis = "m";
    result.columns.push_back({"fp_closed", {}});
    result.columns.push_back({"fp_mc_msq", {}});
    result.columns.push_back({"fp_mc_msq_se", {}});
    result.columns.push_back({"fp_mc_mean_re", {}});
    result.columns.push_back({"fp_mc_mean_im", {}});

    for (std::size_t m : cfg.m_values) {
        const double md = static_cast<double>(m);

        std::vector<double> closed(nj), msq(nj), msq_se(nj), mean_re(nj), mean_im(nj);

        run_draws(nj, cfg.mc.workers, [&](std::size_t j) {
            RngStream basis_rng(cfg.mc.seed, {stream_tag::fp_basis, m, j});
            CMat u_k = (cfg.user_k.basis == BasisKind::haar) ? haar_unitary(m, basis_rng)
                                                             : CMat::identity(m);
            CMat u_l;
            if (cfg.share_basis)
                u_l = u_k;
            else
                u_l = (cfg.user_l.basis == BasisKind::haar) ? haar_unitary(m, basis_rng)
                                                            : CMat::identity(m);

            const UserChannelSpec spec_k = instantiate(cfg.user_k, m, u_k);
            const UserChannelSpec spec_l = instantiate(cfg.user_l, m, u_l);
            closed[j] = fp_variance(spec_k, spec_l).variance;

            RngStream trial_rng(cfg.mc.seed, {stream_tag::fp_trials, m, j});
            PowerSums sums_msq, sums_re, sums_im;
            for (std::uint64_t t = 0; t < cfg.mc.trials; ++t) {
                const CVec hk = sample_channel(spec_k, trial_rng);
                const CVec hl = sample_channel(spec_l, trial_rng);
                const Complex g = dot(hk, hl) / md;
                sums_msq.add(std::norm(g));
                sums_re.add(g.real());
                sums_im.add(g.imag());
            }
            msq[j] = sums_msq.mean();
            msq_se[j] = sums_msq.se_mean();
            mean_re[j] = sums_re.mean();
            mean_im[j] = sums_im.mean();
        });

        const double jn = static_cast<double>(nj);
        double acc_closed = 0.0, acc_msq = 0.0, acc_se2 = 0.0, acc_re = 0.0, acc_im = 0.0;
        for (std::size_t j = 0; j < nj; ++j) {
            acc_closed += closed[j];
            acc_msq += msq[j];
            acc_se2 += msq_se[j] * msq_se[j];
            acc_re += mean_re[j];
            acc_im += mean_im[j];
        }
        result.axis_values.push_back(md);
        result.columns[0].values.push_back(acc_closed / jn);
        result.columns[1].values.push_back(acc_msq / jn);
        result.columns[2].values.push_back(std::sqrt(acc_se2) / jn);
        result.columns[3].values.push_back(acc_re / jn);
        result.columns[4].values.push_back(acc_im / jn);
    }
    return result;
}

} // namespace wmimo
