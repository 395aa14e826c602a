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

#include "channel/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "core/quadrature.hpp"

namespace wmimo {

namespace {

constexpr double k_rescale_tol = 1e-6; // max relative slack before rejection

} // namespace

UserChannelSpec make_spec(std::size_t m, double k_factor, CMat u,
                          std::vector<double> omega, CVec hbar)
{
    if (m == 0)
        throw std::invalid_argument("make_spec: m must be positive");
    if (u.rows() != m || u.cols() != m || omega.size() != m || hbar.size() != m)
        throw std::invalid_argument("make_spec: dimension mismatch");
    if (std::isnan(k_factor) || k_factor < 0.0)
        throw std::invalid_argument("make_spec: k_factor must be >= 0");
    if (unitarity_defect(u) > 1e-10)
        throw std::invalid_argument("make_spec: eigenbasis is not unitary");

    const double md = static_cast<double>(m);

    double omega_sum = 0.0;
    for (double w : omega) {
        if (!(w >= 0.0))
            throw std::invalid_argument("make_spec: omega entries must be nonnegative");
        omega_sum += w;
    }
    if (!(std::abs(omega_sum - md) <= k_rescale_tol * md))
        throw std::invalid_argument("make_spec: sum(omega) must equal the antenna count");
    const double omega_scale = md / omega_sum;
    for (double &w : omega)
        w *= omega_scale;

    if (!all_finite(hbar))
        throw std::invalid_argument("make_spec: hbar has non-finite entries");
    const double hbar_nsq = norm_sq(hbar);
    if (!(std::abs(hbar_nsq - md) <= k_rescale_tol * md))
        throw std::invalid_argument("make_spec: ||hbar||^2 must equal the antenna count");
    const double hbar_scale = std::sqrt(md / hbar_nsq);
    for (Complex &x : hbar)
        x *= hbar_scale;

    UserChannelSpec spec;
    spec.m = m;
    spec.k_factor = k_factor;
    if (std::isinf(k_factor)) {
        spec.eta = 1.0;
        spec.gamma = 0.0;
    } else {
        spec.eta = std::sqrt(k_factor / (k_factor + 1.0));
        spec.gamma = std::sqrt(1.0 / (k_factor + 1.0));
    }
    spec.u = std::move(u);
    spec.omega = std::move(omega);
    spec.omega_sqrt.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        spec.omega_sqrt[i] = std::sqrt(spec.omega[i]);
    spec.hbar = std::move(hbar);
    spec.v = adjoint_matvec(spec.u, spec.hbar);
    return spec;
}

UserChannelSpec iid_spec(std::size_t m)
{
    return make_spec(m, 0.0, CMat::identity(m),
                     std::vector<double>(m, 1.0), CVec(m, Complex(1.0)));
}

UserChannelSpec random_spec(std::size_t m, double k_max, RngStream &rng)
{
    if (m == 0)
        throw std::invalid_argument("random_spec: m must be positive");
    if (!(k_max >= 0.0))
        throw std::invalid_argument("random_spec: k_max must be >= 0");

    const double k = k_max * rng.uniform01();
    CMat u = haar_unitary(m, rng);

    // Dirichlet(1,...,1) via normalized unit exponentials
    std::vector<double> omega(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        omega[i] = -std::log(1.0 - rng.uniform01());
        total += omega[i];
    }
    const double md = static_cast<double>(m);
    for (double &w : omega)
        w *= md / total;

    CVec hbar(m);
    rng.fill_complex_normal(hbar);
    const double scale = std::sqrt(md / norm_sq(hbar));
    for (Complex &x : hbar)
        x *= scale;

    return make_spec(m, k, std::move(u), std::move(omega), std::move(hbar));
}

CVec sample_channel(const UserChannelSpec &spec, RngStream &rng)
{
    if (spec.gamma == 0.0)
        return spec.hbar; // pure LoS, no randomness left

    CVec z(spec.m);
    rng.fill_complex_normal(z);
    for (std::size_t i = 0; i < spec.m; ++i)
        z[i] *= spec.omega_sqrt[i];
    CVec h = matvec(spec.u, z);
    for (std::size_t i = 0; i < spec.m; ++i)
        h[i] = spec.eta * spec.hbar[i] + spec.gamma * h[i];
    return h;
}

CovarianceMatrix build_covariance(const CMat &u, const std::vector<double> &omega)
{
    if (!u.square() || u.rows() != omega.size())
        throw std::invalid_argument("build_covariance: dimension mismatch");
    const std::size_t m = u.rows();
    const double md = static_cast<double>(m);
    if (unitarity_defect(u) > 1e-10)
        throw std::invalid_argument("build_covariance: basis is not unitary");

    double total = 0.0;
    for (double w : omega) {
        if (!(w >= 0.0))
            throw std::invalid_argument("build_covariance: negative omega entry");
        total += w;
    }
    if (!(std::abs(total - md) <= k_rescale_tol * md))
        throw std::invalid_argument("build_covariance: sum(omega) must equal the antenna count");
    const double scale = md / total;

    CovarianceMatrix cov;
    cov.q = CMat(m, m);
    // fill the upper triangle, mirror the rest: exactly Hermitian output
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                acc += (omega[k] * scale) * u(i, k) * std::conj(u(j, k));
            if (i == j) {
                cov.q(i, i) = Complex(acc.real());
            } else {
                cov.q(i, j) = acc;
                cov.q(j, i) = std::conj(acc);
            }
        }
    }
    cov.has_eig = true;
    cov.u = u;
    cov.omega = omega;
    for (double &w : cov.omega)
        w *= scale;
    return cov;
}

CovarianceMatrix with_eigendecomposition(const CMat &q)
{
    EigResult eig = hermitian_eig(q);
    CovarianceMatrix cov;
    cov.q = q;
    cov.has_eig = true;
    cov.u = std::move(eig.vectors);
    cov.omega = clip_psd_eigenvalues(eig.values);
    return cov;
}

CVec ula_steering(std::size_t m, double phi, double spacing)
{
    if (m == 0)
        throw std::invalid_argument("ula_steering: m must be positive");
    if (!(spacing > 0.0))
        throw std::invalid_argument("ula_steering: spacing must be positive");
    if (!std::isfinite(phi))
        throw std::invalid_argument("ula_steering: phi must be finite");

    const double step = 2.0 * M_PI * spacing * std::cos(phi);
    CVec h(m);
    for (std::size_t i = 0; i < m; ++i)
        h[i] = std::polar(1.0, step * static_cast<double>(i));
    return h;
}

std::vector<double> coupling_scenario(int id, std::size_t m)
{
    if (m < 2)
        throw std::invalid_argument("coupling_scenario: need m >= 2");
    const double md = static_cast<double>(m);
    std::vector<double> omega(m, 0.0);
    switch (id) {
    case 1:
        for (double &w : omega)
            w = 1.0;
        break;
    case 2:
        omega[0] = md / 2.0;
        for (std::size_t i = 1; i < m; ++i)
            omega[i] = md / (2.0 * md - 2.0);
        break;
    case 3:
        omega[0] = md;
        break;
    default:
        throw std::invalid_argument("coupling_scenario: id must be 1, 2 or 3");
    }
    return omega;
}

CovarianceMatrix one_ring_covariance(const OneRingConfig &cfg)
{
    if (cfg.m == 0)
        throw std::invalid_argument("one_ring_covariance: m must be positive");
    if (!(cfg.spread > 0.0) || cfg.spread > M_PI)
        throw std::invalid_argument("one_ring_covariance: spread must be in (0, pi]");
    if (!(cfg.spacing > 0.0))
        throw std::invalid_argument("one_ring_covariance: spacing must be positive");
    if (!std::isfinite(cfg.phi0))
        throw std::invalid_argument("one_ring_covariance: phi0 must be finite");

    const std::size_t m = cfg.m;
    const double lo = cfg.phi0 - cfg.spread;
    const double hi = cfg.phi0 + cfg.spread;
    const double inv_span = 1.0 / (2.0 * cfg.spread);

    // Toeplitz: one quadrature per antenna offset instead of per entry.
    // Panels shrink with the oscillation rate a = 2 pi d k so the 64-point
    // rule keeps full accuracy at large M*d (about 17 nodes per period).
    CVec first_row(m);
    first_row[0] = Complex(1.0); // integrand is 1 on the diagonal
    for (std::size_t k = 1; k < m; ++k) {
        const double a = 2.0 * M_PI * cfg.spacing * static_cast<double>(k);
        const double panel = std::min(M_PI / 8.0, 24.0 / a);
        const Complex val = integrate(
            [a](double phi) { return std::polar(1.0, -a * std::sin(phi)); },
            lo, hi, panel);
        first_row[k] = inv_span * val;
    }

    CovarianceMatrix cov;
    cov.q = CMat(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j)
                cov.q(i, j) = Complex(1.0);
            else if (j > i)
                cov.q(i, j) = first_row[j - i];
            else
                cov.q(i, j) = std::conj(first_row[i - j]);
        }
    return cov;
}

CMat block_covariance_scenario(int id, std::size_t m, std::size_t d_rank)
{
    if (m < 2)
        throw std::invalid_argument("block_covariance_scenario: need m >= 2");
    if (d_rank < 1 || d_rank > m - 1)
        throw std::invalid_argument("block_covariance_scenario: d_rank out of range");

    CMat q(m, m);
    if (id == 1) {
        const std::size_t head = m - d_rank;
        for (std::size_t i = 0; i < head; ++i)
            for (std::size_t j = 0; j < head; ++j)
                q(i, j) = Complex(1.0);
        for (std::size_t i = head; i < m; ++i)
            q(i, i) = Complex(1.0);
    } else if (id == 2) {
        const std::size_t width = m - d_rank;
        for (std::size_t i = 0; i < d_rank; ++i)
            for (std::size_t j = 0; j < width; ++j)
                q(i, j) = Complex(1.0);
        for (std::size_t i = 0; i < width; ++i)
            q(d_rank + i, d_rank + i) = Complex(1.0);
    } else {
        throw std::invalid_argument("block_covariance_scenario: id must be 1 or 2");
    }
    return q;
}

} // namespace wmimo
