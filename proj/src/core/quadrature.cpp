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

#include "core/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "core/errors.hpp"

namespace wmimo {

namespace {

GaussRule build_rule(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("gauss_legendre: n must be positive");

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Tricomi-style initial guess, then Newton on P_n
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75)
                            / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * static_cast<double>(k) - 1.0) * x * p1
                                   - (static_cast<double>(k) - 1.0) * p0)
                                  / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            pp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace

const GaussRule &gauss_legendre(std::size_t n)
{
    static std::mutex mu;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

Complex integrate(const std::function<Complex(double)> &f, double lo, double hi,
                  double max_panel)
{
    if (!(lo < hi))
        throw std::invalid_argument("integrate: require lo < hi");
    if (!(max_panel > 0.0))
        throw std::invalid_argument("integrate: require max_panel > 0");

    const GaussRule &rule = gauss_legendre(64);
    const double span = hi - lo;
    const std::size_t panels =
        static_cast<std::size_t>(std::ceil(span / max_panel));
    const double width = span / static_cast<double>(panels);

    Complex total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = lo + width * static_cast<double>(p);
        const double mid = a + 0.5 * width;
        const double halfw = 0.5 * width;
        Complex acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const Complex fx = f(mid + halfw * rule.nodes[i]);
            if (!std::isfinite(fx.real()) || !std::isfinite(fx.imag()))
                throw numeric_error("integrate: integrand returned a non-finite value");
            acc += rule.weights[i] * fx;
        }
        total += halfw * acc;
    }
    return total;
}

} // namespace wmimo
