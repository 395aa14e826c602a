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

#ifndef WMIMO_CORE_QUADRATURE_HPP
#define WMIMO_CORE_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "core/types.hpp"

namespace wmimo {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights; // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1].  Nodes found by Newton iteration
/// on the Legendre recurrence; the 64-point rule is cached.
const GaussRule &gauss_legendre(std::size_t n);

/// Integrate f over [lo, hi] with the 64-point rule applied per panel.
/// The interval is split into equal panels no wider than max_panel.
/// Throws std::invalid_argument for an empty or reversed interval and
/// numeric_error if the integrand returns a non-finite sample.
Complex integrate(const std::function<Complex(double)> &f, double lo, double hi,
                  double max_panel);

} // namespace wmimo

#endif
