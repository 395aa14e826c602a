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

#include "core/types.hpp"

#include <cmath>
#include <stdexcept>

namespace wmimo {

CMat CMat::identity(std::size_t n)
{
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Complex(1.0, 0.0);
    return m;
}

CMat CMat::ones(std::size_t n)
{
    CMat m(n, n);
    for (auto &x : m.data())
        x = Complex(1.0, 0.0);
    return m;
}

double CMat::max_abs() const
{
    double mx = 0.0;
    for (const auto &x : data_)
        mx = std::max(mx, std::abs(x));
    return mx;
}

Complex CMat::trace() const
{
    if (!square())
        throw std::invalid_argument("trace requires a square matrix");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        t += (*this)(i, i);
    return t;
}

bool CMat::all_finite() const
{
    for (const auto &x : data_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            return false;
    return true;
}

bool CMat::is_hermitian(double tol_factor) const
{
    if (!square())
        return false;
    const double tol = tol_factor * max_abs();
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
                return false;
    return true;
}

bool all_finite(const CVec &v)
{
    for (const auto &x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            return false;
    return true;
}

double norm_sq(const CVec &v)
{
    double s = 0.0;
    for (const auto &x : v)
        s += x.real() * x.real() + x.imag() * x.imag();
    return s;
}

Complex dot(const CVec &a, const CVec &b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace wmimo
