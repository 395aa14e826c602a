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

#ifndef WMIMO_CORE_TYPES_HPP
#define WMIMO_CORE_TYPES_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace wmimo {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Dense row-major complex matrix.  The workhorse container for eigenbases,
/// covariance matrices and cross-coupling matrices.
class CMat {
  public:
    CMat() : rows_(0), cols_(0) {}
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

    static CMat identity(std::size_t n);
    static CMat ones(std::size_t n); // all-ones n x n

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex *row(std::size_t i) { return data_.data() + i * cols_; }
    const Complex *row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<Complex> &data() const { return data_; }
    std::vector<Complex> &data() { return data_; }

    double max_abs() const;      // max_ij |a_ij|
    Complex trace() const;       // square matrices only
    bool all_finite() const;

    // max_ij |a_ij - conj(a_ji)| <= tol_factor * max|a|
    bool is_hermitian(double tol_factor = 1e-12) const;

  private:
    std::size_t rows_, cols_;
    std::vector<Complex> data_;
};

bool all_finite(const CVec &v);
double norm_sq(const CVec &v);                 // sum |v_i|^2
Complex dot(const CVec &a, const CVec &b);     // a^H b

} // namespace wmimo

#endif
