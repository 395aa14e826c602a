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

#ifndef WMIMO_CORE_LINALG_HPP
#define WMIMO_CORE_LINALG_HPP

#include <vector>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace wmimo {

/// Element-wise (Hadamard) product of two equal-length vectors.
CVec hadamard(const CVec &a, const CVec &b);

/// tr(a * b) without forming the product: sum_ij a_ij * b_ji, O(M^2).
Complex trace_product(const CMat &a, const CMat &b);

CVec matvec(const CMat &a, const CVec &x);            // a * x
CVec adjoint_matvec(const CMat &a, const CVec &x);    // a^H * x
CMat matmul(const CMat &a, const CMat &b);            // a * b
CMat adjoint_times(const CMat &a, const CMat &b);     // a^H * b
CMat adjoint(const CMat &a);

/// max_ij |(u^H u - I)_ij|; 0 for an exactly unitary matrix.
double unitarity_defect(const CMat &u);

/// Haar-distributed m x m unitary matrix.  QR of an i.i.d. standard complex
/// Gaussian matrix, with each column phase-corrected by conj(R_ii)/|R_ii| so
/// the result carries the rotation-invariant measure.
CMat haar_unitary(std::size_t m, RngStream &rng);

struct EigResult {
    CMat vectors;               // columns are eigenvectors
    std::vector<double> values; // sorted descending
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// q must satisfy the Hermitian check (tolerance 1e-12 * max|q|).
/// Reconstruction residual is within 1e-9 * max|q| per entry.
EigResult hermitian_eig(const CMat &q);

/// PSD guard for eigenvalues of a nominally PSD matrix: negatives no worse
/// than -1e-10 * lambda_max are clipped to zero, anything below throws
/// numeric_error.  Returns the clipped list (order preserved).
std::vector<double> clip_psd_eigenvalues(const std::vector<double> &values);

} // namespace wmimo

#endif
