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

#ifndef WMIMO_CHANNEL_CHANNEL_HPP
#define WMIMO_CHANNEL_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace wmimo {

/// Per-user Weichselberger parameters.  A user channel is
///   h = eta * hbar + gamma * U (sqrt(omega) (.) z),   z iid CN(0,1),
/// with eta = sqrt(K/(K+1)), gamma = sqrt(1/(K+1)).  Model constraints:
/// sum(omega) = M and ||hbar||^2 = M.
struct UserChannelSpec {
    std::size_t m = 0;
    double k_factor = 0.0; // Ricean K, linear scale; +inf means pure LoS
    double eta = 0.0;
    double gamma = 1.0;
    CMat u;                          // unitary eigenbasis, M x M
    std::vector<double> omega;       // coupling vector, nonnegative, sums to M
    std::vector<double> omega_sqrt;  // cached entrywise sqrt
    CVec hbar;                       // LoS response, ||hbar||^2 = M
    CVec v;                          // cached u^H hbar
};

/// Validating constructor.  Inputs with sum(omega) or ||hbar||^2 off by at
/// most 1e-6 relative are rescaled to satisfy the constraints exactly;
/// larger deviations, negative omega entries, or a non-unitary u are
/// rejected with std::invalid_argument.  k_factor must be >= 0 (inf ok).
UserChannelSpec make_spec(std::size_t m, double k_factor, CMat u,
                          std::vector<double> omega, CVec hbar);

/// i.i.d. Rayleigh special case: K=0, U=I, omega all ones, hbar all ones.
UserChannelSpec iid_spec(std::size_t m);

/// Random spec for validation studies: K uniform on [0, k_max], Haar U,
/// omega Dirichlet-distributed and scaled to sum M, hbar a random complex
/// direction scaled to squared norm M.
UserChannelSpec random_spec(std::size_t m, double k_max, RngStream &rng);

/// One draw of the channel vector.
CVec sample_channel(const UserChannelSpec &spec, RngStream &rng);

/// Hermitian PSD covariance with optional cached eigendecomposition.
struct CovarianceMatrix {
    CMat q;
    bool has_eig = false;
    CMat u;                    // eigenvectors when has_eig
    std::vector<double> omega; // eigenvalues (descending) when has_eig
};

/// Q = U diag(omega) U^H, exactly Hermitian by construction.
CovarianceMatrix build_covariance(const CMat &u, const std::vector<double> &omega);

/// Wrap an explicit Hermitian matrix and attach its eigendecomposition;
/// slightly negative eigenvalues are clipped per the PSD rule.
CovarianceMatrix with_eigendecomposition(const CMat &q);

/// ULA response: entry i = exp(j 2 pi d i cos(phi)), i = 0..m-1.
CVec ula_steering(std::size_t m, double phi, double spacing);

/// Coupling vectors from the three reference scenarios (each sums to M):
///   1: [1, 1, ..., 1]
///   2: [M/2, M/(2M-2), ..., M/(2M-2)]
///   3: [M, 0, ..., 0]
std::vector<double> coupling_scenario(int id, std::size_t m);

struct OneRingConfig {
    std::size_t m = 0;
    double spread = 0.0;  // azimuth half-spread, radians, 0 < spread <= pi
    double phi0 = 0.0;    // nominal direction of arrival, radians
    double spacing = 0.0; // antenna spacing in carrier wavelengths, > 0
};

/// One-ring covariance: [Q]_{ij} = (1/2 spread) * integral of
/// exp(-j 2 pi d (j-i) sin(phi)) over [phi0 - spread, phi0 + spread].
/// The matrix is Toeplitz and Hermitian with unit diagonal.
CovarianceMatrix one_ring_covariance(const OneRingConfig &cfg);

/// Block test matrices for the interference study, built literally:
///   1: blockdiag(ones(M-D x M-D), I_D)             (Hermitian PSD)
///   2: [[ones(D x M-D), 0], [0, I_{M-D}]]          (not Hermitian)
/// Scenario 2 is only meaningful inside a trace product; it is returned
/// as a plain matrix, not a CovarianceMatrix.
CMat block_covariance_scenario(int id, std::size_t m, std::size_t d_rank);

} // namespace wmimo

#endif
