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

#ifndef WMIMO_CORE_RNG_HPP
#define WMIMO_CORE_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "core/types.hpp"

namespace wmimo {

// Fixed tags keeping sub-stream derivations from different estimators
// disjoint.  Never reuse a value.
namespace stream_tag {
inline constexpr std::uint64_t gain = 0x10;
inline constexpr std::uint64_t cross = 0x11;
inline constexpr std::uint64_t validate = 0x12;
inline constexpr std::uint64_t hardening_basis = 0x20;
inline constexpr std::uint64_t hardening_trials = 0x21;
inline constexpr std::uint64_t fp_basis = 0x22;
inline constexpr std::uint64_t fp_trials = 0x23;
inline constexpr std::uint64_t spec_draw = 0x30;
inline constexpr std::uint64_t scaling_basis = 0x31;
} // namespace stream_tag

// splitmix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t mix64(std::uint64_t z);

// Seed for sub-stream `ids` of the root `seed`.  Folding is order-sensitive,
// so (seed, {a,b}) and (seed, {b,a}) are distinct streams.
std::uint64_t substream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids);

/// Deterministic random stream: a mersenne-twister engine plus portable
/// uniform/normal transforms (the distributions in <random> are not
/// bit-reproducible across standard libraries, these are).
///
/// A stream is single-owner: never share one instance across threads.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : eng_(substream_seed(seed, {stream})) {}
    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids)
        : eng_(substream_seed(seed, ids)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard real normal, Marsaglia polar method.
    double normal();

    /// CN(0,1): two independent real normals scaled by 1/sqrt(2).
    Complex complex_normal()
    {
        constexpr double inv_sqrt2 = 0.7071067811865475244;
        const double re = normal();
        const double im = normal();
        return Complex(re * inv_sqrt2, im * inv_sqrt2);
    }

    void fill_complex_normal(CVec &out)
    {
        for (auto &x : out)
            x = complex_normal();
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace wmimo

#endif
