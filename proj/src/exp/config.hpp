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

#ifndef WMIMO_EXP_CONFIG_HPP
#define WMIMO_EXP_CONFIG_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace wmimo {

/// One experiment invocation, fully parameterized.  Only the fields that
/// belong to the named experiment are meaningful; the rest stay at their
/// zero state and never appear in the canonical echo.
struct ExperimentConfig {
    std::string experiment;
    std::vector<std::size_t> m;
    std::vector<std::size_t> d_rank;
    double k_factor = 0.0;
    double k_max = 0.0;
    double phi = 0.0;
    std::array<double, 2> phi0{{0.0, 0.0}};
    double spacing = 0.5;
    std::vector<double> spread1_deg;
    std::vector<double> spread2_deg;
    std::vector<int> scenarios;
    std::size_t specs = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    unsigned workers = 0; // 0 = pick at run time
    std::size_t basis_draws = 0;
    std::string out;
};

const std::vector<std::string> &experiment_ids();

/// Complete built-in defaults for one experiment.  Throws config_error on
/// an unknown id.
ExperimentConfig default_config(const std::string &experiment);

/// Assign one field from a JSON value.  Rejects keys that the experiment
/// does not use, and values of the wrong type or range (config_error).
void set_field(ExperimentConfig &cfg, const std::string &key, const nlohmann::json &value);

/// Cross-field validation; throws config_error with the failing field.
void validate(const ExperimentConfig &cfg);

/// Parse a JSON config document.  The document must carry an "experiment"
/// field unless the caller supplies the id; when both exist they must
/// agree.  Unlisted fields keep their defaults.
ExperimentConfig parse_config(const std::string &json_text);
ExperimentConfig parse_config(const std::string &json_text, const std::string &experiment);

/// Canonical single-line JSON echo: fixed key order, only the fields the
/// experiment uses, infinite k_factor spelled "inf".  Parsing the echo
/// reproduces the identical config.
std::string canonical_json(const ExperimentConfig &cfg);

/// 0 resolves to the hardware thread count (at least 1).
unsigned resolve_workers(unsigned configured);

} // namespace wmimo

#endif
