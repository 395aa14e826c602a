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

#include "exp/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include "core/errors.hpp"

namespace wmimo {

using nlohmann::json;

namespace {

constexpr double pi = 3.14159265358979323846;

[[noreturn]] void bad(const std::string &msg) { throw config_error("config: " + msg); }

bool uses_key(const std::string &exp, const std::string &key)
{
    static const std::set<std::string> common = {"experiment", "seed", "workers", "out"};
    if (common.count(key))
        return true;
    static const std::set<std::string> hardening = {"m",         "k_factor", "phi",
                                                    "spacing",   "scenarios", "trials",
                                                    "basis_draws"};
    static const std::set<std::string> block = {"m", "d_rank", "scenarios"};
    static const std::set<std::string> one_ring = {"m", "phi0", "spacing", "spread1_deg",
                                                   "spread2_deg"};
    static const std::set<std::string> validate_keys = {"m", "specs", "k_max", "trials"};
    static const std::set<std::string> scaling = {"m", "scenarios", "phi", "spacing"};
    if (exp == "hardening")
        return hardening.count(key) != 0;
    if (exp == "block-interference")
        return block.count(key) != 0;
    if (exp == "one-ring-interference")
        return one_ring.count(key) != 0;
    if (exp == "moment-validate")
        return validate_keys.count(key) != 0;
    if (exp == "scaling-diagnostic")
        return scaling.count(key) != 0;
    return false;
}

std::uint64_t as_u64(const json &v, const std::string &key)
{
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    bad("'" + key + "' must be a non-negative integer");
}

double as_real(const json &v, const std::string &key)
{
    if (!v.is_number())
        bad("'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        bad("'" + key + "' must be finite");
    return x;
}

std::vector<std::size_t> as_size_list(const json &v, const std::string &key,
                                      std::size_t min_value)
{
    if (!v.is_array() || v.empty())
        bad("'" + key + "' must be a non-empty array");
    std::vector<std::size_t> out;
    out.reserve(v.size());
    for (const auto &e : v) {
        const std::uint64_t x = as_u64(e, key);
        if (x < min_value)
            bad("'" + key + "' entries must be >= " + std::to_string(min_value));
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

std::vector<double> as_real_list(const json &v, const std::string &key)
{
    if (!v.is_array() || v.empty())
        bad("'" + key + "' must be a non-empty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto &e : v)
        out.push_back(as_real(e, key));
    return out;
}

std::vector<int> as_scenario_list(const json &v)
{
    if (!v.is_array() || v.empty())
        bad("'scenarios' must be a non-empty array");
    std::vector<int> out;
    for (const auto &e : v) {
        const std::uint64_t x = as_u64(e, "scenarios");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

} // namespace

const std::vector<std::string> &experiment_ids()
{
    static const std::vector<std::string> ids = {"hardening", "block-interference",
                                                 "one-ring-interference", "moment-validate",
                                                 "scaling-diagnostic"};
    return ids;
}

ExperimentConfig default_config(const std::string &experiment)
{
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    cfg.seed = 1;
    cfg.workers = 0;
    if (experiment == "hardening") {
        cfg.m = {16, 32, 64, 128, 256, 512};
        cfg.k_factor = 0.5;
        cfg.phi = pi / 3.0;
        cfg.spacing = 0.5;
        cfg.scenarios = {1, 2, 3};
        cfg.trials = 20000;
        cfg.basis_draws = 32;
        cfg.out = "hardening.csv";
    } else if (experiment == "block-interference") {
        cfg.m = {100};
        cfg.d_rank.resize(99);
        std::iota(cfg.d_rank.begin(), cfg.d_rank.end(), std::size_t{1});
        cfg.scenarios = {1, 2};
        cfg.out = "block_interference.csv";
    } else if (experiment == "one-ring-interference") {
        cfg.m = {100};
        cfg.phi0 = {pi / 4.0, 3.0 * pi / 4.0};
        cfg.spacing = 0.5;
        cfg.spread1_deg = {1.0, 5.0, 10.0, 20.0, 40.0};
        cfg.spread2_deg.resize(60);
        std::iota(cfg.spread2_deg.begin(), cfg.spread2_deg.end(), 1.0);
        cfg.out = "one_ring_interference.csv";
    } else if (experiment == "moment-validate") {
        cfg.m = {16};
        cfg.specs = 50;
        cfg.k_max = 10.0;
        cfg.trials = 1000000;
        cfg.out = "moment_validate.csv";
    } else if (experiment == "scaling-diagnostic") {
        cfg.m = {32, 64, 128, 256, 512};
        cfg.scenarios = {1, 2, 3};
        cfg.phi = pi / 3.0;
        cfg.spacing = 0.5;
        cfg.out = "scaling_diagnostic.csv";
    } else {
        bad("unknown experiment '" + experiment
            + "' (expected hardening, block-interference, one-ring-interference, "
              "moment-validate or scaling-diagnostic)");
    }
    return cfg;
}

void set_field(ExperimentConfig &cfg, const std::string &key, const json &value)
{
    if (!uses_key(cfg.experiment, key))
        bad("key '" + key + "' is not used by experiment '" + cfg.experiment + "'");

    if (key == "experiment") {
        if (!value.is_string() || value.get<std::string>() != cfg.experiment)
            bad("'experiment' cannot be reassigned (have '" + cfg.experiment + "')");
    } else if (key == "m") {
        cfg.m = as_size_list(value, key, 2);
    } else if (key == "d_rank") {
        cfg.d_rank = as_size_list(value, key, 1);
    } else if (key == "k_factor") {
        if (value.is_string()) {
            if (value.get<std::string>() != "inf")
                bad("'k_factor' string form must be \"inf\"");
            cfg.k_factor = std::numeric_limits<double>::infinity();
        } else {
            const double k = as_real(value, key);
            if (k < 0.0)
                bad("'k_factor' must be >= 0");
            cfg.k_factor = k;
        }
    } else if (key == "k_max") {
        const double k = as_real(value, key);
        if (k < 0.0)
            bad("'k_max' must be >= 0");
        cfg.k_max = k;
    } else if (key == "phi") {
        cfg.phi = as_real(value, key);
    } else if (key == "phi0") {
        const auto list = as_real_list(value, key);
        if (list.size() != 2)
            bad("'phi0' must hold exactly two angles (radians)");
        cfg.phi0 = {list[0], list[1]};
    } else if (key == "spacing") {
        const double d = as_real(value, key);
        if (d <= 0.0)
            bad("'spacing' must be positive");
        cfg.spacing = d;
    } else if (key == "spread1_deg" || key == "spread2_deg") {
        auto list = as_real_list(value, key);
        for (double s : list)
            if (s <= 0.0 || s > 180.0)
                bad("'" + key + "' entries must lie in (0, 180] degrees");
        (key == "spread1_deg" ? cfg.spread1_deg : cfg.spread2_deg) = std::move(list);
    } else if (key == "scenarios") {
        cfg.scenarios = as_scenario_list(value);
    } else if (key == "specs") {
        const std::uint64_t n = as_u64(value, key);
        if (n == 0)
            bad("'specs' must be positive");
        cfg.specs = static_cast<std::size_t>(n);
    } else if (key == "trials") {
        const std::uint64_t n = as_u64(value, key);
        if (n == 0)
            bad("'trials' must be positive");
        cfg.trials = n;
    } else if (key == "seed") {
        cfg.seed = as_u64(value, key);
    } else if (key == "workers") {
        const std::uint64_t n = as_u64(value, key);
        if (n > 4096)
            bad("'workers' is implausibly large");
        cfg.workers = static_cast<unsigned>(n);
    } else if (key == "basis_draws") {
        const std::uint64_t n = as_u64(value, key);
        if (n == 0)
            bad("'basis_draws' must be positive");
        cfg.basis_draws = static_cast<std::size_t>(n);
    } else if (key == "out") {
        if (!value.is_string() || value.get<std::string>().empty())
            bad("'out' must be a non-empty path");
        cfg.out = value.get<std::string>();
    } else {
        bad("key '" + key + "' is not recognized");
    }
}

void validate(const ExperimentConfig &cfg)
{
    const std::string &e = cfg.experiment;
    if (std::find(experiment_ids().begin(), experiment_ids().end(), e)
        == experiment_ids().end())
        bad("unknown experiment '" + e + "'");

    if (cfg.m.empty())
        bad("'m' is empty");
    for (std::size_t m : cfg.m)
        if (m < 2)
            bad("'m' entries must be >= 2");
    if (cfg.out.empty())
        bad("'out' is empty");

    const bool single_m = (e == "block-interference" || e == "one-ring-interference"
                           || e == "moment-validate");
    if (single_m && cfg.m.size() != 1)
        bad("experiment '" + e + "' takes exactly one antenna count");

    if (!cfg.scenarios.empty()) {
        std::set<int> seen;
        const int top = (e == "block-interference") ? 2 : 3;
        for (int s : cfg.scenarios) {
            if (s < 1 || s > top)
                bad("'scenarios' entries must lie in 1.." + std::to_string(top));
            if (!seen.insert(s).second)
                bad("'scenarios' has duplicates");
        }
    }

    if (e == "hardening") {
        if (cfg.scenarios.empty())
            bad("'scenarios' is empty");
        if (cfg.trials == 0)
            bad("'trials' must be positive");
        if (cfg.basis_draws == 0)
            bad("'basis_draws' must be positive");
        if (!(cfg.k_factor >= 0.0))
            bad("'k_factor' must be >= 0");
        if (cfg.spacing <= 0.0)
            bad("'spacing' must be positive");
    } else if (e == "block-interference") {
        if (cfg.scenarios.empty())
            bad("'scenarios' is empty");
        if (cfg.d_rank.empty())
            bad("'d_rank' is empty");
        for (std::size_t d : cfg.d_rank)
            if (d < 1 || d >= cfg.m[0])
                bad("'d_rank' entries must lie in [1, m-1]");
    } else if (e == "one-ring-interference") {
        if (cfg.spread1_deg.empty() || cfg.spread2_deg.empty())
            bad("spread lists must be non-empty");
        if (cfg.spacing <= 0.0)
            bad("'spacing' must be positive");
        for (double s : cfg.spread1_deg)
            if (s <= 0.0 || s > 180.0)
                bad("'spread1_deg' entries must lie in (0, 180]");
        for (double s : cfg.spread2_deg)
            if (s <= 0.0 || s > 180.0)
                bad("'spread2_deg' entries must lie in (0, 180]");
    } else if (e == "moment-validate") {
        if (cfg.specs == 0)
            bad("'specs' must be positive");
        if (cfg.trials == 0)
            bad("'trials' must be positive");
        if (cfg.k_max < 0.0 || !std::isfinite(cfg.k_max))
            bad("'k_max' must be finite and >= 0");
    } else if (e == "scaling-diagnostic") {
        if (cfg.scenarios.empty())
            bad("'scenarios' is empty");
        if (cfg.m.size() < 3)
            bad("scaling needs at least three antenna counts");
        const auto [lo, hi] = std::minmax_element(cfg.m.begin(), cfg.m.end());
        if (*hi < 10 * *lo)
            bad("scaling antenna counts must span at least a decade");
        if (cfg.spacing <= 0.0)
            bad("'spacing' must be positive");
    }
}

ExperimentConfig parse_config(const std::string &json_text)
{
    return parse_config(json_text, std::string());
}

ExperimentConfig parse_config(const std::string &json_text, const std::string &experiment)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &err) {
        bad(std::string("invalid JSON: ") + err.what());
    }
    if (!doc.is_object())
        bad("config root must be a JSON object");

    std::string id = experiment;
    if (doc.contains("experiment")) {
        const json &e = doc.at("experiment");
        if (!e.is_string())
            bad("'experiment' must be a string");
        const std::string file_id = e.get<std::string>();
        if (!id.empty() && file_id != id)
            bad("config names experiment '" + file_id + "' but '" + id + "' was requested");
        id = file_id;
    }
    if (id.empty())
        bad("config carries no 'experiment' field");

    ExperimentConfig cfg = default_config(id);
    for (const auto &item : doc.items()) {
        if (item.key() == "experiment")
            continue;
        set_field(cfg, item.key(), item.value());
    }
    validate(cfg);
    return cfg;
}

std::string canonical_json(const ExperimentConfig &cfg)
{
    nlohmann::ordered_json j;
    const std::string &e = cfg.experiment;
    j["experiment"] = e;
    j["m"] = cfg.m;
    if (uses_key(e, "d_rank"))
        j["d_rank"] = cfg.d_rank;
    if (uses_key(e, "k_factor")) {
        if (std::isinf(cfg.k_factor))
            j["k_factor"] = "inf";
        else
            j["k_factor"] = cfg.k_factor;
    }
    if (uses_key(e, "k_max"))
        j["k_max"] = cfg.k_max;
    if (uses_key(e, "phi"))
        j["phi"] = cfg.phi;
    if (uses_key(e, "phi0"))
        j["phi0"] = cfg.phi0;
    if (uses_key(e, "spacing"))
        j["spacing"] = cfg.spacing;
    if (uses_key(e, "spread1_deg"))
        j["spread1_deg"] = cfg.spread1_deg;
    if (uses_key(e, "spread2_deg"))
        j["spread2_deg"] = cfg.spread2_deg;
    if (uses_key(e, "scenarios"))
        j["scenarios"] = cfg.scenarios;
    if (uses_key(e, "specs"))
        j["specs"] = cfg.specs;
    if (uses_key(e, "trials"))
        j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    if (uses_key(e, "basis_draws"))
        j["basis_draws"] = cfg.basis_draws;
    j["out"] = cfg.out;
    return j.dump();
}

unsigned resolve_workers(unsigned configured)
{
    if (configured != 0)
        return configured;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

} // namespace wmimo
