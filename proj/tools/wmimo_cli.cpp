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
//
// Experiment runner on top of the wmimo C API.
//
//   wmimo run <experiment> [flags]    compute a sweep and write its CSV
//   wmimo validate-config FILE        parse a config file, echo canonical form
//
// Exit codes: 0 success, 2 config or usage error, 3 numerical failure,
// 4 output I/O error.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wmimo/wmimo.h"

namespace {

int code_of(wm_status status)
{
    switch (status) {
    case WM_OK:
        return 0;
    case WM_E_NUMERIC:
        return 3;
    case WM_E_IO:
        return 4;
    default:
        return 2; // config errors and argument misuse
    }
}

int complain(wm_status status)
{
    std::cerr << "error: " << wm_last_error() << "\n";
    return code_of(status);
}

int usage_error(const std::string &msg)
{
    std::cerr << "error: " << msg << "\n";
    return 2;
}

bool read_file(const std::string &path, std::string &out)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        return false;
    out = buf.str();
    return true;
}

bool parse_u64(const std::string &text, std::uint64_t &out)
{
    if (text.empty())
        return false;
    errno = 0;
    char *end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end != text.c_str() + text.size() || text[0] == '-')
        return false;
    out = v;
    return true;
}

bool parse_real(const std::string &text, double &out)
{
    if (text.empty())
        return false;
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (errno != 0 || end != text.c_str() + text.size())
        return false;
    out = v;
    return true;
}

std::vector<std::string> split_commas(const std::string &text)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        parts.push_back(cur);
    if (!text.empty() && text.back() == ',')
        parts.push_back("");
    return parts;
}

// comma list -> JSON array fragment; empty string on malformed input
std::string int_list_fragment(const std::string &text)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string &tok : split_commas(text)) {
        std::uint64_t v = 0;
        if (!parse_u64(tok, v))
            return "";
        arr.push_back(v);
    }
    if (arr.empty())
        return "";
    return arr.dump();
}

std::string real_list_fragment(const std::string &text)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string &tok : split_commas(text)) {
        double v = 0.0;
        if (!parse_real(tok, v))
            return "";
        arr.push_back(v);
    }
    if (arr.empty())
        return "";
    return arr.dump();
}

struct ConfigDeleter {
    void operator()(wm_config *p) const { wm_config_free(p); }
};
struct ResultDeleter {
    void operator()(wm_result *p) const { wm_result_free(p); }
};
struct StringDeleter {
    void operator()(char *p) const { wm_string_free(p); }
};
using ConfigPtr = std::unique_ptr<wm_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<wm_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct RunFlags {
    std::string experiment;
    std::string config_path;
    std::string m, d_rank, k_factor, phi, spacing;
    std::string spread1, spread2;
    std::string trials, seed, workers, basis_draws, out;
};

int apply_set(wm_config *cfg, const char *key, const std::string &fragment)
{
    const wm_status rc = wm_config_set(cfg, key, fragment.c_str());
    if (rc != WM_OK)
        return complain(rc);
    return 0;
}

int run_command(const RunFlags &flags, const CLI::App &cmd)
{
    ConfigPtr cfg;
    {
        wm_config *raw = nullptr;
        wm_status rc;
        if (cmd.count("--config") > 0) {
            std::string text;
            if (!read_file(flags.config_path, text))
                return usage_error("cannot read config file '" + flags.config_path + "'");
            rc = wm_config_parse(text.c_str(), flags.experiment.c_str(), &raw);
        } else {
            rc = wm_config_default(flags.experiment.c_str(), &raw);
        }
        if (rc != WM_OK)
            return complain(rc);
        cfg.reset(raw);
    }

    // flag overrides, each routed through the same field validation
    if (cmd.count("--m") > 0) {
        const std::string frag = int_list_fragment(flags.m);
        if (frag.empty())
            return usage_error("--m expects a comma-separated list of integers");
        if (int rc = apply_set(cfg.get(), "m", frag))
            return rc;
    }
    if (cmd.count("--d-rank") > 0) {
        const std::string frag = int_list_fragment(flags.d_rank);
        if (frag.empty())
            return usage_error("--d-rank expects a comma-separated list of integers");
        if (int rc = apply_set(cfg.get(), "d_rank", frag))
            return rc;
    }
    if (cmd.count("--k-factor") > 0) {
        std::string frag;
        double v = 0.0;
        if (flags.k_factor == "inf")
            frag = "\"inf\"";
        else if (parse_real(flags.k_factor, v))
            frag = nlohmann::json(v).dump();
        else
            return usage_error("--k-factor expects a number or 'inf'");
        if (int rc = apply_set(cfg.get(), "k_factor", frag))
            return rc;
    }
    if (cmd.count("--phi") > 0) {
        double v = 0.0;
        if (!parse_real(flags.phi, v))
            return usage_error("--phi expects a number (radians)");
        if (int rc = apply_set(cfg.get(), "phi", nlohmann::json(v).dump()))
            return rc;
    }
    if (cmd.count("--spacing") > 0) {
        double v = 0.0;
        if (!parse_real(flags.spacing, v))
            return usage_error("--spacing expects a number (wavelengths)");
        if (int rc = apply_set(cfg.get(), "spacing", nlohmann::json(v).dump()))
            return rc;
    }
    if (cmd.count("--spread1-deg") > 0) {
        const std::string frag = real_list_fragment(flags.spread1);
        if (frag.empty())
            return usage_error("--spread1-deg expects a comma-separated list of degrees");
        if (int rc = apply_set(cfg.get(), "spread1_deg", frag))
            return rc;
    }
    if (cmd.count("--spread2-deg") > 0) {
        const std::string frag = real_list_fragment(flags.spread2);
        if (frag.empty())
            return usage_error("--spread2-deg expects a comma-separated list of degrees");
        if (int rc = apply_set(cfg.get(), "spread2_deg", frag))
            return rc;
    }
    if (cmd.count("--trials") > 0) {
        std::uint64_t v = 0;
        if (!parse_u64(flags.trials, v))
            return usage_error("--trials expects a non-negative integer");
        if (int rc = apply_set(cfg.get(), "trials", std::to_string(v)))
            return rc;
    }
    if (cmd.count("--seed") > 0) {
        std::uint64_t v = 0;
        if (!parse_u64(flags.seed, v))
            return usage_error("--seed expects a non-negative integer");
        if (int rc = apply_set(cfg.get(), "seed", std::to_string(v)))
            return rc;
    }
    if (cmd.count("--workers") > 0) {
        std::uint64_t v = 0;
        if (!parse_u64(flags.workers, v))
            return usage_error("--workers expects a non-negative integer");
        if (int rc = apply_set(cfg.get(), "workers", std::to_string(v)))
            return rc;
    }
    if (cmd.count("--basis-draws") > 0) {
        std::uint64_t v = 0;
        if (!parse_u64(flags.basis_draws, v))
            return usage_error("--basis-draws expects a positive integer");
        if (int rc = apply_set(cfg.get(), "basis_draws", std::to_string(v)))
            return rc;
    }
    if (cmd.count("--out") > 0) {
        if (int rc = apply_set(cfg.get(), "out", nlohmann::json(flags.out).dump()))
            return rc;
    }

    // canonical echo carries the fully merged config; reuse it below
    StringPtr canonical;
    {
        char *raw = nullptr;
        const wm_status rc = wm_config_canonical(cfg.get(), &raw);
        if (rc != WM_OK)
            return complain(rc);
        canonical.reset(raw);
    }
    nlohmann::json merged = nlohmann::json::parse(canonical.get());

    // environment default for the worker count, weakest priority
    if (cmd.count("--workers") == 0 && merged.value("workers", 0u) == 0u) {
        if (const char *env = std::getenv("WM_WORKERS"); env != nullptr && env[0] != '\0') {
            std::uint64_t v = 0;
            if (!parse_u64(env, v))
                return usage_error("WM_WORKERS must be a non-negative integer");
            if (int rc = apply_set(cfg.get(), "workers", std::to_string(v)))
                return rc;
        }
    }

    ResultPtr result;
    {
        wm_result *raw = nullptr;
        const wm_status rc = wm_run(cfg.get(), &raw);
        if (rc != WM_OK)
            return complain(rc);
        result.reset(raw);
    }

    const std::string out_path = merged.at("out").get<std::string>();
    const wm_status rc = wm_result_write_csv(result.get(), out_path.c_str());
    if (rc != WM_OK)
        return complain(rc);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int validate_command(const std::string &path)
{
    std::string text;
    if (!read_file(path, text))
        return usage_error("cannot read config file '" + path + "'");

    wm_config *raw = nullptr;
    const wm_status rc = wm_config_parse(text.c_str(), nullptr, &raw);
    if (rc != WM_OK)
        return complain(rc);
    ConfigPtr cfg(raw);

    char *echo = nullptr;
    const wm_status rc2 = wm_config_canonical(cfg.get(), &echo);
    if (rc2 != WM_OK)
        return complain(rc2);
    StringPtr guard(echo);
    std::cout << echo << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{std::string("wmimo ") + wm_version()
                 + " - massive MIMO channel statistics experiments"};
    app.require_subcommand(1);

    RunFlags flags;
    CLI::App *run_cmd = app.add_subcommand(
        "run", "run an experiment with defaults, config file and flag overrides");
    run_cmd
        ->add_option("experiment", flags.experiment,
                     "hardening | block-interference | one-ring-interference | "
                     "moment-validate | scaling-diagnostic")
        ->required();
    run_cmd->add_option("--config", flags.config_path, "JSON config file");
    run_cmd->add_option("--m", flags.m, "antenna counts, comma-separated");
    run_cmd->add_option("--d-rank", flags.d_rank, "rank control values, comma-separated");
    run_cmd->add_option("--k-factor", flags.k_factor, "Ricean K-factor (or 'inf')");
    run_cmd->add_option("--phi", flags.phi, "LoS arrival angle, radians");
    run_cmd->add_option("--spacing", flags.spacing, "antenna spacing, wavelengths");
    run_cmd->add_option("--spread1-deg", flags.spread1,
                        "first-user angular half-spreads, degrees, comma-separated");
    run_cmd->add_option("--spread2-deg", flags.spread2,
                        "second-user angular half-spreads, degrees, comma-separated");
    run_cmd->add_option("--trials", flags.trials, "Monte Carlo trials");
    run_cmd->add_option("--seed", flags.seed, "root random seed");
    run_cmd->add_option("--workers", flags.workers, "worker threads, 0 = auto");
    run_cmd->add_option("--basis-draws", flags.basis_draws, "random eigenbasis draws");
    run_cmd->add_option("--out", flags.out, "output CSV path");

    std::string validate_path;
    CLI::App *val_cmd =
        app.add_subcommand("validate-config", "parse a config file and echo canonical form");
    val_cmd->add_option("file", validate_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    if (run_cmd->parsed())
        return run_command(flags, *run_cmd);
    return validate_command(validate_path);
}
