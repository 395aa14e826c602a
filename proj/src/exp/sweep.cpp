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

#include "exp/sweep.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "core/errors.hpp"

namespace wmimo {

void SweepResult::add_metadata(const std::string &key, const std::string &value)
{
    metadata.emplace_back(key, value);
}

const std::vector<double> &SweepResult::column(const std::string &name) const
{
    for (const Column &c : columns)
        if (c.name == name)
            return c.values;
    throw std::invalid_argument("SweepResult: no column named " + name);
}

const std::string *SweepResult::find_metadata(const std::string &key) const
{
    for (const auto &kv : metadata)
        if (kv.first == key)
            return &kv.second;
    return nullptr;
}

std::string format_real(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string to_csv(const SweepResult &result)
{
    for (const auto &col : result.columns)
        if (col.values.size() != result.axis_values.size())
            throw std::invalid_argument("to_csv: column " + col.name
                                        + " does not match the axis length");

    std::string out;
    for (const auto &kv : result.metadata) {
        out += "# ";
        out += kv.first;
        out += ": ";
        out += kv.second;
        out += '\n';
    }

    out += result.axis;
    for (const auto &col : result.columns) {
        out += ',';
        out += col.name;
    }
    out += '\n';

    for (std::size_t r = 0; r < result.axis_values.size(); ++r) {
        out += format_real(result.axis_values[r]);
        for (const auto &col : result.columns) {
            out += ',';
            out += format_real(col.values[r]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string &line, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(line.substr(start));
            break;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

double parse_cell(const std::string &cell)
{
    if (cell.empty())
        throw io_error("parse_csv: empty cell");
    char *end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
        throw io_error("parse_csv: bad numeric cell '" + cell + "'");
    return v;
}

} // namespace

SweepResult parse_csv(const std::string &text)
{
    SweepResult result;
    bool have_header = false;
    std::size_t ncols = 0;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty())
            continue;

        if (line[0] == '#') {
            if (have_header)
                throw io_error("parse_csv: metadata after the header row");
            std::string body = line.substr(1);
            if (!body.empty() && body[0] == ' ')
                body.erase(0, 1);
            const std::size_t sep = body.find(": ");
            if (sep == std::string::npos)
                throw io_error("parse_csv: malformed metadata line '" + line + "'");
            result.metadata.emplace_back(body.substr(0, sep), body.substr(sep + 2));
            continue;
        }

        const std::vector<std::string> cells = split(line, ',');
        if (!have_header) {
            if (cells.empty() || cells[0].empty())
                throw io_error("parse_csv: missing header row");
            result.axis = cells[0];
            for (std::size_t i = 1; i < cells.size(); ++i)
                result.columns.push_back({cells[i], {}});
            ncols = cells.size();
            have_header = true;
            continue;
        }

        if (cells.size() != ncols)
            throw io_error("parse_csv: ragged row '" + line + "'");
        result.axis_values.push_back(parse_cell(cells[0]));
        for (std::size_t i = 1; i < cells.size(); ++i)
            result.columns[i - 1].values.push_back(parse_cell(cells[i]));
    }

    if (!have_header)
        throw io_error("parse_csv: no header row found");
    return result;
}

void write_csv_file(const SweepResult &result, const std::string &path)
{
    const std::string body = to_csv(result);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out)
        throw io_error("write failed: " + path);
}

} // namespace wmimo
