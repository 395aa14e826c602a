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

#ifndef WMIMO_EXP_SWEEP_HPP
#define WMIMO_EXP_SWEEP_HPP

#include <string>
#include <utility>
#include <vector>

namespace wmimo {

/// Tabular experiment output: one axis column plus named metric columns,
/// all rectangular, with ordered `# key: value` metadata on top.
struct SweepResult {
    struct Column {
        std::string name;
        std::vector<double> values;
        bool operator==(const Column &other) const
        {
            return name == other.name && values == other.values;
        }
    };

    std::string axis;
    std::vector<double> axis_values;
    std::vector<Column> columns;
    std::vector<std::pair<std::string, std::string>> metadata;

    std::size_t rows() const { return axis_values.size(); }
    void add_metadata(const std::string &key, const std::string &value);
    const std::vector<double> &column(const std::string &name) const;
    const std::string *find_metadata(const std::string &key) const;

    bool operator==(const SweepResult &other) const
    {
        return axis == other.axis && axis_values == other.axis_values
               && columns == other.columns && metadata == other.metadata;
    }
};

/// Serialize with metadata lines, a header row, and %.17g data rows.
/// Throws std::invalid_argument if the table is not rectangular.
std::string to_csv(const SweepResult &result);

/// Inverse of to_csv.  Throws io_error on malformed input.
SweepResult parse_csv(const std::string &text);

/// Write to_csv(result) to a file.  Throws io_error on failure.
void write_csv_file(const SweepResult &result, const std::string &path);

/// %.17g formatting used for every real emitted in CSV output.
std::string format_real(double value);

} // namespace wmimo

#endif
