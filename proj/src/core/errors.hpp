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

#ifndef WMIMO_CORE_ERRORS_HPP
#define WMIMO_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wmimo {

// Error categories mirror the process exit codes of the CLI:
// config 2, numeric 3, io 4.  Plain std::invalid_argument marks API misuse.

struct config_error : std::runtime_error {
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace wmimo

#endif
