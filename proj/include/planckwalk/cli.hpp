/* Copyright 2026 The planck-walk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/** @file cli.hpp
 *  @brief Entry point of the planck-walk command line tool.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace planckwalk::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalFailure = 3,
  kStrictViolation = 4,
};

/// Runs `planck-walk <command> [options]`. Data goes to --out or to `out`;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Column layout of each command's output.
const std::vector<std::string>& columns_for(const std::string& command);

const std::vector<std::string>& commands();

}  // namespace planckwalk::cli
