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
#pragma once

#include <ostream>

#include "config.hpp"

namespace planckwalk::cli {

/// Each command writes its rows to `out` and returns an ExitCode. Diagnostics
/// go to `err`.
int cmd_dispersion(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_orbit(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_covariance(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_regions(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_dirac(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace planckwalk::cli
