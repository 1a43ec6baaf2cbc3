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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planckwalk/types.hpp"

namespace CLI {
class App;
}

namespace planckwalk::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Jsonl };
enum class Units { Rescaled, MainText };

struct RunConfig {
  std::string command;
  std::string out;
  Format format = Format::Csv;
  Units units = Units::Rescaled;
  bool strict = false;
  std::uint64_t seed = 20260101;
  double tol_algebraic = 1e-12;
  double tol_roundtrip = 1e-9;

  std::vector<int> grid;
  std::string slice;
  std::string preset;
  std::vector<double> k;
  std::vector<double> beta;
  std::vector<double> axis;
  std::optional<double> angle;
  std::optional<double> max_param;
  std::string generator;
  int region = -1;
  std::string chirality = "+";
  std::string branch = "+";
  std::string pairing = "matched";
  double mass = 0.0;
  std::optional<std::int64_t> steps;
  int samples = 0;
  double sigma = 0.01;
  std::vector<double> center;
};

/// Registers every option on `app`, bound to `config`.
void register_options(CLI::App& app, RunConfig& config);

/// Cross-field validation; throws ConfigError.
void validate(const RunConfig& config);

Chirality parse_chirality(const std::string& s);
Branch parse_branch(const std::string& s);

/// Input wavevector in rescaled units.
Vec3 input_k(const RunConfig& config, const std::vector<double>& v);
/// Output wavevector in the configured units.
Vec3 output_k(const RunConfig& config, const Vec3& k);

struct Slice {
  int axis = -1;  ///< -1 for a full 3D grid
  double value = 0.0;  ///< rescaled units
};

Slice parse_slice(const RunConfig& config);

}  // namespace planckwalk::cli
