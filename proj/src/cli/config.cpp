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
#include "config.hpp"

#include <cmath>
#include <map>

#include "CLI11.hpp"
#include "planckwalk/cli.hpp"
#include "planckwalk/walk.hpp"

namespace planckwalk::cli {

void register_options(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "Key-value configuration file; flags win");

  app.add_option("command", c.command, "Computation to run")
      ->required()
      ->check(CLI::IsMember(commands()));

  app.add_option("--out,-o", c.out, "Output file (default: stdout)");
  const std::map<std::string, Format> formats{{"csv", Format::Csv},
                                              {"jsonl", Format::Jsonl}};
  app.add_option("--format", c.format, "csv or jsonl")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  const std::map<std::string, Units> units{{"rescaled", Units::Rescaled},
                                           {"maintext", Units::MainText}};
  app.add_option("--units", c.units, "Wavevector convention of inputs and outputs")
      ->transform(CLI::CheckedTransformer(units, CLI::ignore_case));
  app.add_flag("--strict", c.strict, "Exit 4 if any row fails its check");
  app.add_option("--seed", c.seed, "Random seed for sampled inputs");
  app.add_option("--tol-algebraic", c.tol_algebraic)->check(CLI::PositiveNumber);
  app.add_option("--tol-roundtrip", c.tol_roundtrip)->check(CLI::PositiveNumber);

  app.add_option("--grid", c.grid, "Points per axis: N or Nx,Ny,Nz")
      ->delimiter(',')
      ->expected(1, 3)
      ->check(CLI::PositiveNumber);
  app.add_option("--slice", c.slice, "Fix one coordinate, e.g. kz=0");
  app.add_option("--preset", c.preset, "Orbit preset")
      ->check(CLI::IsMember({"fig2-left", "fig2-right", "fig3"}));
  app.add_option("--k", c.k, "Wavevector kx,ky,kz")->delimiter(',')->expected(3);
  app.add_option("--beta", c.beta, "Boost velocity bx,by,bz")
      ->delimiter(',')
      ->expected(3);
  app.add_option("--axis", c.axis, "Rotation axis ax,ay,az")
      ->delimiter(',')
      ->expected(3);
  app.add_option("--angle", c.angle, "Rotation angle");
  app.add_option("--max-param", c.max_param, "Largest orbit parameter");
  app.add_option("--generator", c.generator, "Orbit generator")
      ->check(CLI::IsMember({"boost", "rotation"}));
  app.add_option("--region", c.region, "Region index 0..3")
      ->check(CLI::Range(0, 3));
  app.add_option("--chirality", c.chirality)->check(CLI::IsMember({"+", "-"}));
  app.add_option("--branch", c.branch)->check(CLI::IsMember({"+", "-"}));
  app.add_option("--pairing", c.pairing, "Spinor pairing for covariance")
      ->check(CLI::IsMember({"matched", "swapped"}));
  app.add_option("--mass", c.mass)->check(CLI::Range(0.0, 1.0));
  app.add_option("--steps", c.steps)->check(CLI::NonNegativeNumber);
  app.add_option("--samples", c.samples)->check(CLI::NonNegativeNumber);
  app.add_option("--sigma", c.sigma)->check(CLI::PositiveNumber);
  app.add_option("--center", c.center, "Packet centre kx,ky,kz")
      ->delimiter(',')
      ->expected(3);
}

void validate(const RunConfig& c) {
  if (!c.grid.empty() && c.grid.size() != 1 && c.grid.size() != 3) {
    throw ConfigError("--grid takes one or three counts");
  }
  if (!c.beta.empty()) {
    const double b = Vec3(c.beta[0], c.beta[1], c.beta[2]).norm();
    if (!(b < 1.0)) throw ConfigError("--beta must have norm below 1");
  }
  if (!c.axis.empty() && Vec3(c.axis[0], c.axis[1], c.axis[2]).norm() == 0.0) {
    throw ConfigError("--axis must be nonzero");
  }
  if (c.command == "orbit" && c.preset.empty()) {
    if (c.k.empty()) throw ConfigError("orbit needs --preset or --k");
    if (c.generator.empty()) throw ConfigError("orbit needs --generator");
    if (c.generator == "boost" && c.beta.empty()) {
      throw ConfigError("boost orbit needs --beta for its direction");
    }
    if (c.generator == "rotation" && c.axis.empty()) {
      throw ConfigError("rotation orbit needs --axis");
    }
  }
  if (c.command == "orbit" && c.steps && *c.steps < 2) {
    throw ConfigError("orbit needs at least 2 steps");
  }
  parse_slice(c);
}

Chirality parse_chirality(const std::string& s) {
  return s == "-" ? Chirality::Minus : Chirality::Plus;
}

Branch parse_branch(const std::string& s) {
  return s == "-" ? Branch::Minus : Branch::Plus;
}

Vec3 input_k(const RunConfig& c, const std::vector<double>& v) {
  const Vec3 k(v.at(0), v.at(1), v.at(2));
  return c.units == Units::MainText ? walk::from_main_text(k).vec() : k;
}

Vec3 output_k(const RunConfig& c, const Vec3& k) {
  return c.units == Units::MainText ? walk::to_main_text(WaveVector3(k)) : k;
}

Slice parse_slice(const RunConfig& c) {
  Slice s;
  if (c.slice.empty() || c.slice == "none") return s;
  const auto eq = c.slice.find('=');
  const std::string name = c.slice.substr(0, eq);
  if (eq == std::string::npos || (name != "kx" && name != "ky" && name != "kz")) {
    throw ConfigError("--slice must look like kx=VALUE, ky=VALUE or kz=VALUE");
  }
  s.axis = name[1] - 'x';
  try {
    std::size_t used = 0;
    const std::string text = c.slice.substr(eq + 1);
    s.value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(s.value)) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ConfigError("--slice value is not a number: " + c.slice);
  }
  if (c.units == Units::MainText) s.value /= std::sqrt(3.0);
  return s;
}

}  // namespace planckwalk::cli
