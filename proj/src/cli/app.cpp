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
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "planckwalk/cli.hpp"

namespace planckwalk::cli {

namespace {

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "dispersion") return cmd_dispersion(c, out, err);
  if (c.command == "orbit") return cmd_orbit(c, out, err);
  if (c.command == "covariance") return cmd_covariance(c, out, err);
  if (c.command == "regions") return cmd_regions(c, out, err);
  if (c.command == "evolve") return cmd_evolve(c, out, err);
  return cmd_dirac(c, out, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl quantum walk on the BCC lattice: dispersion, nonlinear "
               "Lorentz orbits, covariance, regions, packets and the Dirac walk",
               "planck-walk"};
  RunConfig config;
  register_options(app, config);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kOk : kConfigError;
  }

  try {
    validate(config);
    if (config.out.empty()) return dispatch(config, out, err);
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file " + config.out);
    const int code = dispatch(config, file, err);
    file.flush();
    return code;
  } catch (const ConfigError& e) {
    err << "planck-walk: " << e.what() << '\n';
    return kConfigError;
  } catch (const MalformedInput& e) {
    err << "planck-walk: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "planck-walk: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "planck-walk: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv{"planck-walk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace planckwalk::cli
