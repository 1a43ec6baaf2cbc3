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
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <thread>

#include "output.hpp"
#include "planckwalk/brillouin.hpp"
#include "planckwalk/cli.hpp"
#include "planckwalk/deformation.hpp"
#include "planckwalk/dirac.hpp"
#include "planckwalk/lorentz.hpp"
#include "planckwalk/walk.hpp"
#include "planckwalk/wavepacket.hpp"

namespace planckwalk::cli {

using brillouin::RegionId;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDesitterTolerance = 1e-10;
constexpr double kNormDriftTolerance = 1e-10;
constexpr double kVelocityTolerance = 0.01;
constexpr double kSpeedSlack = 1e-6;

unsigned worker_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates make_row(i) for i < n on all cores and writes rows in index order.
template <class F>
void write_parallel(std::size_t n, F make_row, RowWriter& writer) {
  constexpr std::size_t kBlock = 4096;
  const unsigned workers = worker_count();
  std::vector<Row> rows;
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t len = std::min(kBlock, n - start);
    rows.assign(len, Row{});
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < len; i += workers) rows[i] = make_row(start + i);
      }));
    }
    for (auto& j : jobs) j.get();
    for (const auto& r : rows) writer.write(r);
  }
}

std::array<int, 3> grid_counts(const RunConfig& c, int fallback) {
  if (c.grid.empty()) return {fallback, fallback, fallback};
  if (c.grid.size() == 1) return {c.grid[0], c.grid[0], c.grid[0]};
  return {c.grid[0], c.grid[1], c.grid[2]};
}

// Closed grid over [-pi, pi] per axis; odd counts contain 0.
struct CubeGrid {
  std::array<std::vector<double>, 3> axes;

  std::size_t size() const {
    return axes[0].size() * axes[1].size() * axes[2].size();
  }
  Vec3 point(std::size_t i) const {
    const std::size_t nz = axes[2].size(), ny = axes[1].size();
    return {axes[0][i / (ny * nz)], axes[1][(i / nz) % ny], axes[2][i % nz]};
  }
};

CubeGrid make_cube_grid(const RunConfig& c, int fallback) {
  const auto counts = grid_counts(c, fallback);
  const Slice slice = parse_slice(c);
  CubeGrid g;
  for (int a = 0; a < 3; ++a) {
    if (a == slice.axis) {
      g.axes[a] = {slice.value};
      continue;
    }
    const int n = counts[a];
    if (n < 2) throw ConfigError("--grid needs at least 2 points per axis");
    for (int i = 0; i < n; ++i) {
      g.axes[a].push_back(i == (n - 1) / 2 && n % 2 == 1
                              ? 0.0
                              : -kPi + 2.0 * kPi * i / (n - 1));
    }
  }
  return g;
}

void push_k(Row& row, const RunConfig& c, const Vec3& k) {
  const Vec3 out = output_k(c, k);
  row.insert(row.end(), {out.x(), out.y(), out.z()});
}

std::string describe(const std::exception& e) { return e.what(); }

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "dispersion", "orbit", "covariance", "regions", "evolve", "dirac"};
  return names;
}

const std::vector<std::string>& columns_for(const std::string& command) {
  static const std::map<std::string, std::vector<std::string>> layouts{
      {"dispersion",
       {"kx", "ky", "kz", "omega_plus", "omega_minus", "n_norm", "lambda",
        "region", "cone", "onshell_residual"}},
      {"orbit",
       {"trace", "step", "parameter", "kx", "ky", "kz", "omega", "region",
        "onshell_residual", "generator", "gen_x", "gen_y", "gen_z", "start_kx",
        "start_ky", "start_kz", "status"}},
      {"covariance",
       {"case", "kx", "ky", "kz", "chirality", "branch", "pairing", "beta_x",
        "beta_y", "beta_z", "axis_x", "axis_y", "axis_z", "angle", "kpx", "kpy",
        "kpz", "f_ratio", "residual", "status"}},
      {"regions",
       {"region", "population", "fraction", "jacobian_min", "jacobian_max",
        "lambda_sign", "cos2ky_sign", "image_set", "image_violations",
        "status"}},
      {"evolve",
       {"step", "norm", "norm_drift", "x", "y", "z", "vx", "vy", "vz", "vgx",
        "vgy", "vgz", "speed", "relative_error", "resolution_warning",
        "status"}},
      {"dirac",
       {"kx", "ky", "kz", "mass", "omega_1", "omega_2", "omega_3", "omega_4",
        "closed_form", "desitter_max", "gamma_max", "status"}},
  };
  return layouts.at(command);
}

int cmd_dispersion(const RunConfig& c, std::ostream& out, std::ostream&) {
  const CubeGrid grid = make_cube_grid(c, 65);
  const Chirality chi = parse_chirality(c.chirality);
  RowWriter writer(out, c.format, columns_for("dispersion"));
  std::vector<char> failed(grid.size(), 0);
  write_parallel(
      grid.size(),
      [&](std::size_t i) {
        const WaveVector3 k(grid.point(i));
        const double wp = walk::dispersion(k, chi, Branch::Plus).omega;
        const double wm = walk::dispersion(k, chi, Branch::Minus).omega;
        const Vec3 n = walk::n_of_k(k, chi);
        const double residual = std::abs(walk::onshell_residual(wp, k, chi));
        failed[i] = residual > c.tol_algebraic;
        Row row;
        push_k(row, c, k.vec());
        row.insert(row.end(),
                   {wp, wm, n.norm(), walk::lambda_of_k(k, chi),
                    static_cast<std::int64_t>(brillouin::index_of(
                        brillouin::classify_region(k, chi))),
                    k.norm(), residual});
        return row;
      },
      writer);
  const bool violation = std::any_of(failed.begin(), failed.end(), [](char f) { return f; });
  return (c.strict && violation) ? kStrictViolation : kOk;
}

namespace {

struct TracePlan {
  Vec3 start;  ///< rescaled wavevector of the unrotated start
  std::optional<Mat3> tilt;  ///< rotation applied before the trace
  lorentz::Generator generator;
  int steps;
  double max_param;
};

std::vector<TracePlan> orbit_plans(const RunConfig& c) {
  std::vector<TracePlan> plans;
  const auto steps_or = [&](int fallback) {
    return c.steps ? static_cast<int>(*c.steps) : fallback;
  };
  const Vec3 ez = Vec3::UnitZ();
  if (c.preset == "fig2-left") {
    // 180 samples keep the y axis, where these orbits touch H, off the grid.
    const int steps = steps_or(180);
    for (double kx : {0.05, 0.2, 0.5, 1.0, 1.7}) {
      plans.push_back({Vec3(kx, 0, 0), std::nullopt,
                       lorentz::RotationGenerator{ez}, steps,
                       c.max_param.value_or(2.0 * kPi)});
    }
  } else if (c.preset == "fig2-right") {
    // The boost runs against k so that |k| grows with the rapidity.
    const int steps = steps_or(81);
    constexpr int kDirections = 12;
    for (int j = 0; j < kDirections; ++j) {
      const double phi = 2.0 * kPi * j / kDirections;
      const Vec3 dir(std::cos(phi), std::sin(phi), 0.0);
      plans.push_back({0.01 * dir, std::nullopt, lorentz::BoostGenerator{-dir},
                       steps, c.max_param.value_or(4.0)});
    }
  } else if (c.preset == "fig3") {
    const int steps = steps_or(73);
    constexpr int kTilts = 13;
    for (int i = 0; i < kTilts; ++i) {
      const double theta = -0.5 * kPi + kPi * i / (kTilts - 1);
      plans.push_back({Vec3(0.3, 0, 0),
                       Mat3(Eigen::AngleAxisd(theta, Vec3::UnitY())),
                       lorentz::RotationGenerator{ez}, steps,
                       c.max_param.value_or(2.0 * kPi)});
    }
  } else {
    const Vec3 k = input_k(c, c.k);
    if (c.generator == "boost") {
      const Vec3 b(c.beta[0], c.beta[1], c.beta[2]);
      if (b.norm() == 0.0) throw ConfigError("--beta must give a direction");
      plans.push_back({k, std::nullopt, lorentz::BoostGenerator{b.normalized()},
                       steps_or(41), c.max_param.value_or(std::atanh(b.norm()))});
    } else {
      const Vec3 a(c.axis[0], c.axis[1], c.axis[2]);
      plans.push_back({k, std::nullopt, lorentz::RotationGenerator{a.normalized()},
                       steps_or(73), c.max_param.value_or(c.angle.value_or(2.0 * kPi))});
    }
  }
  return plans;
}

struct TraceOutcome {
  deformation::OnShellPoint start;
  lorentz::OrbitTrace trace;
  std::string setup_error;
};

TraceOutcome run_trace(const TracePlan& s, Chirality chi, Branch branch,
                       const deformation::InversionOptions& opts) {
  TraceOutcome out;
  try {
    out.start = deformation::make_on_shell(WaveVector3(s.start), branch, chi);
    if (s.tilt) {
      Mat4 m = Mat4::Identity();
      m.block<3, 3>(1, 1) = *s.tilt;
      out.start = lorentz::nonlinear_transform(out.start, lorentz::LorentzMatrix(m),
                                               opts);
    }
    out.trace = lorentz::trace_orbit(out.start, s.generator, s.steps,
                                     s.max_param, opts);
  } catch (const std::exception& e) {
    out.setup_error = describe(e);
  }
  return out;
}

}  // namespace

int cmd_orbit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto plans = orbit_plans(c);
  const Chirality chi = parse_chirality(c.chirality);
  const Branch branch = parse_branch(c.branch);
  deformation::InversionOptions opts;
  opts.verify_tolerance = c.tol_roundtrip;

  std::vector<std::future<TraceOutcome>> jobs;
  for (const auto& s : plans) {
    jobs.push_back(std::async(std::launch::async, run_trace, s, chi, branch, opts));
  }

  RowWriter writer(out, c.format, columns_for("orbit"));
  bool violation = false;
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    const TraceOutcome result = jobs[t].get();
    const auto& plan = plans[t];
    const bool is_boost = std::holds_alternative<lorentz::BoostGenerator>(plan.generator);
    const Vec3 gen = is_boost ? std::get<lorentz::BoostGenerator>(plan.generator).direction
                              : std::get<lorentz::RotationGenerator>(plan.generator).axis;
    const Vec3 start = result.setup_error.empty() ? result.start.k.vec() : plan.start;
    auto base = [&](std::int64_t step, double param) {
      return Row{static_cast<std::int64_t>(t), step, param};
    };
    auto tail = [&](Row& row, const std::string& status) {
      row.insert(row.end(), {std::string(is_boost ? "boost" : "rotation"), gen.x(),
                             gen.y(), gen.z()});
      push_k(row, c, start);
      row.emplace_back(status);
    };
    for (const auto& s : result.trace.samples) {
      Row row = base(s.step, s.parameter);
      push_k(row, c, s.point.k.vec());
      const bool ok = s.onshell_residual <= c.tol_roundtrip;
      violation = violation || !ok;
      row.insert(row.end(), {s.point.omega(),
                             static_cast<std::int64_t>(brillouin::index_of(s.point.region)),
                             s.onshell_residual});
      tail(row, !ok ? "FAIL" : s.near_excision ? "near_excision" : "ok");
      writer.write(row);
    }
    const std::string failure =
        result.setup_error.empty() ? result.trace.failure : result.setup_error;
    if (!failure.empty() || result.trace.truncated) {
      const auto step = static_cast<std::int64_t>(result.trace.samples.size());
      const double param =
          plan.steps > 1 ? plan.max_param * static_cast<double>(step) / (plan.steps - 1)
                         : 0.0;
      Row row = base(step, param);
      row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN, std::int64_t{-1}, kNaN});
      tail(row, "FAILED: " + failure);
      writer.write(row);
      err << "orbit trace " << t << " failed at step " << step << ": " << failure
          << '\n';
      return kNumericalFailure;
    }
  }
  return (c.strict && violation) ? kStrictViolation : kOk;
}

int cmd_covariance(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Chirality chi = parse_chirality(c.chirality);
  const Branch branch = parse_branch(c.branch);
  const auto pairing = c.pairing == "swapped" ? lorentz::SpinorPairing::Swapped
                                              : lorentz::SpinorPairing::Matched;

  struct Case {
    Vec3 k;
    Vec3 beta;
    Vec3 axis;
    double angle;
  };
  std::vector<Case> cases;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> uni(-kPi, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  auto random_direction = [&] {
    Vec3 v(gauss(rng), gauss(rng), gauss(rng));
    return Vec3(v.normalized());
  };
  const bool fixed_k = !c.k.empty();
  const int count = fixed_k ? 1 : (c.samples > 0 ? c.samples : 1000);
  while (static_cast<int>(cases.size()) < count) {
    Case cs;
    cs.k = fixed_k ? input_k(c, c.k) : brillouin::wrap_to_zone(Vec3(uni(rng), uni(rng), uni(rng))).vec();
    if (!c.beta.empty()) {
      cs.beta = Vec3(c.beta[0], c.beta[1], c.beta[2]);
    } else if (!c.axis.empty() || c.angle) {
      cs.beta = Vec3::Zero();
    } else {
      cs.beta = std::tanh(2.0 * unit(rng)) * random_direction();
    }
    cs.axis = c.axis.empty() ? Vec3::UnitZ()
                             : Vec3(c.axis[0], c.axis[1], c.axis[2]).normalized();
    cs.angle = c.angle.value_or(0.0);
    if (!fixed_k) {
      // Keep sampled triples where the inverse deformation is resolvable.
      try {
        const auto x = deformation::make_on_shell(WaveVector3(cs.k), branch, chi);
        const auto p = deformation::deform(x);
        const auto t = lorentz::rotation_matrix(lorentz::RotationParam(cs.axis, cs.angle)) *
                       lorentz::boost_matrix(lorentz::BoostParam(cs.beta));
        if (p.p.norm() > deformation::kResolvedMomentum ||
            t.apply(p).p.norm() > deformation::kResolvedMomentum) {
          continue;
        }
      } catch (const DomainError&) {
        continue;
      }
    }
    cases.push_back(cs);
  }

  RowWriter writer(out, c.format, columns_for("covariance"));
  bool violation = false, failure = false;
  std::vector<Row> rows(cases.size());
  std::vector<int> outcome(cases.size(), 0);
  const unsigned workers = worker_count();
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < cases.size(); i += workers) {
        const Case& cs = cases[i];
        Row row{static_cast<std::int64_t>(i)};
        push_k(row, c, cs.k);
        row.insert(row.end(), {to_string(chi), to_string(branch), c.pairing, cs.beta.x(),
                               cs.beta.y(), cs.beta.z(), cs.axis.x(), cs.axis.y(),
                               cs.axis.z(), cs.angle});
        std::string status;
        try {
          const auto t = lorentz::rotation_matrix(lorentz::RotationParam(cs.axis, cs.angle)) *
                         lorentz::boost_matrix(lorentz::BoostParam(cs.beta));
          const auto report =
              lorentz::covariance_check(WaveVector3(cs.k), chi, t, pairing, 1e-7, branch);
          if (!report.error.empty()) {
            push_k(row, c, Vec3::Constant(kNaN));
            row.insert(row.end(), {kNaN, kNaN});
            status = "ERROR: " + report.error;
            outcome[i] = 2;
          } else {
            push_k(row, c, report.k_prime.vec());
            row.insert(row.end(), {report.f_ratio, report.residual});
            status = report.pass ? "PASS" : "FAIL";
            outcome[i] = report.pass ? 0 : 1;
          }
        } catch (const std::exception& e) {
          push_k(row, c, Vec3::Constant(kNaN));
          row.insert(row.end(), {kNaN, kNaN});
          status = "ERROR: " + describe(e);
          outcome[i] = 2;
        }
        row.emplace_back(status);
        rows[i] = std::move(row);
      }
    }));
  }
  for (auto& j : jobs) j.get();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    writer.write(rows[i]);
    // The swapped pairing is a negative control: it is expected to fail.
    const bool expected_pass = pairing == lorentz::SpinorPairing::Matched;
    if (outcome[i] == 2) failure = true;
    if (outcome[i] != 2 && (outcome[i] == 0) != expected_pass) violation = true;
  }
  if (failure) {
    err << "covariance: some transforms could not be inverted\n";
    return kNumericalFailure;
  }
  return (c.strict && violation) ? kStrictViolation : kOk;
}

int cmd_regions(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto counts = grid_counts(c, 32);
  const Chirality chi = parse_chirality(c.chirality);
  const std::size_t total =
      static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];

  struct Tally {
    std::int64_t population = 0;
    double jac_min = std::numeric_limits<double>::infinity();
    double jac_max = -std::numeric_limits<double>::infinity();
    std::int64_t violations = 0;
  };
  const unsigned workers = worker_count();
  std::vector<std::array<Tally, 5>> partial(workers);
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < total; i += workers) {
        const std::size_t nz = counts[2], ny = counts[1];
        // Cell centres keep the sample off the planes where lambda or
        // cos 2ky vanish identically.
        const Vec3 k(-kPi + 2.0 * kPi * (static_cast<double>(i / (ny * nz)) + 0.5) / counts[0],
                     -kPi + 2.0 * kPi * (static_cast<double>((i / nz) % ny) + 0.5) / counts[1],
                     -kPi + 2.0 * kPi * (static_cast<double>(i % nz) + 0.5) / counts[2]);
        const WaveVector3 kv(k);
        const RegionId r = brillouin::classify_region(kv, chi, c.tol_algebraic);
        Tally& t = partial[w][r == RegionId::Boundary ? 4 : brillouin::index_of(r)];
        ++t.population;
        if (r == RegionId::Boundary) continue;
        const double j = brillouin::jacobian_n(kv, chi);
        t.jac_min = std::min(t.jac_min, j);
        t.jac_max = std::max(t.jac_max, j);
        const Vec3 n = walk::n_of_k(kv, chi);
        // Image sets are stated for the + walk; the - walk maps through -m.
        const Vec3 m = chi == Chirality::Plus ? n : Vec3(-n);
        if (!brillouin::in_Q(m, brillouin::image_set_of(r))) ++t.violations;
      }
    }));
  }
  for (auto& j : jobs) j.get();

  RowWriter writer(out, c.format, columns_for("regions"));
  bool violation = false;
  for (int idx = 0; idx < 5; ++idx) {
    Tally t;
    for (const auto& p : partial) {
      t.population += p[idx].population;
      t.jac_min = std::min(t.jac_min, p[idx].jac_min);
      t.jac_max = std::max(t.jac_max, p[idx].jac_max);
      t.violations += p[idx].violations;
    }
    const bool boundary = idx == 4;
    const RegionId r = boundary ? RegionId::Boundary : brillouin::region_from_index(idx);
    std::string status = "ok";
    if (!boundary) {
      const int expected_sign = brillouin::lambda_sign(r) * brillouin::cos2ky_sign(r);
      const bool sign_ok = t.population == 0 ||
                           (expected_sign > 0 ? t.jac_min > 0.0 : t.jac_max < 0.0);
      if (t.population == 0 || !sign_ok || t.violations > 0) status = "FAIL";
    }
    violation = violation || status != "ok";
    const bool empty = t.population == 0 || boundary;
    writer.write(Row{
        static_cast<std::int64_t>(boundary ? -1 : idx), t.population,
        static_cast<double>(t.population) / static_cast<double>(total),
        empty ? kNaN : t.jac_min, empty ? kNaN : t.jac_max,
        static_cast<std::int64_t>(boundary ? 0 : brillouin::lambda_sign(r)),
        static_cast<std::int64_t>(boundary ? 0 : brillouin::cos2ky_sign(r)),
        std::string(boundary ? "-"
                    : brillouin::image_set_of(r) == brillouin::ImageSet::Qa ? "Qa"
                                                                            : "Qb"),
        t.violations, status});
  }
  return (c.strict && violation) ? kStrictViolation : kOk;
}

int cmd_evolve(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto counts = grid_counts(c, 64);
  const Chirality chi = parse_chirality(c.chirality);
  const Branch branch = parse_branch(c.branch);
  const Vec3 center = c.center.empty() ? Vec3(0.05, 0.0, 0.0) : input_k(c, c.center);
  const std::int64_t steps = c.steps.value_or(100);
  const int checkpoints = c.samples > 0 ? c.samples : 4;

  const WaveVector3 k0 = brillouin::wrap_to_zone(center);
  auto grid = std::make_shared<const wavepacket::KGrid>(counts, k0.vec());
  const auto packet = wavepacket::make_gaussian_packet(
      grid, k0, c.sigma, wavepacket::branch_spinor(k0, chi, branch), chi);
  const Vec3 vg = wavepacket::group_velocity(k0, chi, branch);
  const double norm0 = packet.norm();
  const Vec3 x0 = wavepacket::mean_position(packet);

  RowWriter writer(out, c.format, columns_for("evolve"));
  bool violation = false;
  for (int j = 0; j <= checkpoints; ++j) {
    const std::int64_t t = steps * j / checkpoints;
    if (j > 0 && t == steps * (j - 1) / checkpoints) continue;
    const auto evolved = wavepacket::evolve(packet, t);
    const double drift = std::abs(evolved.norm() - norm0);
    const Vec3 x = t == 0 ? x0 : wavepacket::mean_position(evolved);
    Vec3 v = Vec3::Constant(kNaN);
    double speed = kNaN, rel = kNaN;
    bool warning = false;
    std::string status = "ok";
    if (t > 0) {
      const Vec3 dx = x - x0;
      v = dx / static_cast<double>(t);
      speed = v.norm();
      rel = (v - vg).norm() / std::max(vg.norm(), std::numeric_limits<double>::min());
      warning = dx.lpNorm<Eigen::Infinity>() < 2.0;
      if (speed > 1.0 + kSpeedSlack) status = "FAIL: superluminal";
      else if (!warning && rel > kVelocityTolerance) status = "FAIL: velocity";
    }
    if (drift > kNormDriftTolerance) status = "FAIL: norm";
    violation = violation || status != "ok";
    writer.write(Row{t, evolved.norm(), drift, x.x(), x.y(), x.z(), v.x(), v.y(),
                     v.z(), vg.x(), vg.y(), vg.z(), speed, rel,
                     static_cast<std::int64_t>(warning), status});
  }
  return (c.strict && violation) ? kStrictViolation : kOk;
}

int cmd_dirac(const RunConfig& c, std::ostream& out, std::ostream&) {
  const CubeGrid grid = make_cube_grid(c, 33);
  const Chirality chi = parse_chirality(c.chirality);
  const auto params = dirac::DiracParams::from_mass(c.mass);
  RowWriter writer(out, c.format, columns_for("dirac"));
  std::vector<char> failed(grid.size(), 0);
  write_parallel(
      grid.size(),
      [&](std::size_t i) {
        const WaveVector3 k(grid.point(i));
        const auto modes = dirac::dirac_modes(k, params, chi);
        Row row;
        push_k(row, c, k.vec());
        row.emplace_back(c.mass);
        double desitter = 0.0, gamma = 0.0;
        for (const auto& mode : modes) {
          row.emplace_back(mode.point.omega);
          desitter = std::max(
              desitter, std::abs(dirac::desitter_norm(mode.point.omega, k, c.mass, chi)));
          gamma = std::max(gamma, dirac::gamma_residual(mode.point.omega, k, c.mass,
                                                        mode.eigenvector, chi));
        }
        const bool ok = desitter <= kDesitterTolerance;
        failed[i] = !ok;
        row.insert(row.end(), {dirac::dirac_omega(k, params, chi), desitter, gamma,
                               std::string(ok ? "ok" : "FAIL")});
        return row;
      },
      writer);
  const bool violation = std::any_of(failed.begin(), failed.end(), [](char f) { return f; });
  return (c.strict && violation) ? kStrictViolation : kOk;
}

}  // namespace planckwalk::cli
