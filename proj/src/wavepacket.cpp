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
#include "planckwalk/wavepacket.hpp"

#include <cmath>

#include "planckwalk/brillouin.hpp"
#include "planckwalk/walk.hpp"

namespace planckwalk::wavepacket {

namespace {

const Complex kI(0.0, 1.0);

// Amplitudes below this weight do not contribute to observables.
constexpr double kNegligible = 1e-300;

}  // namespace

KGrid::KGrid(std::array<int, 3> counts, const Vec3& origin)
    : counts_(counts), origin_(origin) {
  for (int c : counts_) {
    if (c < 4) throw MalformedInput("grid needs at least 4 points per axis");
  }
  const auto& b = brillouin::reciprocal_basis();
  points_.reserve(static_cast<std::size_t>(counts_[0]) * counts_[1] * counts_[2]);
  for (int i = 0; i < counts_[0]; ++i) {
    for (int j = 0; j < counts_[1]; ++j) {
      for (int l = 0; l < counts_[2]; ++l) {
        const Vec3 k = origin_ + (static_cast<double>(i) / counts_[0]) * b[0] +
                       (static_cast<double>(j) / counts_[1]) * b[1] +
                       (static_cast<double>(l) / counts_[2]) * b[2];
        points_.push_back(brillouin::wrap_to_zone(k));
      }
    }
  }
}

SpinMatrix2 walk_power(const WaveVector3& k, Chirality chi, std::int64_t t) {
  const Vec3 n = walk::n_of_k(k, chi);
  const double lambda = walk::lambda_of_k(k, chi);
  const double r = n.norm();
  if (r == 0.0) {
    const double sign = (lambda < 0.0 && t % 2 != 0) ? -1.0 : 1.0;
    return sign * SpinMatrix2::Identity();
  }
  const double omega = std::atan2(r, lambda);
  const double phase = std::fmod(static_cast<double>(t) * omega, 2.0 * kPi);
  return std::cos(phase) * SpinMatrix2::Identity() -
         kI * std::sin(phase) * walk::sigma_dot(n / r, chi);
}

Spinor2 branch_spinor(const WaveVector3& k, Chirality chi, Branch branch) {
  const Vec3 n = walk::n_of_k(k, chi);
  if (n.norm() == 0.0) return Spinor2(1.0, 0.0);
  const Eigen::SelfAdjointEigenSolver<SpinMatrix2> solver(
      walk::sigma_dot(n / n.norm(), chi));
  // Eigenvalues ascend: -1 then +1.
  return solver.eigenvectors().col(branch == Branch::Plus ? 1 : 0);
}

Vec3 group_velocity(const WaveVector3& k, Chirality chi, Branch branch) {
  const double r = walk::n_of_k(k, chi).norm();
  if (r == 0.0) return Vec3::Zero();
  return -sign_of(branch) * walk::lambda_gradient(k, chi) / r;
}

Wavepacket::Wavepacket(std::shared_ptr<const KGrid> grid,
                       std::vector<Spinor2> amplitudes, PacketProfile profile,
                       std::int64_t steps)
    : grid_(std::move(grid)),
      amplitudes_(std::move(amplitudes)),
      profile_(profile),
      steps_(steps) {}

double Wavepacket::norm() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += a.squaredNorm();
  return std::sqrt(total);
}

Spinor2 Wavepacket::initial_amplitude(const Vec3& k) const {
  const double d2 =
      brillouin::wrap_to_zone(k - profile_.center.vec()).vec().squaredNorm();
  const double s2 = profile_.sigma * profile_.sigma;
  return profile_.normalization * std::exp(-d2 / (4.0 * s2)) * profile_.spinor;
}

Wavepacket make_gaussian_packet(std::shared_ptr<const KGrid> grid,
                                const WaveVector3& center, double sigma,
                                const Spinor2& spinor, Chirality chi) {
  if (!grid) throw MalformedInput("packet needs a grid");
  if (!(sigma > 0.0)) throw MalformedInput("sigma must be positive");
  if (!(std::abs(spinor.norm() - 1.0) <= 1e-12)) {
    throw MalformedInput("spinor must be normalised");
  }
  PacketProfile profile{center, sigma, spinor, chi, 1.0};
  Wavepacket raw(grid, {}, profile, 0);
  std::vector<Spinor2> amps(grid->size());
  double total = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    amps[i] = raw.initial_amplitude(grid->point(i).vec());
    total += amps[i].squaredNorm();
  }
  if (!(total > 0.0)) throw MalformedInput("packet has no weight on the grid");
  profile.normalization = 1.0 / std::sqrt(total);
  for (auto& a : amps) a *= profile.normalization;
  return Wavepacket(std::move(grid), std::move(amps), profile, 0);
}

Wavepacket evolve(const Wavepacket& packet, std::int64_t steps) {
  if (steps < 0) throw MalformedInput("steps must be non-negative");
  const KGrid& grid = packet.grid();
  const Chirality chi = packet.profile().chirality;
  std::vector<Spinor2> amps(packet.amplitudes());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (amps[i].squaredNorm() < kNegligible) continue;
    amps[i] = walk_power(grid.point(i), chi, steps) * amps[i];
  }
  return Wavepacket(packet.grid_ptr(), std::move(amps), packet.profile(),
                    packet.steps() + steps);
}

Vec3 mean_position(const Wavepacket& packet) {
  const KGrid& grid = packet.grid();
  const auto& profile = packet.profile();
  const std::int64_t t = packet.steps();
  // The step resolves both the Gaussian width and the phase t grad(omega).
  const double h =
      1e-3 * std::min(profile.sigma, 1.0 / static_cast<double>(t + 1));
  auto evolved_at = [&](const Vec3& k) -> Spinor2 {
    return walk_power(WaveVector3(k), profile.chirality, t) *
           packet.initial_amplitude(k);
  };

  Vec3 x = Vec3::Zero();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Spinor2& psi = packet.amplitudes()[i];
    if (psi.squaredNorm() < kNegligible) continue;
    const Vec3 k = grid.point(i).vec();
    for (int a = 0; a < 3; ++a) {
      const Vec3 dk = h * Vec3::Unit(a);
      const Spinor2 derivative = (evolved_at(k + dk) - evolved_at(k - dk)) / (2 * h);
      x(a) += (psi.dot(kI * derivative)).real();
    }
  }
  return x;
}

VelocityMeasurement measure_packet_velocity(const Wavepacket& packet,
                                            std::int64_t steps) {
  if (steps <= 0) throw MalformedInput("steps must be positive");
  VelocityMeasurement out;
  out.displacement = mean_position(evolve(packet, steps)) - mean_position(packet);
  out.velocity = out.displacement / static_cast<double>(steps);
  out.resolution_warning = out.displacement.lpNorm<Eigen::Infinity>() < 2.0;
  return out;
}

}  // namespace planckwalk::wavepacket
