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

/** @file wavepacket.hpp
 *  @brief One-particle states in wavevector space evolved by A_k^t.
 */
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "planckwalk/types.hpp"

namespace planckwalk::wavepacket {

/// Uniform grid origin + sum_a (i_a / N_a) b_a over one reciprocal cell,
/// wrapped into the zone.
class KGrid {
 public:
  /// Throws MalformedInput if any count is below 4.
  explicit KGrid(std::array<int, 3> counts, const Vec3& origin = Vec3::Zero());

  std::size_t size() const { return points_.size(); }
  const WaveVector3& point(std::size_t i) const { return points_[i]; }
  const std::array<int, 3>& counts() const { return counts_; }
  const Vec3& origin() const { return origin_; }

 private:
  std::array<int, 3> counts_;
  Vec3 origin_;
  std::vector<WaveVector3> points_;
};

/// A^t = cos(t omega) - i sin(t omega) n.sigma / |n|, with t omega reduced
/// mod 2 pi.
SpinMatrix2 walk_power(const WaveVector3& k, Chirality chi, std::int64_t t);

/// Eigenvector of A_k with eigenvalue exp(-i omega_branch(k)).
Spinor2 branch_spinor(const WaveVector3& k, Chirality chi, Branch branch);

/// grad omega; zero at the doubling points where the cone apex has none.
Vec3 group_velocity(const WaveVector3& k, Chirality chi, Branch branch);

struct PacketProfile {
  WaveVector3 center;
  double sigma = 0.0;
  Spinor2 spinor = Spinor2::Zero();
  Chirality chirality = Chirality::Plus;
  double normalization = 1.0;
};

class Wavepacket {
 public:
  Wavepacket(std::shared_ptr<const KGrid> grid, std::vector<Spinor2> amplitudes,
             PacketProfile profile, std::int64_t steps);

  const KGrid& grid() const { return *grid_; }
  std::shared_ptr<const KGrid> grid_ptr() const { return grid_; }
  const std::vector<Spinor2>& amplitudes() const { return amplitudes_; }
  const PacketProfile& profile() const { return profile_; }
  std::int64_t steps() const { return steps_; }
  double norm() const;

  /// Initial amplitude at an arbitrary (off-grid) wavevector.
  Spinor2 initial_amplitude(const Vec3& k) const;

 private:
  std::shared_ptr<const KGrid> grid_;
  std::vector<Spinor2> amplitudes_;
  PacketProfile profile_;
  std::int64_t steps_;
};

/// Amplitudes proportional to exp(-|k - center|^2 / (4 sigma^2)) spinor with
/// the zone-wrapped distance. Throws MalformedInput for sigma <= 0 or a
/// spinor that is not normalised.
Wavepacket make_gaussian_packet(std::shared_ptr<const KGrid> grid,
                                const WaveVector3& center, double sigma,
                                const Spinor2& spinor,
                                Chirality chi = Chirality::Plus);

Wavepacket evolve(const Wavepacket& packet, std::int64_t steps);

/// <x> = sum_k Re psi^dagger (i grad_k) psi after the packet's own steps.
Vec3 mean_position(const Wavepacket& packet);

struct VelocityMeasurement {
  Vec3 velocity = Vec3::Zero();
  Vec3 displacement = Vec3::Zero();
  bool resolution_warning = false;  ///< displacement below two lattice steps
};

VelocityMeasurement measure_packet_velocity(const Wavepacket& packet,
                                            std::int64_t steps);

}  // namespace planckwalk::wavepacket
