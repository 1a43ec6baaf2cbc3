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

/** @file brillouin.hpp
 *  @brief Zone geometry, region decomposition, H excision and the image sets.
 *
 *  The real-space lattice is generated by h = (+-1, +-1, +-1). Its reciprocal
 *  lattice is pi times the FCC lattice, and the zone is the rhombic
 *  dodecahedron |k_a| + |k_b| <= pi with opposite faces identified.
 */
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "planckwalk/types.hpp"

namespace planckwalk::brillouin {

/// The eight nearest-neighbour generators h_j.
const std::array<Vec3, 8>& lattice_generators();

/// The twelve shortest reciprocal vectors; they are the face normals of the
/// zone, and k is inside iff |k.G| <= |G|^2 / 2 for each.
const std::array<Vec3, 12>& reciprocal_neighbours();

/// Primitive reciprocal vectors b1 = pi(0,1,1), b2 = pi(1,0,1), b3 = pi(1,1,0).
const std::array<Vec3, 3>& reciprocal_basis();

bool is_reciprocal_vector(const Vec3& g, double tolerance = 1e-9);

bool in_zone(const Vec3& k, double tolerance = 1e-12);

/// Canonical representative modulo the reciprocal lattice. Points on faces
/// resolve to the lexicographically largest (k_x, k_y, k_z) image.
WaveVector3 wrap_to_zone(const Vec3& k_raw);

enum class RegionId { R0 = 0, R1 = 1, R2 = 2, R3 = 3, Boundary = -1 };

int index_of(RegionId r);
RegionId region_from_index(int i);

RegionId classify_region(const WaveVector3& k, Chirality chi = Chirality::Plus,
                         double tolerance = 1e-12);

/// Regions 0 and 2 have lambda > 0; 1 and 3 have lambda < 0.
int lambda_sign(RegionId r);
/// Regions 0 and 1 have cos(2 k_y) > 0; 2 and 3 have cos(2 k_y) < 0.
int cos2ky_sign(RegionId r);

/// det(dn/dk) = cos(2 k_y) lambda(k); the same for both chiralities.
double jacobian_n(const WaveVector3& k, Chirality chi = Chirality::Plus);

/// The excision set: m_x = +-m_z, 2 m_x^2 + m_y^2 <= 1, 2 m_x^2 + 2 m_y^2 >= 1.
bool in_H(const Vec3& m, double tolerance = 1e-12);

enum class ArchSign { Plus, Minus };

struct ArchId {
  ArchSign sign = ArchSign::Plus;
  int quadrant = 1;  ///< 1..4
};

/// e_+-(t) = (sin t, cos t, +-sin t) / sqrt(2)
Vec3 ellipse_point(ArchSign s, double t);

/// Open parameter interval of arch quadrant j.
std::array<double, 2> arch_interval(int quadrant);

/// Distance from m to e_s restricted to the closure of the given t-range.
double distance_to_arch(const Vec3& m, ArchSign s, double t_lo, double t_hi);

enum class ImageSet { Qa, Qb };

/// Q_a = U \ (e+(T1) u e-(T2)); Q_b = U \ (e+(T2) u e-(T1)), with
/// T1 = (-pi/2, pi/2) and T2 its complement.
bool in_Q(const Vec3& m, ImageSet which, double tolerance = 1e-9);

/// n(B'_0) = n(B'_2) = Q_a and n(B'_1) = n(B'_3) = Q_b.
ImageSet image_set_of(RegionId r);

struct DoublingPoint {
  WaveVector3 k;
  RegionId region;
  bool chirality_flip;  ///< orientation of n reversed relative to k_0
};

/// k_0 = 0, k_1 = (pi/2)(1,1,1), k_2 = -(pi/2)(1,1,1), k_3 = -pi (1,0,0).
std::vector<DoublingPoint> doubling_points(Chirality chi = Chirality::Plus);

/// The doubling point lying in region r.
WaveVector3 doubling_point_in(RegionId r, Chirality chi = Chirality::Plus);

/// Closed-form preimage of m under n restricted to region r, obtained from
/// the Euler-angle factorisation of the unit quaternion (lambda, n). Returns
/// nullopt when the only candidate lies on cos(2 k_y) = 0.
std::optional<WaveVector3> n_preimage(const Vec3& m, RegionId r,
                                      Chirality chi = Chirality::Plus,
                                      double gimbal_tolerance = 1e-12);

/// Whether arch E^s_j belongs to n(B'_r).
bool arch_included(RegionId r, const ArchId& arch);

struct ArchReport {
  RegionId region = RegionId::R0;
  ArchId arch;
  bool expected_inclusion = false;
  int samples = 0;
  int solved = 0;        ///< Newton converged inside the region
  int disproved = 0;     ///< no region preimage exists (closed form)
  int nonconverged = 0;  ///< a preimage exists but Newton missed it
  int contradictions = 0;
};

/// Solves n(k) = e_s(t) in region r for t sampled in the arch interval.
/// Only defined for the + walk.
ArchReport verify_arch_inclusion(RegionId r, const ArchId& arch, int samples);

}  // namespace planckwalk::brillouin
