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
#include "planckwalk/brillouin.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>
#include <boost/math/tools/minima.hpp>

#include "planckwalk/newton.hpp"
#include "planckwalk/walk.hpp"

namespace planckwalk::brillouin {

namespace {

constexpr double kFaceTolerance = 1e-12;

std::array<Vec3, 6> second_shell() {
  std::array<Vec3, 6> g;
  for (int i = 0; i < 3; ++i) {
    g[2 * i] = 2.0 * kPi * Vec3::Unit(i);
    g[2 * i + 1] = -2.0 * kPi * Vec3::Unit(i);
  }
  return g;
}

// Nearest point of pi * D3, the reciprocal lattice (Conway-Sloane decoder).
Vec3 nearest_reciprocal(const Vec3& k) {
  const Vec3 x = k / kPi;
  Vec3 f = x.array().round();
  const auto parity = static_cast<long long>(f.sum());
  if (parity % 2 != 0) {
    Eigen::Index worst = 0;
    (x - f).cwiseAbs().maxCoeff(&worst);
    f(worst) += x(worst) > f(worst) ? 1.0 : -1.0;
  }
  return kPi * f;
}

bool on_face(const Vec3& k) {
  for (const Vec3& g : reciprocal_neighbours()) {
    if (std::abs(k.dot(g)) >= 0.5 * g.squaredNorm() - kFaceTolerance * 10.0) {
      return true;
    }
  }
  return false;
}

bool lex_greater(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (a(i) > b(i) + kFaceTolerance) return true;
    if (a(i) < b(i) - kFaceTolerance) return false;
  }
  return false;
}

}  // namespace

const std::array<Vec3, 8>& lattice_generators() {
  static const std::array<Vec3, 8> h = [] {
    std::array<Vec3, 8> out;
    int i = 0;
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) out[i++] = Vec3(sx, sy, sz);
    return out;
  }();
  return h;
}

const std::array<Vec3, 12>& reciprocal_neighbours() {
  static const std::array<Vec3, 12> g = [] {
    std::array<Vec3, 12> out;
    int i = 0;
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3;
      for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
          Vec3 v = Vec3::Zero();
          v(a) = sa * kPi;
          v(b) = sb * kPi;
          out[i++] = v;
        }
      }
    }
    return out;
  }();
  return g;
}

const std::array<Vec3, 3>& reciprocal_basis() {
  static const std::array<Vec3, 3> b = {kPi * Vec3(0, 1, 1),
                                        kPi * Vec3(1, 0, 1),
                                        kPi * Vec3(1, 1, 0)};
  return b;
}

bool is_reciprocal_vector(const Vec3& g, double tolerance) {
  const Vec3 x = g / kPi;
  const Vec3 f = x.array().round();
  if ((x - f).cwiseAbs().maxCoeff() > tolerance) return false;
  return static_cast<long long>(f.sum()) % 2 == 0;
}

bool in_zone(const Vec3& k, double tolerance) {
  for (const Vec3& g : reciprocal_neighbours()) {
    if (std::abs(k.dot(g)) / g.norm() > 0.5 * g.norm() + tolerance) {
      return false;
    }
  }
  return true;
}

WaveVector3 wrap_to_zone(const Vec3& k_raw) {
  const Vec3 r = k_raw - nearest_reciprocal(k_raw);
  if (!on_face(r)) return WaveVector3(r);

  Vec3 best = r;
  auto consider = [&](const Vec3& candidate) {
    if (in_zone(candidate, 1e-10) && lex_greater(candidate, best)) {
      best = candidate;
    }
  };
  for (const Vec3& g : reciprocal_neighbours()) consider(r - g);
  for (const Vec3& g : second_shell()) consider(r - g);
  return WaveVector3(best);
}

int index_of(RegionId r) { return static_cast<int>(r); }

RegionId region_from_index(int i) {
  if (i < -1 || i > 3) throw MalformedInput("region index out of range");
  return static_cast<RegionId>(i);
}

RegionId classify_region(const WaveVector3& k, Chirality chi,
                         double tolerance) {
  const double lambda = walk::lambda_of_k(k, chi);
  const double c2 = std::cos(2.0 * k.y());
  if (std::abs(lambda) <= tolerance || std::abs(c2) <= tolerance) {
    return RegionId::Boundary;
  }
  if (c2 > 0.0) return lambda > 0.0 ? RegionId::R0 : RegionId::R1;
  return lambda > 0.0 ? RegionId::R2 : RegionId::R3;
}

int lambda_sign(RegionId r) {
  switch (r) {
    case RegionId::R0:
    case RegionId::R2:
      return 1;
    case RegionId::R1:
    case RegionId::R3:
      return -1;
    default:
      return 0;
  }
}

int cos2ky_sign(RegionId r) {
  switch (r) {
    case RegionId::R0:
    case RegionId::R1:
      return 1;
    case RegionId::R2:
    case RegionId::R3:
      return -1;
    default:
      return 0;
  }
}

double jacobian_n(const WaveVector3& k, Chirality chi) {
  return std::cos(2.0 * k.y()) * walk::lambda_of_k(k, chi);
}

bool in_H(const Vec3& m, double tolerance) {
  const bool on_plane = std::abs(std::abs(m.x()) - std::abs(m.z())) <= tolerance;
  const double x2 = m.x() * m.x(), y2 = m.y() * m.y();
  return on_plane && 2.0 * x2 + y2 <= 1.0 + tolerance &&
         2.0 * x2 + 2.0 * y2 >= 1.0 - tolerance;
}

Vec3 ellipse_point(ArchSign s, double t) {
  const double sz = s == ArchSign::Plus ? 1.0 : -1.0;
  return Vec3(std::sin(t), std::cos(t), sz * std::sin(t)) / std::sqrt(2.0);
}

std::array<double, 2> arch_interval(int quadrant) {
  switch (quadrant) {
    case 1:
      return {0.0, kPi / 2};
    case 2:
      return {kPi / 2, kPi};
    case 3:
      return {-kPi / 2, 0.0};
    case 4:
      return {-kPi, -kPi / 2};
    default:
      throw MalformedInput("arch quadrant must be in 1..4");
  }
}

double distance_to_arch(const Vec3& m, ArchSign s, double t_lo, double t_hi) {
  auto f = [&](double t) { return (m - ellipse_point(s, t)).squaredNorm(); };
  constexpr int kScan = 64;
  const double h = (t_hi - t_lo) / kScan;
  int best = 0;
  double best_value = f(t_lo);
  for (int i = 1; i <= kScan; ++i) {
    const double v = f(t_lo + i * h);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = std::max(t_lo, t_lo + (best - 1) * h);
  const double hi = std::min(t_hi, t_lo + (best + 1) * h);
  const auto refined = boost::math::tools::brent_find_minima(f, lo, hi, 40);
  return std::sqrt(std::min(best_value, refined.second));
}

bool in_Q(const Vec3& m, ImageSet which, double tolerance) {
  if (!(m.norm() < 1.0)) return false;
  const ArchSign t1_arch = which == ImageSet::Qa ? ArchSign::Plus : ArchSign::Minus;
  const ArchSign t2_arch = which == ImageSet::Qa ? ArchSign::Minus : ArchSign::Plus;
  auto near = [&](ArchSign s, double lo, double hi) {
    const double plane = s == ArchSign::Plus ? m.x() - m.z() : m.x() + m.z();
    if (std::abs(plane) / std::sqrt(2.0) > tolerance) return false;
    return distance_to_arch(m, s, lo, hi) <= tolerance;
  };
  if (near(t1_arch, -kPi / 2, kPi / 2)) return false;
  if (near(t2_arch, kPi / 2, kPi) || near(t2_arch, -kPi, -kPi / 2)) return false;
  return true;
}

ImageSet image_set_of(RegionId r) {
  if (r == RegionId::Boundary) throw MalformedInput("boundary has no image set");
  return lambda_sign(r) > 0 ? ImageSet::Qa : ImageSet::Qb;
}

std::vector<DoublingPoint> doubling_points(Chirality chi) {
  const double h = kPi / 2;
  const std::array<WaveVector3, 4> ks = {
      WaveVector3(0, 0, 0), WaveVector3(h, h, h), WaveVector3(-h, -h, -h),
      WaveVector3(-kPi, 0, 0)};
  std::vector<DoublingPoint> out;
  for (const auto& k : ks) {
    const double det = walk::n_jacobian(k, chi).determinant();
    out.push_back({k, classify_region(k, chi), det < 0.0});
  }
  return out;
}

WaveVector3 doubling_point_in(RegionId r, Chirality chi) {
  for (const auto& d : doubling_points(chi)) {
    if (d.region == r) return d.k;
  }
  throw MalformedInput("boundary has no doubling point");
}

namespace {

Eigen::Quaterniond quaternion_of(const WaveVector3& k) {
  const Eigen::Quaterniond qx(std::cos(k.x()), std::sin(k.x()), 0, 0);
  const Eigen::Quaterniond qy(std::cos(k.y()), 0, std::sin(k.y()), 0);
  const Eigen::Quaterniond qz(std::cos(k.z()), 0, 0, std::sin(k.z()));
  return qx * qy * qz;
}

std::optional<WaveVector3> plus_preimage(const Vec3& m, RegionId r,
                                         double gimbal_tolerance) {
  const double r2 = m.squaredNorm();
  if (!(r2 <= 1.0) || r == RegionId::Boundary) return std::nullopt;
  const Eigen::Quaterniond q(lambda_sign(r) * std::sqrt(1.0 - r2), m.x(), m.y(),
                             m.z());
  // q(k) = q_x q_y q_z, so the rotation of q factors as R_x(2k_x) R_y(2k_y)
  // R_z(2k_z).
  const Mat3 rot = q.toRotationMatrix();
  const double sb = std::clamp(rot(0, 2), -1.0, 1.0);
  const double cb = cos2ky_sign(r) * std::sqrt(std::max(0.0, 1.0 - sb * sb));
  if (std::abs(cb) <= gimbal_tolerance) return std::nullopt;
  const double a = std::atan2(-rot(1, 2) / cb, rot(2, 2) / cb);
  const double b = std::atan2(sb, cb);
  const double c = std::atan2(-rot(0, 1) / cb, rot(0, 0) / cb);
  Vec3 k(a / 2, b / 2, c / 2);
  if (quaternion_of(WaveVector3(k)).w() * q.w() < 0.0) k.x() += kPi;
  return wrap_to_zone(k);
}

}  // namespace

std::optional<WaveVector3> n_preimage(const Vec3& m, RegionId r, Chirality chi,
                                      double gimbal_tolerance) {
  if (chi == Chirality::Plus) return plus_preimage(m, r, gimbal_tolerance);
  const auto k = plus_preimage(-m, r, gimbal_tolerance);
  if (!k) return std::nullopt;
  return wrap_to_zone(-k->vec());
}

bool arch_included(RegionId r, const ArchId& arch) {
  const bool even = arch.quadrant % 2 == 0;
  const bool in_a = arch.sign == ArchSign::Plus ? even : !even;
  return lambda_sign(r) > 0 ? in_a : !in_a;
}

ArchReport verify_arch_inclusion(RegionId r, const ArchId& arch, int samples) {
  if (samples < 1) throw MalformedInput("samples must be >= 1");
  if (r == RegionId::Boundary) throw MalformedInput("region must be interior");

  ArchReport report;
  report.region = r;
  report.arch = arch;
  report.samples = samples;
  report.expected_inclusion = arch_included(r, arch);

  const NewtonOptions options;
  // A preimage at distance e from cos(2k_y) = 0 lands within O(e^2) of the
  // arch, so solutions are only certified beyond sqrt(tolerance).
  const double margin = 30.0 * std::sqrt(options.tolerance);
  const auto [t_lo, t_hi] = arch_interval(arch.quadrant);
  const std::array<double, 4> offsets = {kPi / 4, -kPi / 4, 3 * kPi / 4,
                                         -3 * kPi / 4};
  constexpr int kScan = 128;

  for (int s = 0; s < samples; ++s) {
    const double t = t_lo + (t_hi - t_lo) * (s + 0.5) / samples;
    const Vec3 target = ellipse_point(arch.sign, t);

    // Seeds along the lines k_x = +-pi/4 (mod pi/2), k_z = +-k_x, which n
    // maps onto the arches.
    std::vector<std::pair<double, Vec3>> seeds;
    for (double kx : offsets) {
      for (double kz : offsets) {
        for (int j = 0; j < kScan; ++j) {
          const Vec3 k(kx, -kPi + 2 * kPi * j / kScan, kz);
          if (classify_region(WaveVector3(k)) != r) continue;
          const double d = (walk::n_of_k(WaveVector3(k), Chirality::Plus) - target)
                               .lpNorm<Eigen::Infinity>();
          seeds.emplace_back(d, k);
        }
      }
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (seeds.size() > 6) seeds.resize(6);

    bool solved = false;
    for (const auto& [d, seed] : seeds) {
      const NewtonResult res =
          newton_preimage(target, r, Chirality::Plus, seed, options);
      if (!res.converged) continue;
      const double lam = walk::lambda_of_k(res.k, Chirality::Plus);
      const double c2 = std::cos(2.0 * res.k.y());
      if (std::abs(lam) > margin && std::abs(c2) > margin) {
        solved = true;
        break;
      }
    }
    if (solved) {
      ++report.solved;
    } else if (!n_preimage(target, r, Chirality::Plus, margin)) {
      ++report.disproved;
    } else {
      ++report.nonconverged;
    }
  }
  report.contradictions = report.expected_inclusion
                              ? report.samples - report.solved
                              : report.solved;
  return report;
}

}  // namespace planckwalk::brillouin
