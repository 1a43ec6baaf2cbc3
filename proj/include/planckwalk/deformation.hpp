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

/** @file deformation.hpp
 *  @brief The map D: (omega, k) -> g(n(k)) (sin omega, n(k)) onto the null
 *  cone, and its region-wise inverse.
 *
 *  g(m) = 1 + r * int_0^r ds (1/h_U + 1/h_E)(s m/r). The 1/h_U part is
 *  atanh(r); the 1/h_E part is integrated numerically after substituting
 *  s = r tau, which gives r * J with
 *      J = int_0^1 dtau / (A + (1/2 - q tau^2)^2),
 *  A = ((m_x^2 - m_z^2) / (m_x^2 + m_z^2))^2 and q = m_x^2 + m_y^2.
 */
#pragma once

#include <optional>

#include "planckwalk/brillouin.hpp"
#include "planckwalk/newton.hpp"
#include "planckwalk/types.hpp"

namespace planckwalk::deformation {

using brillouin::RegionId;

/// 1 - |m|^2
double h_U(const Vec3& m);

/// (cos^2 phi - sin^2 phi)^2 + (1/2 - r^2 (1 - cos^2 theta sin^2 phi))^2 with
/// m = r (cos theta cos phi, sin theta, cos theta sin phi); phi = 0 on the
/// m_y axis.
double h_E(const Vec3& m);

struct GValue {
  double value = 1.0;
  std::optional<Vec3> gradient;
};

/// Radially monotone rescaling f(m) used by the deformation.
class Rescaling {
 public:
  virtual ~Rescaling() = default;

  /// one_minus_r2 = 1 - |m|^2, passed separately so callers that know it
  /// exactly (as lambda^2) keep precision near the unit sphere.
  virtual GValue evaluate(const Vec3& m, double one_minus_r2,
                          bool with_gradient) const = 0;

  GValue evaluate(const Vec3& m, bool with_gradient = false) const {
    return evaluate(m, 1.0 - m.squaredNorm(), with_gradient);
  }

  /// Radius at which the ray along unit vector dir first meets the excised
  /// set; 1 if it reaches the unit sphere first.
  virtual double radial_limit(const Vec3& dir) const = 0;
};

/// The rescaling built from h_U and h_E.
class StarRescaling final : public Rescaling {
 public:
  using Rescaling::evaluate;
  GValue evaluate(const Vec3& m, double one_minus_r2,
                  bool with_gradient) const override;
  double radial_limit(const Vec3& dir) const override;
};

const Rescaling& default_rescaling();

/// g_value(m) = default_rescaling().evaluate(m).
/// Throws DomainError if |m| >= 1 or m is in H.
GValue g_value(const Vec3& m, bool with_gradient = false);

/// A point (omega, k) of the on-shell set of one region.
struct OnShellPoint {
  WaveVector3 k;
  Branch branch = Branch::Plus;
  RegionId region = RegionId::R0;
  Chirality chirality = Chirality::Plus;

  /// branch * arccos(lambda(k))
  double omega() const;
  Vec3 n() const;
  double lambda() const;
};

/// Classifies k and checks that n(k) is outside H.
/// Throws DomainError on the boundary class or in the excised set.
OnShellPoint make_on_shell(const WaveVector3& k, Branch branch,
                           Chirality chi = Chirality::Plus);

bool is_valid(const OnShellPoint& x);

FourMomentum deform(const OnShellPoint& x,
                    const Rescaling& f = default_rescaling());

struct RadialInverse {
  Vec3 m = Vec3::Zero();
  double omega = 0.0;  ///< sign(p0) arcsin|m|
  bool saturated = false;  ///< |m| is pinned a few ulps below 1
};

/// Largest |p| whose preimage double precision resolves to a 1e-9 round
/// trip. Beyond it 1 - |n|^2 drops below about 1e-10 and the logarithmic
/// growth of f amplifies the rounding of k.
inline constexpr double kResolvedMomentum = 15.0;

/// Solves r f(r j) = |p| along j = p/|p|.
RadialInverse invert_radial(const FourMomentum& p,
                            const Rescaling& f = default_rescaling());

struct InversionOptions {
  NewtonOptions newton;
  int continuation_steps = 8;
  int multistarts = 8;
  bool polish = true;
  double verify_tolerance = 1e-9;  ///< |deform(k) - p|_inf / |p0|
};

/// Solves n(k) = m in region r: Newton from the linearisation around the
/// region's doubling point, then continuation along s m, then multistart.
/// Throws ConvergenceError when all strategies fail.
WaveVector3 solve_n_in_region(const Vec3& m, RegionId r, Chirality chi,
                              const InversionOptions& options = {});

/// D^-1 restricted to region r. Throws ConvergenceError if the result does
/// not reproduce p to options.verify_tolerance.
OnShellPoint invert_deform(const FourMomentum& p, RegionId r, Chirality chi,
                           const InversionOptions& options = {},
                           const Rescaling& f = default_rescaling());

/// |deform(x) - p|_inf / max(|p0|, tiny)
double roundtrip_error(const OnShellPoint& x, const FourMomentum& p,
                       const Rescaling& f = default_rescaling());

}  // namespace planckwalk::deformation
