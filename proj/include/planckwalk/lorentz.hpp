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

/** @file lorentz.hpp
 *  @brief Linear Lorentz group, its spin-1/2 representations, and the
 *  nonlinear action L = D^-1 T D on each region.
 *
 *  Boosts are passive: a boost with velocity beta maps p0 to
 *  gamma (p0 - beta.p). The right-handed lift M of T satisfies
 *  M (p0 + p.sigma) M^dagger = (Tp)0 + (Tp).sigma; the left-handed one is
 *  (M^dagger)^-1.
 */
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "planckwalk/deformation.hpp"
#include "planckwalk/types.hpp"

namespace planckwalk::lorentz {

using deformation::OnShellPoint;

struct BoostParam {
  Vec3 beta;

  /// Throws DomainError unless |beta| < 1.
  explicit BoostParam(const Vec3& beta);
  static BoostParam from_rapidity(const Vec3& direction, double rapidity);
  double rapidity() const;
};

struct RotationParam {
  Vec3 axis;
  double angle;

  /// Throws DomainError unless |axis| = 1 to 1e-12.
  RotationParam(const Vec3& axis, double angle);
  /// Normalises any nonzero axis.
  static RotationParam about(const Vec3& axis, double angle);
};

class LorentzMatrix {
 public:
  LorentzMatrix() : m_(Mat4::Identity()) {}
  /// Throws DomainError if the metric defect exceeds tolerance.
  explicit LorentzMatrix(const Mat4& m, double tolerance = 1e-10);

  const Mat4& matrix() const { return m_; }
  FourMomentum apply(const FourMomentum& p) const;
  LorentzMatrix operator*(const LorentzMatrix& other) const;
  LorentzMatrix inverse() const;
  /// |T^T eta T - eta|_max
  double metric_defect() const;

 private:
  Mat4 m_;
};

LorentzMatrix boost_matrix(const BoostParam& b);
LorentzMatrix rotation_matrix(const RotationParam& r);

enum class Handedness { Right, Left };

struct SpinorRep {
  SpinMatrix2 matrix;
  Handedness handedness;
};

SpinorRep spinor_rep(const BoostParam& b, Handedness h);
SpinorRep spinor_rep(const RotationParam& r, Handedness h);
/// Lift of an arbitrary proper orthochronous T, defined up to sign.
SpinorRep spinor_rep(const LorentzMatrix& t, Handedness h);

/// p0 I - p.sigma^(chi)
SpinMatrix2 weyl_operator(double p0, const Vec3& p, Chirality chi);

struct TransformResult {
  OnShellPoint point;
  /// |(p'0 / f(n(k')))^2 - |n(k')|^2| with p' = T D(x)
  double onshell_residual = 0.0;
  bool near_excision = false;
};

TransformResult transform_with_report(
    const OnShellPoint& x, const LorentzMatrix& t,
    const deformation::InversionOptions& options = {},
    const deformation::Rescaling& f = deformation::default_rescaling());

OnShellPoint nonlinear_transform(
    const OnShellPoint& x, const LorentzMatrix& t,
    const deformation::InversionOptions& options = {},
    const deformation::Rescaling& f = deformation::default_rescaling());

/// Distance between wavevectors modulo the reciprocal lattice.
double zone_distance(const WaveVector3& a, const WaveVector3& b);

enum class SpinorPairing { Matched, Swapped };

struct CovarianceReport {
  double residual = 0.0;
  double f_ratio = 1.0;  ///< f(k') / f(k)
  bool pass = false;
  WaveVector3 k_prime;
  std::string error;  ///< empty unless the transform itself failed
};

/// Residual of n_mu(k) sigma^mu = (f(k')/f(k)) G~^-1 n_mu(k') sigma^mu G.
/// For the + walk (G~, G) = (left lift, right lift); for the - walk both are
/// conjugated by sigma_y and exchanged.
CovarianceReport covariance_check(const WaveVector3& k, Chirality chi,
                                  const LorentzMatrix& t,
                                  SpinorPairing pairing = SpinorPairing::Matched,
                                  double threshold = 1e-7,
                                  Branch branch = Branch::Plus);

/// Same residual for explicit spinor matrices and an explicit image point.
double covariance_residual(const OnShellPoint& x, const OnShellPoint& x_prime,
                           const SpinMatrix2& gamma_tilde,
                           const SpinMatrix2& gamma);

struct BoostGenerator {
  Vec3 direction;  ///< parameter is rapidity
};
struct RotationGenerator {
  Vec3 axis;  ///< parameter is angle
};
using Generator = std::variant<BoostGenerator, RotationGenerator>;

LorentzMatrix generate(const Generator& g, double parameter);

struct OrbitSample {
  int step = 0;
  double parameter = 0.0;
  OnShellPoint point;
  double onshell_residual = 0.0;
  bool near_excision = false;
};

struct OrbitTrace {
  Generator generator;
  double max_parameter = 0.0;
  int requested_steps = 0;
  std::vector<OrbitSample> samples;
  bool truncated = false;
  std::string failure;
};

/// Samples L_{T(s)}(x0) at s = max_param * i / (steps - 1), each computed
/// directly from x0. Stops at the first inversion failure.
OrbitTrace trace_orbit(
    const OnShellPoint& x0, const Generator& generator, int steps,
    double max_param, const deformation::InversionOptions& options = {},
    const deformation::Rescaling& f = deformation::default_rescaling());

}  // namespace planckwalk::lorentz
