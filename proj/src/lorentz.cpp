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
#include "planckwalk/lorentz.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Geometry>

#include "planckwalk/walk.hpp"

namespace planckwalk::lorentz {

namespace {

const Complex kI(0.0, 1.0);

Mat4 metric() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

SpinMatrix2 right_boost(const Vec3& beta) {
  const double b = beta.norm();
  if (b == 0.0) return SpinMatrix2::Identity();
  const double eta = std::atanh(b);
  return std::cosh(eta / 2) * SpinMatrix2::Identity() -
         std::sinh(eta / 2) * walk::sigma_dot(beta / b, Chirality::Plus);
}

SpinMatrix2 right_rotation(const Eigen::Quaterniond& q) {
  return q.w() * SpinMatrix2::Identity() -
         kI * walk::sigma_dot(q.vec(), Chirality::Plus);
}

SpinMatrix2 with_handedness(const SpinMatrix2& right, Handedness h) {
  return h == Handedness::Right ? right : SpinMatrix2(right.adjoint().inverse());
}

}  // namespace

BoostParam::BoostParam(const Vec3& b) : beta(b) {
  if (!(beta.norm() < 1.0)) throw DomainError("boost requires |beta| < 1");
}

BoostParam BoostParam::from_rapidity(const Vec3& direction, double rapidity) {
  const double n = direction.norm();
  if (n == 0.0) return BoostParam(Vec3::Zero());
  return BoostParam(std::tanh(rapidity) * direction / n);
}

double BoostParam::rapidity() const { return std::atanh(beta.norm()); }

RotationParam::RotationParam(const Vec3& a, double theta) : axis(a), angle(theta) {
  if (!(std::abs(axis.norm() - 1.0) <= 1e-12)) {
    throw DomainError("rotation axis must be a unit vector");
  }
}

RotationParam RotationParam::about(const Vec3& a, double theta) {
  if (a.norm() == 0.0) throw DomainError("rotation axis must be nonzero");
  return RotationParam(a.normalized(), theta);
}

LorentzMatrix::LorentzMatrix(const Mat4& m, double tolerance) : m_(m) {
  if (!(metric_defect() <= tolerance)) {
    throw DomainError("matrix does not preserve the Minkowski metric");
  }
}

FourMomentum LorentzMatrix::apply(const FourMomentum& p) const {
  return FourMomentum(Vec4(m_ * p.vec()));
}

LorentzMatrix LorentzMatrix::operator*(const LorentzMatrix& other) const {
  LorentzMatrix out;
  out.m_ = m_ * other.m_;
  return out;
}

LorentzMatrix LorentzMatrix::inverse() const {
  LorentzMatrix out;
  out.m_ = metric() * m_.transpose() * metric();
  return out;
}

double LorentzMatrix::metric_defect() const {
  return (m_.transpose() * metric() * m_ - metric()).cwiseAbs().maxCoeff();
}

LorentzMatrix boost_matrix(const BoostParam& b) {
  const double beta = b.beta.norm();
  Mat4 m = Mat4::Identity();
  if (beta > 0.0) {
    const double gamma = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
    const Vec3 u = b.beta / beta;
    m(0, 0) = gamma;
    m.block<1, 3>(0, 1) = -gamma * b.beta.transpose();
    m.block<3, 1>(1, 0) = -gamma * b.beta;
    m.block<3, 3>(1, 1) = Mat3::Identity() + (gamma - 1.0) * u * u.transpose();
  }
  return LorentzMatrix(m);
}

LorentzMatrix rotation_matrix(const RotationParam& r) {
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(1, 1) = Eigen::AngleAxisd(r.angle, r.axis).toRotationMatrix();
  return LorentzMatrix(m);
}

SpinorRep spinor_rep(const BoostParam& b, Handedness h) {
  return {with_handedness(right_boost(b.beta), h), h};
}

SpinorRep spinor_rep(const RotationParam& r, Handedness h) {
  const double half = r.angle / 2;
  const SpinMatrix2 m = std::cos(half) * SpinMatrix2::Identity() -
                        kI * std::sin(half) * walk::sigma_dot(r.axis, Chirality::Plus);
  return {with_handedness(m, h), h};
}

SpinorRep spinor_rep(const LorentzMatrix& t, Handedness h) {
  // Polar split T = B(-v) R, where B(-v) carries e_0 to T e_0 = gamma (1, v).
  const Mat4& m = t.matrix();
  const Vec3 v = m.block<3, 1>(1, 0) / m(0, 0);
  const Mat4 rot4 = boost_matrix(BoostParam(v)).matrix() * m;
  const Eigen::Quaterniond q(Mat3(rot4.block<3, 3>(1, 1)));
  const SpinMatrix2 right = right_boost(-v) * right_rotation(q.normalized());
  return {with_handedness(right, h), h};
}

SpinMatrix2 weyl_operator(double p0, const Vec3& p, Chirality chi) {
  return p0 * SpinMatrix2::Identity() - walk::sigma_dot(p, chi);
}

TransformResult transform_with_report(const OnShellPoint& x,
                                      const LorentzMatrix& t,
                                      const deformation::InversionOptions& options,
                                      const deformation::Rescaling& f) {
  const FourMomentum p = t.apply(deformation::deform(x, f));
  TransformResult out;
  out.point = deformation::invert_deform(p, x.region, x.chirality, options, f);
  const Vec3 n = out.point.n();
  const double lambda = out.point.lambda();
  const double g = f.evaluate(n, lambda * lambda, false).value;
  const double s = p.p0 / g;
  out.onshell_residual = std::abs(s * s - n.squaredNorm());
  const bool near_plane = std::abs(std::abs(n.x()) - std::abs(n.z())) < 1e-6;
  out.near_excision =
      near_plane && 2.0 * (n.x() * n.x() + n.y() * n.y()) > 1.0 - 1e-6;
  return out;
}

OnShellPoint nonlinear_transform(const OnShellPoint& x, const LorentzMatrix& t,
                                 const deformation::InversionOptions& options,
                                 const deformation::Rescaling& f) {
  return transform_with_report(x, t, options, f).point;
}

double zone_distance(const WaveVector3& a, const WaveVector3& b) {
  return brillouin::wrap_to_zone(a.vec() - b.vec()).norm();
}

double covariance_residual(const OnShellPoint& x, const OnShellPoint& x_prime,
                           const SpinMatrix2& gamma_tilde,
                           const SpinMatrix2& gamma) {
  const auto& f = deformation::default_rescaling();
  auto scale = [&](const OnShellPoint& y) {
    const double lambda = y.lambda();
    return f.evaluate(y.n(), lambda * lambda, false).value;
  };
  const double ratio = scale(x_prime) / scale(x);
  const SpinMatrix2 lhs =
      weyl_operator(std::sin(x.omega()), x.n(), x.chirality);
  const SpinMatrix2 rhs =
      ratio * gamma_tilde.inverse() *
      weyl_operator(std::sin(x_prime.omega()), x_prime.n(), x.chirality) *
      gamma;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

CovarianceReport covariance_check(const WaveVector3& k, Chirality chi,
                                  const LorentzMatrix& t, SpinorPairing pairing,
                                  double threshold, Branch branch) {
  CovarianceReport report;
  report.residual = std::numeric_limits<double>::infinity();
  try {
    const OnShellPoint x = deformation::make_on_shell(k, branch, chi);
    const OnShellPoint xp = nonlinear_transform(x, t);
    report.k_prime = xp.k;

    const SpinMatrix2 right = spinor_rep(t, Handedness::Right).matrix;
    const SpinMatrix2 left = spinor_rep(t, Handedness::Left).matrix;
    const SpinMatrix2& sy = walk::pauli(Chirality::Plus)[1];
    SpinMatrix2 gamma_tilde = left, gamma = right;
    if (chi == Chirality::Minus) {
      gamma_tilde = sy * right * sy;
      gamma = sy * left * sy;
    }
    if (pairing == SpinorPairing::Swapped) std::swap(gamma_tilde, gamma);

    const auto& f = deformation::default_rescaling();
    const double lk = x.lambda(), lkp = xp.lambda();
    report.f_ratio = f.evaluate(xp.n(), lkp * lkp, false).value /
                     f.evaluate(x.n(), lk * lk, false).value;
    report.residual = covariance_residual(x, xp, gamma_tilde, gamma);
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  report.pass = report.error.empty() && report.residual <= threshold;
  return report;
}

LorentzMatrix generate(const Generator& g, double parameter) {
  if (const auto* b = std::get_if<BoostGenerator>(&g)) {
    return boost_matrix(BoostParam::from_rapidity(b->direction, parameter));
  }
  const auto& r = std::get<RotationGenerator>(g);
  return rotation_matrix(RotationParam::about(r.axis, parameter));
}

OrbitTrace trace_orbit(const OnShellPoint& x0, const Generator& generator,
                       int steps, double max_param,
                       const deformation::InversionOptions& options,
                       const deformation::Rescaling& f) {
  if (steps < 2) throw MalformedInput("orbit needs at least two steps");
  OrbitTrace trace;
  trace.generator = generator;
  trace.max_parameter = max_param;
  trace.requested_steps = steps;
  for (int i = 0; i < steps; ++i) {
    const double s = max_param * i / (steps - 1);
    try {
      const TransformResult r =
          transform_with_report(x0, generate(generator, s), options, f);
      trace.samples.push_back(
          {i, s, r.point, r.onshell_residual, r.near_excision});
    } catch (const std::exception& e) {
      trace.truncated = true;
      trace.failure = "step " + std::to_string(i) + ": " + e.what();
      break;
    }
  }
  return trace;
}

}  // namespace planckwalk::lorentz
