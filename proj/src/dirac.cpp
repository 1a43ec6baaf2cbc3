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
#include "planckwalk/dirac.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace planckwalk::dirac {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

DiracParams::DiracParams(double n_, double m_) : n(n_), m(m_) {
  if (!(n >= 0.0 && n <= 1.0 && m >= 0.0 && m <= 1.0) ||
      !(std::abs(n * n + m * m - 1.0) <= 1e-12)) {
    throw DomainError("Dirac parameters require n, m in [0,1], n^2 + m^2 = 1");
  }
}

DiracParams DiracParams::from_mass(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("mass must lie in [0, 1]");
  return DiracParams(std::sqrt((1.0 - m) * (1.0 + m)), m);
}

SpinMatrix4 build_dirac_matrix(const WaveVector3& k, const DiracParams& params,
                               Chirality chi) {
  const SpinMatrix2 a = walk::build_weyl_matrix(k, chi);
  SpinMatrix4 d;
  d.topLeftCorner<2, 2>() = params.n * a;
  d.bottomRightCorner<2, 2>() = params.n * a.adjoint();
  d.topRightCorner<2, 2>() = kI * params.m * SpinMatrix2::Identity();
  d.bottomLeftCorner<2, 2>() = kI * params.m * SpinMatrix2::Identity();
  return d;
}

std::vector<DiracMode> dirac_modes(const WaveVector3& k, const DiracParams& params,
                                   Chirality chi) {
  const Eigen::ComplexEigenSolver<SpinMatrix4> solver(
      build_dirac_matrix(k, params, chi));
  std::vector<DiracMode> modes;
  for (int i = 0; i < 4; ++i) {
    double omega = -std::arg(solver.eigenvalues()(i));
    if (omega <= -kPi) omega += 2.0 * kPi;
    const Branch b = omega < 0.0 ? Branch::Minus : Branch::Plus;
    modes.push_back({{omega, k, b}, solver.eigenvectors().col(i).normalized()});
  }
  std::sort(modes.begin(), modes.end(), [](const DiracMode& x, const DiracMode& y) {
    return x.point.omega < y.point.omega;
  });
  return modes;
}

std::vector<walk::DispersionPoint> dirac_dispersion(const WaveVector3& k,
                                                    const DiracParams& params,
                                                    Chirality chi) {
  std::vector<walk::DispersionPoint> out;
  for (const auto& mode : dirac_modes(k, params, chi)) out.push_back(mode.point);
  return out;
}

double dirac_omega(const WaveVector3& k, const DiracParams& params, Chirality chi) {
  const double c = params.n * walk::lambda_of_k(k, chi);
  const double s = std::sqrt(params.n * params.n *
                                 walk::n_of_k(k, chi).squaredNorm() +
                             params.m * params.m);
  return std::atan2(s, c);
}

double desitter_norm(double omega, const WaveVector3& k, double m, Chirality chi) {
  const double s = std::sin(omega);
  return s * s - (1.0 - m * m) * walk::n_of_k(k, chi).squaredNorm() - m * m;
}

const std::array<SpinMatrix4, 4>& gamma_matrices() {
  static const std::array<SpinMatrix4, 4> g = [] {
    std::array<SpinMatrix4, 4> out;
    const SpinMatrix2 id = SpinMatrix2::Identity();
    const SpinMatrix2 zero = SpinMatrix2::Zero();
    out[0] << zero, id, id, zero;
    const auto& s = walk::pauli(Chirality::Plus);
    for (int i = 0; i < 3; ++i) out[i + 1] << zero, s[i], -s[i], zero;
    return out;
  }();
  return g;
}

SpinMatrix4 walk_to_gamma_basis(Chirality chi) {
  const SpinMatrix2 id = SpinMatrix2::Identity();
  const SpinMatrix2 zero = SpinMatrix2::Zero();
  SpinMatrix4 u;
  if (chi == Chirality::Plus) {
    u << zero, id, -id, zero;
  } else {
    const SpinMatrix2& sy = walk::pauli(Chirality::Plus)[1];
    u << sy, zero, zero, -sy;
  }
  return u;
}

double gamma_residual(double omega, const WaveVector3& k, double m,
                      const Spinor4& psi, Chirality chi) {
  const double n = std::sqrt((1.0 - m) * (1.0 + m));
  const Vec3 p = n * walk::n_of_k(k, chi);
  const auto& g = gamma_matrices();
  const SpinMatrix4 op = std::sin(omega) * g[0] - p.x() * g[1] - p.y() * g[2] -
                         p.z() * g[3] - m * SpinMatrix4::Identity();
  return (op * walk_to_gamma_basis(chi) * psi).norm();
}

}  // namespace planckwalk::dirac
