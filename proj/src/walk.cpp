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
#include "planckwalk/walk.hpp"

#include <cmath>

namespace planckwalk {

std::string to_string(Chirality c) { return c == Chirality::Plus ? "+" : "-"; }
std::string to_string(Branch b) { return b == Branch::Plus ? "+" : "-"; }

namespace walk {

namespace {

const Complex kI(0.0, 1.0);

struct Trig {
  double cx, cy, cz, sx, sy, sz;
};

// The minus walk satisfies lambda-(k) = lambda+(-k) and n-(k) = -n+(-k),
// so every closed form is written once for chi = + and reflected.
Trig trig(const WaveVector3& k, Chirality chi) {
  const double s = sign_of(chi);
  return {std::cos(k.x()),     std::cos(k.y()),     std::cos(k.z()),
          s * std::sin(k.x()), s * std::sin(k.y()), s * std::sin(k.z())};
}

}  // namespace

const std::array<SpinMatrix2, 3>& pauli(Chirality chi) {
  static const std::array<SpinMatrix2, 3> plus = [] {
    std::array<SpinMatrix2, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -kI, kI, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  static const std::array<SpinMatrix2, 3> minus = [] {
    std::array<SpinMatrix2, 3> s = plus;
    for (auto& m : s) m.transposeInPlace();
    return s;
  }();
  return chi == Chirality::Plus ? plus : minus;
}

SpinMatrix2 sigma_dot(const Vec3& n, Chirality chi) {
  const auto& s = pauli(chi);
  return n.x() * s[0] + n.y() * s[1] + n.z() * s[2];
}

double lambda_of_k(const WaveVector3& k, Chirality chi) {
  const Trig t = trig(k, chi);
  return t.cx * t.cy * t.cz - t.sx * t.sy * t.sz;
}

Vec3 n_of_k(const WaveVector3& k, Chirality chi) {
  const Trig t = trig(k, chi);
  const Vec3 n(t.sx * t.cy * t.cz + t.cx * t.sy * t.sz,
               t.cx * t.sy * t.cz - t.sx * t.cy * t.sz,
               t.cx * t.cy * t.sz + t.sx * t.sy * t.cz);
  return sign_of(chi) * n;
}

Vec3 lambda_gradient(const WaveVector3& k, Chirality chi) {
  const Trig t = trig(k, chi);
  const Vec3 g(t.sx * t.cy * t.cz + t.cx * t.sy * t.sz,
               t.cx * t.sy * t.cz + t.sx * t.cy * t.sz,
               t.cx * t.cy * t.sz + t.sx * t.sy * t.cz);
  return -sign_of(chi) * g;
}

Mat3 n_jacobian(const WaveVector3& k, Chirality chi) {
  const Trig t = trig(k, chi);
  const double cx = t.cx, cy = t.cy, cz = t.cz, sx = t.sx, sy = t.sy,
               sz = t.sz;
  // Derivatives of the chi=+ form at -k (chi=-) pick up one sign from the
  // chain rule and one from n- = -n+(-k): they cancel.
  Mat3 d;
  d << cx * cy * cz - sx * sy * sz, -sx * sy * cz + cx * cy * sz,
      -sx * cy * sz + cx * sy * cz,
      -sx * sy * cz - cx * cy * sz, cx * cy * cz + sx * sy * sz,
      -cx * sy * sz - sx * cy * cz,
      -sx * cy * sz + cx * sy * cz, -cx * sy * sz + sx * cy * cz,
      cx * cy * cz - sx * sy * sz;
  return d;
}

SpinMatrix2 build_weyl_matrix(const WaveVector3& k, Chirality chi) {
  return lambda_of_k(k, chi) * SpinMatrix2::Identity() -
         kI * sigma_dot(n_of_k(k, chi), chi);
}

Vec3 extract_n_from_matrix(const SpinMatrix2& a, Chirality chi,
                           double tolerance) {
  const SpinMatrix2 h = 0.5 * kI * (a - a.adjoint());
  const auto& s = pauli(chi);
  Vec3 n;
  for (int i = 0; i < 3; ++i) n(i) = 0.5 * (s[i] * h).trace().real();
  const double residual = (h - sigma_dot(n, chi)).cwiseAbs().maxCoeff();
  if (!(residual <= tolerance)) {
    throw MalformedInput("anti-Hermitian part is not in span(sigma): residual " +
                         std::to_string(residual));
  }
  return n;
}

DispersionPoint dispersion(const WaveVector3& k, Chirality chi,
                           Branch branch) {
  const double omega =
      std::atan2(n_of_k(k, chi).norm(), lambda_of_k(k, chi));
  return {sign_of(branch) * omega, k, branch};
}

double onshell_residual(double omega, const WaveVector3& k, Chirality chi) {
  const double s = std::sin(omega);
  return s * s - n_of_k(k, chi).squaredNorm();
}

UnitSystem::UnitSystem(double a_, double tau_, double mu_)
    : a(a_), tau(tau_), mu(mu_) {
  if (!(a > 0.0 && tau > 0.0 && mu > 0.0)) {
    throw DomainError("unit system requires a, tau, mu > 0");
  }
}

PlanckUnits planck_units(const UnitSystem& u) {
  const double c = u.a / (std::sqrt(3.0) * u.tau);
  return {c, u.mu * u.a * c};
}

WaveVector3 from_main_text(const Vec3& k_main) {
  return WaveVector3(k_main / std::sqrt(3.0));
}

Vec3 to_main_text(const WaveVector3& k) { return k.vec() * std::sqrt(3.0); }

}  // namespace walk
}  // namespace planckwalk
