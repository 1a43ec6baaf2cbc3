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

/** @file walk.hpp
 *  @brief Weyl walk on the BCC lattice: A_k = lambda(k) I - i n(k).sigma.
 */
#pragma once

#include <array>

#include "planckwalk/types.hpp"

namespace planckwalk::walk {

/// Pauli matrices for the given chirality: sigma for +, sigma^T for -.
const std::array<SpinMatrix2, 3>& pauli(Chirality chi);

/// n.sigma^(chi)
SpinMatrix2 sigma_dot(const Vec3& n, Chirality chi);

double lambda_of_k(const WaveVector3& k, Chirality chi);
Vec3 n_of_k(const WaveVector3& k, Chirality chi);

/// Gradient of lambda(k).
Vec3 lambda_gradient(const WaveVector3& k, Chirality chi);

/// Analytic Jacobian D_ij = d n_i / d k_j.
Mat3 n_jacobian(const WaveVector3& k, Chirality chi);

SpinMatrix2 build_weyl_matrix(const WaveVector3& k, Chirality chi);

/// Inverts build_weyl_matrix: n.sigma = (i/2)(A - A^dagger).
/// Throws MalformedInput when the anti-Hermitian part leaves span(sigma^chi).
Vec3 extract_n_from_matrix(const SpinMatrix2& a, Chirality chi,
                           double tolerance = 1e-9);

struct DispersionPoint {
  double omega = 0.0;
  WaveVector3 k;
  Branch branch = Branch::Plus;
};

/// omega = +-arccos(lambda), evaluated as atan2(|n|, lambda).
DispersionPoint dispersion(const WaveVector3& k, Chirality chi, Branch branch);

/// sin^2(omega) - |n(k)|^2
double onshell_residual(double omega, const WaveVector3& k, Chirality chi);

struct UnitSystem {
  double a;    ///< lattice spacing
  double tau;  ///< time step
  double mu;   ///< maximum mass

  UnitSystem(double a, double tau, double mu);
};

struct PlanckUnits {
  double c;
  double hbar;
};

/// c = a / (sqrt(3) tau), hbar = mu a c.
PlanckUnits planck_units(const UnitSystem& u);

/// Conversion between main-text wavevectors (cosines of k/sqrt(3)) and the
/// rescaled ones used everywhere else.
WaveVector3 from_main_text(const Vec3& k_main);
Vec3 to_main_text(const WaveVector3& k);

}  // namespace planckwalk::walk
