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

/** @file dirac.hpp
 *  @brief Massive walk D = [[n A, i m I], [i m I, n A^dagger]] and its
 *  de Sitter dispersion sin^2(omega) = (1 - m^2) |n(k)|^2 + m^2.
 */
#pragma once

#include <vector>

#include "planckwalk/types.hpp"
#include "planckwalk/walk.hpp"

namespace planckwalk::dirac {

struct DiracParams {
  double n;
  double m;

  /// Throws DomainError unless n, m in [0, 1] and n^2 + m^2 = 1 to 1e-12.
  DiracParams(double n, double m);
  static DiracParams from_mass(double m);
};

SpinMatrix4 build_dirac_matrix(const WaveVector3& k, const DiracParams& params,
                               Chirality chi = Chirality::Plus);

struct DiracMode {
  walk::DispersionPoint point;  ///< D psi = exp(-i omega) psi
  Spinor4 eigenvector;
};

/// Eigenphases in (-pi, pi], sorted ascending.
std::vector<DiracMode> dirac_modes(const WaveVector3& k, const DiracParams& params,
                                   Chirality chi = Chirality::Plus);

std::vector<walk::DispersionPoint> dirac_dispersion(
    const WaveVector3& k, const DiracParams& params,
    Chirality chi = Chirality::Plus);

/// Closed form: cos(omega) = n lambda(k).
double dirac_omega(const WaveVector3& k, const DiracParams& params,
                   Chirality chi = Chirality::Plus);

/// sin^2(omega) - (1 - m^2) |n(k)|^2 - m^2
double desitter_norm(double omega, const WaveVector3& k, double m,
                     Chirality chi = Chirality::Plus);

/// Weyl-basis gamma matrices: gamma^0 = [[0, I], [I, 0]],
/// gamma^i = [[0, sigma_i], [-sigma_i, 0]].
const std::array<SpinMatrix4, 4>& gamma_matrices();

/// Maps eigenvectors of the walk to the spinor basis of the gamma matrices.
SpinMatrix4 walk_to_gamma_basis(Chirality chi);

/// |(p_mu gamma^mu - m) U psi| with p = (sin omega, sqrt(1 - m^2) n(k)). The
/// common rescaling f(k) of p and m cancels from the equation.
double gamma_residual(double omega, const WaveVector3& k, double m,
                      const Spinor4& psi, Chirality chi = Chirality::Plus);

}  // namespace planckwalk::dirac
