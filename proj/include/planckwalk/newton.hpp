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

/** @file newton.hpp
 *  @brief Damped, region-restricted Newton iteration for n(k) = m.
 */
#pragma once

#include "planckwalk/brillouin.hpp"

namespace planckwalk {

struct NewtonOptions {
  int max_iterations = 200;
  int max_halvings = 20;
  double tolerance = 1e-11;  ///< max-norm residual |n(k) - m|
};

struct NewtonResult {
  WaveVector3 k;  ///< wrapped into the zone
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Steps are halved until the residual decreases and the iterate stays in
/// region r. One extra step is taken after the tolerance is met.
NewtonResult newton_preimage(const Vec3& m, brillouin::RegionId r,
                             Chirality chi, const Vec3& seed,
                             const NewtonOptions& options = {});

}  // namespace planckwalk
