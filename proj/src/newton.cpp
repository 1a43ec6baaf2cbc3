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
#include "planckwalk/newton.hpp"

#include "planckwalk/walk.hpp"

namespace planckwalk {

NewtonResult newton_preimage(const Vec3& m, brillouin::RegionId r,
                             Chirality chi, const Vec3& seed,
                             const NewtonOptions& options) {
  auto residual_at = [&](const Vec3& k) {
    return (walk::n_of_k(WaveVector3(k), chi) - m).lpNorm<Eigen::Infinity>();
  };
  auto in_region = [&](const Vec3& k) {
    return brillouin::classify_region(WaveVector3(k), chi) == r;
  };

  NewtonResult out;
  Vec3 k = seed;
  double res = residual_at(k);
  bool polished = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it;
    if (res <= options.tolerance) {
      if (polished) break;
      polished = true;
    }
    const Mat3 jac = walk::n_jacobian(WaveVector3(k), chi);
    const Vec3 step =
        jac.fullPivLu().solve(m - walk::n_of_k(WaveVector3(k), chi));
    if (!step.allFinite()) break;

    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, alpha *= 0.5) {
      const Vec3 trial = k + alpha * step;
      const double trial_res = residual_at(trial);
      if (in_region(trial) && trial_res < res) {
        k = trial;
        res = trial_res;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.k = brillouin::wrap_to_zone(k);
  out.residual = res;
  out.converged = res <= options.tolerance && in_region(k);
  return out;
}

}  // namespace planckwalk
