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
#pragma once

#include <random>

#include "planckwalk/brillouin.hpp"
#include "planckwalk/types.hpp"
#include "planckwalk/walk.hpp"

namespace planckwalk::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eed5eedULL);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Uniform point of the zone.
inline WaveVector3 random_k() {
  return brillouin::wrap_to_zone(
      Vec3(uniform(-kPi, kPi), uniform(-kPi, kPi), uniform(-kPi, kPi)));
}

inline Vec3 random_unit() {
  std::normal_distribution<double> g;
  Vec3 v(g(rng()), g(rng()), g(rng()));
  return v.normalized();
}

/// Point at least `margin` away from both region boundary surfaces, with n
/// outside H.
inline WaveVector3 random_interior_k(double margin = 1e-6) {
  for (;;) {
    const WaveVector3 k = random_k();
    const brillouin::RegionId r = brillouin::classify_region(k, Chirality::Plus, margin);
    if (r == brillouin::RegionId::Boundary) continue;
    if (brillouin::in_H(walk::n_of_k(k, Chirality::Plus), 1e-9)) continue;
    return k;
  }
}

}  // namespace planckwalk::testing
