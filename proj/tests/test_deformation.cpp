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
#include <cmath>
#include <functional>

#include "doctest.h"
#include "planckwalk/deformation.hpp"
#include "support.hpp"

using namespace planckwalk;
using namespace planckwalk::deformation;
using brillouin::RegionId;
using testing::random_interior_k;
using testing::random_unit;
using testing::uniform;

namespace {

long double oracle_h_E(long double x, long double y, long double z) {
  const long double xz = x * x + z * z;
  const long double w = xz > 0 ? (x * x - z * z) / xz : 1.0L;
  const long double c = 0.5L - x * x - y * y;
  return w * w + c * c;
}

long double simpson(const std::function<long double(long double)>& f,
                    long double a, long double b, int n) {
  const long double h = (b - a) / n;
  long double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3;
}

/// g straight from its radial definition, with s running along the ray.
double oracle_g(const Vec3& m) {
  const long double r = m.norm();
  if (r == 0) return 1.0;
  const Vec3 u = m / m.norm();
  const long double ux = u.x(), uy = u.y(), uz = u.z();
  auto integrand = [&](long double s) {
    const long double hu = 1.0L - s * s;
    // w is constant along the ray, so it is taken from the direction itself.
    const long double w = (ux * ux - uz * uz) / (ux * ux + uz * uz);
    const long double c = 0.5L - s * s * (ux * ux + uy * uy);
    return 1.0L / hu + 1.0L / (w * w + c * c);
  };
  return static_cast<double>(1.0L + r * simpson(integrand, 0.0L, r, 4000));
}

}  // namespace

TEST_SUITE("deformation") {
  TEST_CASE("h functions") {
    CHECK(h_U(Vec3::Zero()) == 1.0);
    CHECK(h_E(Vec3::Zero()) == doctest::Approx(1.25));
    CHECK(std::abs(h_E(Vec3(0.5, 0.5, 0.5))) < 1e-15);
    CHECK(h_U(Vec3(0.6, 0, 0)) == doctest::Approx(0.64));
    for (int s = 0; s < 500; ++s) {
      const Vec3 m = uniform(0, 0.99) * random_unit();
      CHECK(h_E(m) == doctest::Approx(static_cast<double>(oracle_h_E(m.x(), m.y(), m.z())))
                          .epsilon(1e-13));
    }
  }

  TEST_CASE("g reference values") {
    CHECK(g_value(Vec3::Zero()).value == 1.0);
    CHECK(g_value(Vec3(0.5, 0, 0)).value ==
          doctest::Approx(1.48720762928645465331).epsilon(1e-13));
    CHECK(g_value(Vec3(std::sin(0.2), 0, 0)).value ==
          doctest::Approx(1.07190758949305322739).epsilon(1e-13));
    CHECK(g_value(Vec3(0.3, -0.2, 0.4)).value ==
          doctest::Approx(2.3453787211575535439).epsilon(1e-13));
  }

  TEST_CASE("g near the excised set") {
    struct Case {
      Vec3 m;
      double g;
    };
    const Case cases[] = {
        {{0.4472135954999579, 0.6131883886702356, 0.44632006094997256}, 1128.932041546884761},
        {{0.07071067811865475, 0.9924716620639604, 0.07056939790135439}, 1114.2624793538469208},
        {{0.4472135954999579, 0.6131883886702356, 0.44721314828658604}, 2271350.0135836783461},
    };
    for (const Case& c : cases) {
      CHECK(g_value(c.m).value == doctest::Approx(c.g).epsilon(1e-9));
    }
  }

  TEST_CASE("g agrees with direct quadrature of the radial form") {
    for (int s = 0; s < 200; ++s) {
      const Vec3 m = uniform(0, 0.9) * random_unit();
      if (m.x() * m.x() + m.y() * m.y() > 0.4) continue;
      CHECK(g_value(m).value == doctest::Approx(oracle_g(m)).epsilon(1e-11));
    }
  }

  TEST_CASE("g gradient matches finite differences") {
    for (int s = 0; s < 200; ++s) {
      const Vec3 m = uniform(0.05, 0.8) * random_unit();
      if (brillouin::in_H(m, 0.05) || h_E(m) < 0.02) continue;
      const GValue gv = g_value(m, true);
      REQUIRE(gv.gradient.has_value());
      const double h = 1e-6;
      for (int j = 0; j < 3; ++j) {
        const Vec3 dm = h * Vec3::Unit(j);
        const double fd = (g_value(m + dm).value - g_value(m - dm).value) / (2 * h);
        CHECK((*gv.gradient)(j) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      }
    }
  }

  TEST_CASE("g grows along rays and is at least one") {
    for (int s = 0; s < 100; ++s) {
      const Vec3 u = random_unit();
      double prev = 1.0;
      for (int i = 1; i <= 40; ++i) {
        const Vec3 m = (0.97 * i / 40) * u;
        if (brillouin::in_H(m, 1e-6)) break;
        const double g = g_value(m).value;
        REQUIRE(g >= prev);
        prev = g;
      }
    }
  }

  TEST_CASE("deformed momenta are null") {
    for (int s = 0; s < 1000; ++s) {
      const WaveVector3 k = random_interior_k();
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        const OnShellPoint x = make_on_shell(k, b);
        REQUIRE(is_valid(x));
        const FourMomentum p = deform(x);
        REQUIRE(std::abs(p.minkowski_square()) <= 1e-12 * p.p0 * p.p0 + 1e-15);
        REQUIRE((p.p0 > 0) == (b == Branch::Plus));
      }
    }
  }

  TEST_CASE("deformation is the identity to first order at the origin") {
    const double h = 1e-7;
    Mat3 jac;
    for (int j = 0; j < 3; ++j) {
      const Vec3 dk = h * Vec3::Unit(j);
      const auto plus = deform(make_on_shell(WaveVector3(dk), Branch::Plus));
      const auto minus = deform(make_on_shell(WaveVector3(-dk), Branch::Plus));
      jac.col(j) = (plus.p - minus.p) / (2 * h);
    }
    CHECK((jac - Mat3::Identity()).lpNorm<Eigen::Infinity>() < 1e-6);
  }

  TEST_CASE("radial inversion") {
    const RadialInverse r0 = invert_radial(FourMomentum(0.0, Vec3::Zero()));
    CHECK(r0.m.norm() == 0.0);
    CHECK_FALSE(r0.saturated);
    for (int s = 0; s < 300; ++s) {
      const Vec3 m = uniform(0.01, 0.9) * random_unit();
      if (brillouin::in_H(m, 1e-3)) continue;
      const double g = g_value(m).value;
      if (g * m.norm() > kResolvedMomentum) continue;
      const RadialInverse inv = invert_radial(FourMomentum(-g * m.norm(), g * m));
      REQUIRE((inv.m - m).norm() < 1e-10);
      REQUIRE(inv.omega == doctest::Approx(-std::asin(m.norm())));
    }
  }

  TEST_CASE("huge momenta saturate") {
    const RadialInverse inv = invert_radial(FourMomentum(1e6, Vec3(1e6, 0, 0)));
    CHECK(inv.saturated);
    CHECK(inv.m.norm() < 1.0);
    CHECK(inv.m.norm() > 1.0 - 1e-12);
  }

  TEST_CASE("rays through the excised set stop at it") {
    const Vec3 diag = Vec3(1, 1, 1).normalized();
    CHECK(default_rescaling().radial_limit(diag) == doctest::Approx(std::sqrt(0.75)));
    CHECK(default_rescaling().radial_limit(Vec3::UnitY()) == doctest::Approx(std::sqrt(0.5)));
    CHECK(default_rescaling().radial_limit(Vec3::UnitX()) == 1.0);

    const RadialInverse ok = invert_radial(FourMomentum(0.5, 0.5 * diag));
    CHECK(ok.m.norm() < std::sqrt(0.75));
    CHECK(invert_radial(FourMomentum(0.3, 0.3 * Vec3::UnitY())).m.norm() < std::sqrt(0.5));
    CHECK_THROWS_AS(invert_radial(FourMomentum(1e15, 1e15 * diag)), DomainError);
  }

  TEST_CASE("full inversion round trip") {
    for (int s = 0; s < 300; ++s) {
      const WaveVector3 k = random_interior_k(1e-3);
      const Branch b = s % 2 ? Branch::Plus : Branch::Minus;
      const OnShellPoint x = make_on_shell(k, b);
      const FourMomentum p = deform(x);
      if (p.p.norm() > kResolvedMomentum) continue;
      const OnShellPoint back = invert_deform(p, x.region, Chirality::Plus);
      REQUIRE(back.region == x.region);
      REQUIRE(back.branch == b);
      REQUIRE(roundtrip_error(back, p) < 1e-9);
      REQUIRE((brillouin::wrap_to_zone(back.k.vec() - k.vec()).vec()).norm() < 1e-7);
    }
  }

  TEST_CASE("paired regions share their images") {
    for (int s = 0; s < 100; ++s) {
      const WaveVector3 k = random_interior_k(1e-3);
      const RegionId r = brillouin::classify_region(k);
      if (r != RegionId::R0) continue;
      const Vec3 m = walk::n_of_k(k, Chirality::Plus);
      const WaveVector3 k2 = solve_n_in_region(m, RegionId::R2, Chirality::Plus);
      CHECK(brillouin::classify_region(k2) == RegionId::R2);
      CHECK((walk::n_of_k(k2, Chirality::Plus) - m).norm() < 1e-10);
    }
  }
}
