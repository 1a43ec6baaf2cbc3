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
#include "planckwalk/deformation.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "planckwalk/walk.hpp"

namespace planckwalk::deformation {

namespace {

constexpr double kQuadratureTolerance = 1e-13;

// Integrates over [0, 1], splitting at the peak of the integrand if it lies
// inside. Double-exponential nodes cluster at the ends of each piece, which
// resolves peaks of width sqrt(A) that defeat adaptive Gauss-Kronrod.
template <class F>
double integrate_unit(F f, double peak) {
  // integrate() extends its node table lazily, so each thread owns one.
  thread_local boost::math::quadrature::tanh_sinh<double> quad;
  if (!(peak > 0.0 && peak < 1.0)) {
    return quad.integrate(f, 0.0, 1.0, kQuadratureTolerance);
  }
  return quad.integrate(f, 0.0, peak, kQuadratureTolerance) +
         quad.integrate(f, peak, 1.0, kQuadratureTolerance);
}

// w = cos^2 phi - sin^2 phi, taken as 1 on the m_y axis.
struct RayInvariants {
  double w;
  double a;  // w^2
  double q;  // m_x^2 + m_y^2
};

RayInvariants invariants(const Vec3& m) {
  const double x2 = m.x() * m.x(), z2 = m.z() * m.z();
  const double w = (x2 + z2) > 0.0 ? (x2 - z2) / (x2 + z2) : 1.0;
  return {w, w * w, x2 + m.y() * m.y()};
}

}  // namespace

double h_U(const Vec3& m) { return 1.0 - m.squaredNorm(); }

double h_E(const Vec3& m) {
  const RayInvariants inv = invariants(m);
  const double b = 0.5 - inv.q;
  return inv.a + b * b;
}

GValue StarRescaling::evaluate(const Vec3& m, double one_minus_r2,
                               bool with_gradient) const {
  const double r = m.norm();
  if (!(r < 1.0) || !(one_minus_r2 > 0.0)) {
    throw DomainError("rescaling requires |m| < 1");
  }
  if (brillouin::in_H(m)) throw DomainError("rescaling undefined on H");

  GValue out;
  if (r == 0.0) {
    if (with_gradient) out.gradient = Vec3::Zero();
    return out;
  }

  const RayInvariants inv = invariants(m);
  auto denominator = [&](double t) {
    const double b = 0.5 - inv.q * t * t;
    return inv.a + b * b;
  };
  const double atanh_r = std::log1p(r) - 0.5 * std::log(one_minus_r2);
  // The denominator is smallest where q t^2 = 1/2.
  const double peak = inv.q > 0.5 ? std::sqrt(0.5 / inv.q) : 2.0;
  const double j =
      integrate_unit([&](double t) { return 1.0 / denominator(t); }, peak);
  out.value = 1.0 + r * atanh_r + r * r * j;

  if (with_gradient) {
    const double j_a = integrate_unit([&](double t) {
      const double d = denominator(t);
      return 1.0 / (d * d);
    }, peak);
    const double j_q = integrate_unit([&](double t) {
      const double d = denominator(t);
      return t * t * (0.5 - inv.q * t * t) / (d * d);
    }, peak);
    const double x2 = m.x() * m.x(), z2 = m.z() * m.z();
    Vec3 grad_w = Vec3::Zero();
    if (x2 + z2 > 0.0) {
      const double s = (x2 + z2) * (x2 + z2);
      grad_w << 4.0 * m.x() * z2 / s, 0.0, -4.0 * m.z() * x2 / s;
    }
    const Vec3 grad_a = 2.0 * inv.w * grad_w;
    const Vec3 grad_q(2.0 * m.x(), 2.0 * m.y(), 0.0);
    const Vec3 grad_j = -j_a * grad_a + 2.0 * j_q * grad_q;
    out.gradient = (atanh_r + r / one_minus_r2) * m / r + 2.0 * j * m +
                   r * r * grad_j;
  }
  return out;
}

double StarRescaling::radial_limit(const Vec3& dir) const {
  const RayInvariants inv = invariants(dir);
  const bool on_plane =
      std::abs(std::abs(dir.x()) - std::abs(dir.z())) <= 1e-12;
  // On the planes |m_x| = |m_z| the ray enters H where 2 q r^2 = 1.
  if (on_plane && inv.q > 0.5 - 1e-12) return 1.0 / std::sqrt(2.0 * inv.q);
  return 1.0;
}

const Rescaling& default_rescaling() {
  static const StarRescaling instance;
  return instance;
}

GValue g_value(const Vec3& m, bool with_gradient) {
  return default_rescaling().evaluate(m, with_gradient);
}

double OnShellPoint::omega() const {
  return walk::dispersion(k, chirality, branch).omega;
}

Vec3 OnShellPoint::n() const { return walk::n_of_k(k, chirality); }

double OnShellPoint::lambda() const { return walk::lambda_of_k(k, chirality); }

OnShellPoint make_on_shell(const WaveVector3& k, Branch branch,
                           Chirality chi) {
  const RegionId r = brillouin::classify_region(k, chi);
  if (r == RegionId::Boundary) throw DomainError("k is on a region boundary");
  if (brillouin::in_H(walk::n_of_k(k, chi))) {
    throw DomainError("n(k) lies in the excised set H");
  }
  return {k, branch, r, chi};
}

bool is_valid(const OnShellPoint& x) {
  return x.region != RegionId::Boundary &&
         brillouin::classify_region(x.k, x.chirality) == x.region &&
         !brillouin::in_H(x.n());
}

FourMomentum deform(const OnShellPoint& x, const Rescaling& f) {
  const Vec3 n = x.n();
  const double lambda = x.lambda();
  const double g = f.evaluate(n, lambda * lambda, false).value;
  return {g * sign_of(x.branch) * n.norm(), g * n};
}

RadialInverse invert_radial(const FourMomentum& p, const Rescaling& f) {
  RadialInverse out;
  const double target = p.p.norm();
  if (target == 0.0) return out;
  const Vec3 dir = p.p / target;
  const double limit = f.radial_limit(dir);

  auto value_and_slope = [&](double r) {
    const GValue gv = f.evaluate(r * dir, (1.0 - r) * (1.0 + r), true);
    return std::make_pair(r * gv.value - target,
                          gv.value + r * dir.dot(*gv.gradient));
  };

  double lo = 0.0;
  // Stay clear of the unit sphere by a few ulps and of H by its membership
  // tolerance.
  double hi = limit < 1.0 ? limit * (1.0 - 1e-12)
                          : 1.0 - 4.0 * std::numeric_limits<double>::epsilon();
  // f >= 1, so the root never exceeds |p|.
  const bool bracketed = target < hi;
  if (bracketed) hi = target;
  if (!bracketed && value_and_slope(hi).first < 0.0) {
    if (limit < 1.0) throw DomainError("p lies beyond the excised set on its ray");
    out.m = hi * dir;
    out.saturated = true;
  } else {
    for (int i = 0; i < 12; ++i) {
      const double mid = 0.5 * (lo + hi);
      (value_and_slope(mid).first < 0.0 ? lo : hi) = mid;
    }
    std::uintmax_t iterations = 100;
    double r = 0.0;
    try {
      r = boost::math::tools::newton_raphson_iterate(
          value_and_slope, 0.5 * (lo + hi), lo, hi,
          std::numeric_limits<double>::digits, iterations);
    } catch (const std::exception& e) {
      throw ConvergenceError(std::string("radial inversion failed: ") +
                             e.what());
    }
    out.m = r * dir;
  }
  const double sign = p.p0 < 0.0 ? -1.0 : 1.0;
  out.omega = sign * std::asin(out.m.norm());
  return out;
}

WaveVector3 solve_n_in_region(const Vec3& m, RegionId r, Chirality chi,
                              const InversionOptions& options) {
  if (r == RegionId::Boundary) throw DomainError("region must be interior");
  const WaveVector3 origin = brillouin::doubling_point_in(r, chi);
  if (m.isZero(0.0)) return origin;

  NewtonOptions newton = options.newton;
  newton.tolerance = std::max(options.newton.tolerance * std::min(1.0, m.norm()),
                              1e-15);

  const Mat3 jac0 = walk::n_jacobian(origin, chi);
  const Vec3 seed = origin.vec() + jac0.inverse() * m;
  if (const auto res = newton_preimage(m, r, chi, seed, newton); res.converged) {
    return res.k;
  }

  for (int steps : {options.continuation_steps, 8 * options.continuation_steps}) {
    Vec3 k = origin.vec();
    bool ok = steps > 0;
    for (int j = 1; j <= steps && ok; ++j) {
      const Vec3 mj = (static_cast<double>(j) / steps) * m;
      const auto res = newton_preimage(mj, r, chi, k, newton);
      ok = res.converged;
      if (ok) k = res.k.vec();
    }
    if (ok) return WaveVector3(k);
  }

  const auto& dirs = brillouin::lattice_generators();
  for (int i = 0; i < options.multistarts; ++i) {
    const Vec3 start =
        seed + 0.05 * (i / 8 + 1) * dirs[static_cast<std::size_t>(i % 8)];
    if (const auto res = newton_preimage(m, r, chi, start, newton);
        res.converged) {
      return res.k;
    }
  }
  throw ConvergenceError("n(k) = m has no converged solution in region " +
                         std::to_string(brillouin::index_of(r)));
}

double roundtrip_error(const OnShellPoint& x, const FourMomentum& p,
                       const Rescaling& f) {
  const FourMomentum q = deform(x, f);
  const double scale = std::max(std::abs(p.p0), 1e-300);
  return (q.vec() - p.vec()).lpNorm<Eigen::Infinity>() / scale;
}

namespace {

// Newton on Phi(k) = f(n(k)) n(k) - p, which resolves p directly rather than
// through m; this matters where f is steep.
WaveVector3 polish(const WaveVector3& k0, const FourMomentum& p, RegionId r,
                   Chirality chi, const Rescaling& f) {
  auto phi = [&](const Vec3& k) -> std::optional<Vec3> {
    const WaveVector3 kk(k);
    if (brillouin::classify_region(kk, chi) != r) return std::nullopt;
    const Vec3 n = walk::n_of_k(kk, chi);
    const double lambda = walk::lambda_of_k(kk, chi);
    try {
      return f.evaluate(n, lambda * lambda, false).value * n - p.p;
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };

  Vec3 k = k0.vec();
  auto current = phi(k);
  if (!current) return k0;
  double res = current->lpNorm<Eigen::Infinity>();
  for (int it = 0; it < 6; ++it) {
    const WaveVector3 kk(k);
    const Vec3 n = walk::n_of_k(kk, chi);
    const double lambda = walk::lambda_of_k(kk, chi);
    GValue gv;
    try {
      gv = f.evaluate(n, lambda * lambda, true);
    } catch (const DomainError&) {
      break;
    }
    const Mat3 jac = (gv.value * Mat3::Identity() + n * gv.gradient->transpose()) *
                     walk::n_jacobian(kk, chi);
    const Vec3 step = jac.fullPivLu().solve(-*current);
    if (!step.allFinite()) break;
    bool accepted = false;
    double alpha = 1.0;
    for (int h = 0; h < 10 && !accepted; ++h, alpha *= 0.5) {
      const Vec3 trial = k + alpha * step;
      const auto value = phi(trial);
      if (value && value->lpNorm<Eigen::Infinity>() < res) {
        k = trial;
        current = value;
        res = value->lpNorm<Eigen::Infinity>();
        accepted = true;
      }
    }
    if (!accepted) break;
  }
  return brillouin::wrap_to_zone(k);
}

}  // namespace

OnShellPoint invert_deform(const FourMomentum& p, RegionId r, Chirality chi,
                           const InversionOptions& options,
                           const Rescaling& f) {
  if (r == RegionId::Boundary) throw DomainError("region must be interior");
  if (p.vec().isZero(0.0)) {
    return {brillouin::doubling_point_in(r, chi), Branch::Plus, r, chi};
  }
  const Branch branch = p.p0 < 0.0 ? Branch::Minus : Branch::Plus;
  const RadialInverse radial = invert_radial(p, f);
  WaveVector3 k = solve_n_in_region(radial.m, r, chi, options);
  if (options.polish) k = polish(k, p, r, chi, f);

  const OnShellPoint x{k, branch, r, chi};
  const double err = roundtrip_error(x, p, f);
  if (!(err <= options.verify_tolerance)) {
    throw ConvergenceError("inverse deformation misses p by relative " +
                           std::to_string(err));
  }
  return x;
}

}  // namespace planckwalk::deformation
