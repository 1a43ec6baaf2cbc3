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

/** @file types.hpp
 *  @brief Value types shared by every module.
 *
 *  Wavevectors are in rescaled lattice units: the cosines entering the walk
 *  are cos(k_x), cos(k_y), cos(k_z) with no 1/sqrt(3) factor.
 */
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace planckwalk {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using SpinMatrix2 = Eigen::Matrix2cd;
using SpinMatrix4 = Eigen::Matrix4cd;
using Spinor2 = Eigen::Vector2cd;
using Spinor4 = Eigen::Vector4cd;

inline constexpr double kPi = 3.14159265358979323846;

enum class Chirality { Plus, Minus };
enum class Branch { Plus, Minus };

constexpr int sign_of(Chirality c) { return c == Chirality::Plus ? 1 : -1; }
constexpr int sign_of(Branch b) { return b == Branch::Plus ? 1 : -1; }

std::string to_string(Chirality c);
std::string to_string(Branch b);

/// A point of reciprocal space. Wrapping into the zone is done explicitly.
class WaveVector3 {
 public:
  WaveVector3() = default;
  WaveVector3(double kx, double ky, double kz) : k_(kx, ky, kz) {}
  explicit WaveVector3(const Vec3& k) : k_(k) {}

  double x() const { return k_.x(); }
  double y() const { return k_.y(); }
  double z() const { return k_.z(); }
  const Vec3& vec() const { return k_; }
  double norm() const { return k_.norm(); }

 private:
  Vec3 k_ = Vec3::Zero();
};

/// Four-vector with signature (+,-,-,-).
struct FourMomentum {
  double p0 = 0.0;
  Vec3 p = Vec3::Zero();

  FourMomentum() = default;
  FourMomentum(double time, const Vec3& space) : p0(time), p(space) {}
  explicit FourMomentum(const Vec4& v) : p0(v(0)), p(v.tail<3>()) {}

  Vec4 vec() const {
    Vec4 v;
    v << p0, p;
    return v;
  }
  double minkowski_square() const { return p0 * p0 - p.squaredNorm(); }
};

/// Tolerances for algebraic identities and round-trip numerics.
struct Tolerances {
  double algebraic = 1e-12;
  double roundtrip = 1e-9;
};

/// Argument outside the domain of a map (|m| >= 1, m in H, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative solver did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not have the structure an operation requires.
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace planckwalk
