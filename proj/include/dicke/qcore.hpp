// Copyright 2026 The dicke-fringe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense linear algebra and domain types for a pair of two-level atoms.
//
// Units: time in 1/gamma, drive strength Omega in gamma, lengths in optical
// wavelengths, angles in radians. gamma is 1 everywhere.
//
// Fixed orderings used by every matrix in the library:
//   Product basis      0:|e,e>  1:|e,g>  2:|g,e>  3:|g,g>
//   Symmetrized basis  0:|e>    1:|s>    2:|a>    3:|g>
// with |e> = |e,e>, |g> = |g,g> and
//   |s> = (exp(-i phi)|e,g> + exp(i phi)|g,e>) / sqrt(2)
//   |a> = (exp(-i phi)|e,g> - exp(i phi)|g,e>) / sqrt(2)
// where phi = k_L . x12 / 2.

#include <complex>
#include <numbers>
#include <variant>

#include <Eigen/Dense>

#include "dicke/error.hpp"

namespace dicke {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kGamma = 1.0;

namespace product {
inline constexpr int kEE = 0;
inline constexpr int kEG = 1;
inline constexpr int kGE = 2;
inline constexpr int kGG = 3;
}  // namespace product

namespace sym {
inline constexpr int kE = 0;
inline constexpr int kS = 1;
inline constexpr int kA = 2;
inline constexpr int kG = 3;
}  // namespace sym

enum class Basis { Product, Symmetrized };

const char* to_string(Basis b) noexcept;

// Reduce an angle into [0, 2pi).
double wrap_phase(double angle) noexcept;

struct SystemParams {
  double omega = 0.0;
  Vec3 laser_dir = Vec3::UnitZ();
  // x1 - x2 in units of the optical wavelength.
  Vec3 atom_separation = Vec3::Zero();

  // Laser along z with the separation chosen so that k_L . x12 / 2 == phi.
  static SystemParams with_phi(double omega, double phi);

  // Throws InvalidGeometry / InvalidArgument when the invariants fail.
  void validate() const;

  // phi = k_L . x12 / 2 = pi * (laser_dir . atom_separation).
  double phi() const;
};

class SymmetrizedBasis {
 public:
  explicit SymmetrizedBasis(double phi) : phi_(phi) {}

  double phi() const noexcept { return phi_; }

  // Rows are the bras <e|, <s|, <a|, <g| expressed in the product basis, so a
  // product-basis operator X maps to U X U^dagger.
  Mat4 unitary() const;

 private:
  double phi_;
};

// Detector described either by a unit direction r-hat or directly by its
// detection phase delta.
class DetectionDirection {
 public:
  static DetectionDirection along(const Vec3& dir);
  static DetectionDirection with_phase(double delta);

  bool has_direction() const noexcept {
    return std::holds_alternative<Vec3>(value_);
  }
  const Vec3& direction() const { return std::get<Vec3>(value_); }
  double phase() const { return std::get<double>(value_); }

 private:
  explicit DetectionDirection(std::variant<Vec3, double> v)
      : value_(std::move(v)) {}
  std::variant<Vec3, double> value_;
};

struct Phase {
  double raw;
  double reduced;  // in [0, 2pi)
};

// delta = (k_L - k r-hat) . x12 with |k| = 2 pi / lambda.
Phase delta_phase(const SystemParams& params, const DetectionDirection& det);

class DensityMatrix4 {
 public:
  DensityMatrix4(const Mat4& entries, Basis basis, double phi = 0.0)
      : entries_(entries), basis_(basis), phi_(phi) {}

  static DensityMatrix4 pure(const Vec4& psi, Basis basis, double phi = 0.0);
  static DensityMatrix4 ground();

  const Mat4& entries() const noexcept { return entries_; }
  Basis basis() const noexcept { return basis_; }
  // Meaningful only for the symmetrized basis.
  double phi() const noexcept { return phi_; }

  cplx operator()(int i, int j) const { return entries_(i, j); }
  double trace() const { return entries_.trace().real(); }

 private:
  Mat4 entries_;
  Basis basis_;
  double phi_;
};

struct StateTolerances {
  double hermiticity = 1e-12;
  double trace = 1e-10;
  double min_eigenvalue = -1e-10;
};

// Throws InvalidState with a description of the first violated bound.
void validate(const DensityMatrix4& rho, const StateTolerances& tol = {});
bool is_valid(const DensityMatrix4& rho, const StateTolerances& tol = {});

DensityMatrix4 to_symmetrized(const DensityMatrix4& rho,
                              const SymmetrizedBasis& basis);
DensityMatrix4 to_product(const DensityMatrix4& rho);

struct PauliOps {
  Mat4 lower[2];
  Mat4 raise[2];
  Mat4 excited[2];  // sigma+ sigma-
  Mat4 ground[2];   // sigma- sigma+
};

// Single-atom operators in the product basis; index 0 is atom 1.
const PauliOps& pauli_ops();

}  // namespace dicke
