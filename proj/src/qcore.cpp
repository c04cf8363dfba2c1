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

#include "dicke/qcore.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace dicke {

namespace {

constexpr double kUnitTolerance = 1e-12;

void require_unit(const Vec3& v, const char* what) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance) {
    std::ostringstream os;
    os << what << " must be a unit vector (norm " << v.norm() << ")";
    throw Error(ErrorCode::InvalidGeometry, os.str());
  }
}

PauliOps build_pauli_ops() {
  Mat2 lower = Mat2::Zero();
  lower(1, 0) = 1.0;  // |g><e| with single-atom order (e, g)
  const Mat2 id = Mat2::Identity();

  auto kron = [](const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };

  PauliOps ops;
  ops.lower[0] = kron(lower, id);
  ops.lower[1] = kron(id, lower);
  for (int mu = 0; mu < 2; ++mu) {
    ops.raise[mu] = ops.lower[mu].adjoint();
    ops.excited[mu] = ops.raise[mu] * ops.lower[mu];
    ops.ground[mu] = ops.lower[mu] * ops.raise[mu];
  }
  return ops;
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::InvalidGeometry: return "invalid geometry";
    case ErrorCode::BasisMismatch: return "basis mismatch";
    case ErrorCode::DegenerateDrive: return "degenerate drive";
    case ErrorCode::NoPhoton: return "no photon";
    case ErrorCode::Singular: return "singular system";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::InvalidState: return "invalid state";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

const char* to_string(Basis b) noexcept {
  return b == Basis::Product ? "product" : "symmetrized";
}

double wrap_phase(double angle) noexcept {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

SystemParams SystemParams::with_phi(double omega, double phi) {
  SystemParams p;
  p.omega = omega;
  p.laser_dir = Vec3::UnitZ();
  p.atom_separation = Vec3(0.0, 0.0, phi / kPi);
  return p;
}

void SystemParams::validate() const {
  if (!std::isfinite(omega) || omega < 0.0)
    throw Error(ErrorCode::InvalidArgument,
                "omega must be finite and non-negative");
  require_unit(laser_dir, "laser direction");
  if (!atom_separation.allFinite())
    throw Error(ErrorCode::InvalidGeometry, "atom separation must be finite");
}

double SystemParams::phi() const {
  return kPi * laser_dir.dot(atom_separation);
}

Mat4 SymmetrizedBasis::unitary() const {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx em = std::polar(r, -phi_);
  const cplx ep = std::polar(r, phi_);
  Mat4 kets = Mat4::Zero();  // columns: |e>, |s>, |a>, |g>
  kets(product::kEE, sym::kE) = 1.0;
  kets(product::kEG, sym::kS) = em;
  kets(product::kGE, sym::kS) = ep;
  kets(product::kEG, sym::kA) = em;
  kets(product::kGE, sym::kA) = -ep;
  kets(product::kGG, sym::kG) = 1.0;
  return kets.adjoint();
}

DetectionDirection DetectionDirection::along(const Vec3& dir) {
  require_unit(dir, "detector direction");
  return DetectionDirection(dir);
}

DetectionDirection DetectionDirection::with_phase(double delta) {
  if (!std::isfinite(delta))
    throw Error(ErrorCode::InvalidArgument, "detection phase must be finite");
  return DetectionDirection(delta);
}

Phase delta_phase(const SystemParams& params, const DetectionDirection& det) {
  if (!det.has_direction()) {
    const double d = det.phase();
    return {d, wrap_phase(d)};
  }
  params.validate();
  const Vec3& r = det.direction();
  require_unit(r, "detector direction");
  const double raw = kTwoPi * (params.laser_dir - r).dot(params.atom_separation);
  return {raw, wrap_phase(raw)};
}

DensityMatrix4 DensityMatrix4::pure(const Vec4& psi, Basis basis, double phi) {
  const double n = psi.squaredNorm();
  if (!(n > 0.0))
    throw Error(ErrorCode::InvalidArgument, "state vector has zero norm");
  return DensityMatrix4(psi * psi.adjoint() / n, basis, phi);
}

DensityMatrix4 DensityMatrix4::ground() {
  Mat4 m = Mat4::Zero();
  m(product::kGG, product::kGG) = 1.0;
  return DensityMatrix4(m, Basis::Product);
}

void validate(const DensityMatrix4& rho, const StateTolerances& tol) {
  const Mat4& m = rho.entries();
  if (!m.allFinite())
    throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    std::ostringstream os;
    os << "density matrix not Hermitian (deviation " << herm << ")";
    throw Error(ErrorCode::InvalidState, os.str());
  }
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " differs from 1";
    throw Error(ErrorCode::InvalidState, os.str());
  }
  const Mat4 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> es(h, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin < tol.min_eigenvalue) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lmin;
    throw Error(ErrorCode::InvalidState, os.str());
  }
}

bool is_valid(const DensityMatrix4& rho, const StateTolerances& tol) {
  try {
    validate(rho, tol);
    return true;
  } catch (const Error&) {
    return false;
  }
}

DensityMatrix4 to_symmetrized(const DensityMatrix4& rho,
                              const SymmetrizedBasis& basis) {
  if (rho.basis() != Basis::Product)
    throw Error(ErrorCode::BasisMismatch,
                "to_symmetrized expects a product-basis state");
  const Mat4 u = basis.unitary();
  return DensityMatrix4(u * rho.entries() * u.adjoint(), Basis::Symmetrized,
                        basis.phi());
}

DensityMatrix4 to_product(const DensityMatrix4& rho) {
  if (rho.basis() != Basis::Symmetrized)
    throw Error(ErrorCode::BasisMismatch,
                "to_product expects a symmetrized-basis state");
  const Mat4 u = SymmetrizedBasis(rho.phi()).unitary();
  return DensityMatrix4(u.adjoint() * rho.entries() * u, Basis::Product);
}

const PauliOps& pauli_ops() {
  static const PauliOps ops = build_pauli_ops();
  return ops;
}

}  // namespace dicke
