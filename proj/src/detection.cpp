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

#include "dicke/detection.hpp"

#include <cmath>

namespace dicke {

namespace {

constexpr double kMinDetectionProbability = 1e-14;
constexpr double kProductTolerance = 1e-8;

DensityMatrix4 as_product(const DensityMatrix4& rho, double phi) {
  if (rho.basis() == Basis::Product) return rho;
  const double d = wrap_phase(rho.phi() - phi);
  if (std::min(d, kTwoPi - d) > 1e-12)
    throw Error(ErrorCode::BasisMismatch,
                "state and detection operator use different phi");
  return to_product(rho);
}

}  // namespace

DirectionalLoweringOp::DirectionalLoweringOp(double delta, double phi)
    : delta_(delta), phi_(phi) {
  if (!std::isfinite(delta) || !std::isfinite(phi))
    throw Error(ErrorCode::InvalidArgument, "phases must be finite");
  const PauliOps& ops = pauli_ops();
  lower_ = ops.lower[0] + std::polar(1.0, delta - 2.0 * phi) * ops.lower[1];
}

DirectionalLoweringOp directional_lowering(const SystemParams& params,
                                           const DetectionDirection& det) {
  const Phase d = delta_phase(params, det);
  return DirectionalLoweringOp(d.raw, params.phi());
}

double detection_probability(const DensityMatrix4& rho,
                             const DirectionalLoweringOp& op) {
  const DensityMatrix4 p = as_product(rho, op.phi());
  return (p.entries() * op.intensity()).trace().real();
}

DensityMatrix4 reduce_on_detection(const DensityMatrix4& rho,
                                   const DirectionalLoweringOp& op) {
  const DensityMatrix4 p = as_product(rho, op.phi());
  const Mat4& s = op.matrix();
  Mat4 out = s * p.entries() * s.adjoint();
  const double prob = out.trace().real();
  if (!(prob > kMinDetectionProbability))
    throw Error(ErrorCode::NoPhoton,
                "detection probability vanishes for this state and direction");
  out /= prob;
  out = (0.5 * (out + out.adjoint())).eval();
  DensityMatrix4 reduced(out, Basis::Product);
  if (rho.basis() == Basis::Symmetrized)
    return to_symmetrized(reduced, SymmetrizedBasis(rho.phi()));
  return reduced;
}

double sa_coherence(const DensityMatrix4& rho) {
  if (rho.basis() != Basis::Symmetrized)
    throw Error(ErrorCode::BasisMismatch,
                "sa coherence requires a symmetrized-basis state");
  return rho(sym::kS, sym::kA).imag();
}

ProductDecomposition product_decomposition(const DensityMatrix4& rho) {
  const DensityMatrix4 p =
      rho.basis() == Basis::Product ? rho : to_product(rho);
  const Mat4& m = p.entries();
  // Index of |i,j> is 2 i + j.
  Mat2 a1 = Mat2::Zero();
  Mat2 a2 = Mat2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) {
        a1(i, k) += m(2 * i + j, 2 * k + j);
        a2(i, k) += m(2 * j + i, 2 * j + k);
      }
  const double tr = m.trace().real();
  if (tr > 0.0) a2 /= tr;

  Mat4 prod;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      prod.block<2, 2>(2 * i, 2 * k) = a1(i, k) * a2;
  return {a1, a2, (m - prod).cwiseAbs().maxCoeff()};
}

bool separability_witness(const DensityMatrix4& rho) {
  return product_decomposition(rho).residual <= kProductTolerance;
}

}  // namespace dicke
