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

// Direction-resolved photodetection on the atom pair.

#include "dicke/qcore.hpp"

namespace dicke {

// s-(delta) = s-_1 + exp(i (delta - 2 phi)) s-_2 in the product basis.
//
// The relative phase is delta - 2 phi = -k r-hat . x12, which makes
// <s+(delta) s-(delta)> equal to the two-atom fringe
//   (1 + cos delta)(rho_ee + rho_ss) + (1 - cos delta)(rho_ee + rho_aa)
// for states without s/a coherence, and maps |e> onto |s> at delta = 0.
class DirectionalLoweringOp {
 public:
  DirectionalLoweringOp(double delta, double phi);

  const Mat4& matrix() const noexcept { return lower_; }
  Mat4 raising() const { return lower_.adjoint(); }
  // sigma+(delta) sigma-(delta)
  Mat4 intensity() const { return lower_.adjoint() * lower_; }
  double delta() const noexcept { return delta_; }
  double phi() const noexcept { return phi_; }

 private:
  Mat4 lower_;
  double delta_;
  double phi_;
};

DirectionalLoweringOp directional_lowering(const SystemParams& params,
                                           const DetectionDirection& det);

// <sigma+(delta) sigma-(delta)> on rho (either basis).
double detection_probability(const DensityMatrix4& rho,
                             const DirectionalLoweringOp& op);

// rho -> s- rho s+ / <s+ s->, returned in the basis of the input. Throws
// NoPhoton when the detection probability is below 1e-14.
DensityMatrix4 reduce_on_detection(const DensityMatrix4& rho,
                                   const DirectionalLoweringOp& op);

// Im rho_sa of a symmetrized-basis state.
double sa_coherence(const DensityMatrix4& rho_sym);

struct ProductDecomposition {
  Mat2 atom1;
  Mat2 atom2;
  double residual;  // max |rho - atom1 (x) atom2|
};

// Closest product candidate built from the two single-atom marginals. A state
// is a product state exactly when it equals the product of its marginals.
ProductDecomposition product_decomposition(const DensityMatrix4& rho);

// True when rho = rho1 (x) rho2 to 1e-8.
bool separability_witness(const DensityMatrix4& rho);

}  // namespace dicke
