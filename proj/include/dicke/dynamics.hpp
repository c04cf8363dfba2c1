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

// Master-equation dynamics of the driven atom pair on exact resonance.
//
// Rotating-frame generator (gamma = 1):
//   d rho/dt = -i [H, rho] - sum_mu (n_mu rho + rho n_mu - 2 s-_mu rho s+_mu)
//   H = -Omega (exp(-i phi) s+_1 + exp(i phi) s+_2 + h.c.)
// with n_mu = s+_mu s-_mu. The drive phase of each atom is taken relative to
// the pair midpoint; with this gauge |a> decouples from the drive and the
// symmetrized coherences obey the 6+3 reduced system below.

#include <array>
#include <cmath>

#include "dicke/qcore.hpp"

namespace dicke {

// Generator acting on column-stacked product-basis density matrices:
// vec(rho)[i + 4 j] = rho(i, j).
class SuperOp {
 public:
  SuperOp(const Mat16& matrix, double phi) : matrix_(matrix), phi_(phi) {}

  const Mat16& matrix() const noexcept { return matrix_; }
  Basis basis() const noexcept { return Basis::Product; }
  double phi() const noexcept { return phi_; }

  Vec16 apply(const Vec16& v) const { return matrix_ * v; }
  Mat4 apply(const Mat4& rho) const;

 private:
  Mat16 matrix_;
  double phi_;
};

Vec16 vectorize(const Mat4& m);
Mat4 unvectorize(const Vec16& v);

// Drive Hamiltonian in the product basis.
Mat4 drive_hamiltonian(double omega, double phi);

SuperOp assemble_liouvillian(const SystemParams& params);

// rho(t) = exp(L t) rho0. Accepts product or symmetrized input and returns the
// same basis. Throws Domain for t < 0.
DensityMatrix4 propagate(const SuperOp& L, const DensityMatrix4& rho0, double t);

// Same as propagate() but reuses exp(L t) across many initial states.
class Propagator {
 public:
  Propagator(const SuperOp& L, double t);
  DensityMatrix4 operator()(const DensityMatrix4& rho0) const;
  const Mat16& matrix() const noexcept { return expm_; }

 private:
  Mat16 expm_;
  double phi_;
};

struct SteadyPopulations {
  double gg;
  double ss;
  double aa;
  double ee;
};

// Closed-form diagonal of the steady state. Throws DegenerateDrive for
// Omega == 0.
SteadyPopulations steady_state_closed_form(const SystemParams& params);
SteadyPopulations steady_state_closed_form(double omega);

// Kernel of L with unit trace from a bordered linear solve. Returned in the
// product basis.
DensityMatrix4 steady_state_numeric(const SuperOp& L);

// The nine real coordinates that the symmetrized coherences reduce to.
// rho_gg = 1 - ee - ss - aa.
struct ReducedState {
  double ee = 0.0;
  double ss = 0.0;
  double aa = 0.0;
  double es_im = 0.0;
  double sg_im = 0.0;
  double eg_re = 0.0;
  double ea_re = 0.0;
  double sa_im = 0.0;
  double ag_re = 0.0;

  static double alpha_for(double omega) { return omega / (std::sqrt(2.0) * kGamma); }

  std::array<double, 9> as_array() const;
  static ReducedState from_array(const std::array<double, 9>& a);
};

// Right-hand side of the reduced equations; the first six coordinates and the
// last three evolve independently.
ReducedState reduced_rhs(const ReducedState& state, double alpha);

// Embed into a full symmetrized-basis density matrix; every element outside
// the reduced coordinates is zero.
DensityMatrix4 embed_reduced(const ReducedState& state, double phi);
// Read the reduced coordinates off a symmetrized-basis matrix (not
// necessarily unit trace; rho_gg is dropped).
ReducedState project_reduced(const DensityMatrix4& rho_sym);

// Largest modulus among the symmetrized elements that the reduced coordinates
// do not describe (e.g. Re rho_es, Im rho_eg).
double off_manifold_norm(const DensityMatrix4& rho_sym);

}  // namespace dicke
