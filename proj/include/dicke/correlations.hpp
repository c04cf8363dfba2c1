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

// First- and second-order photon correlations of the driven pair.
//
// Detector positions enter only through their detection phases delta. All
// intensities are per-atom-rate normalized; g2 is the ratio of the
// conditional detection probability at detector 2 after a click at detector
// 1 to the unconditional steady-state probability at detector 2.

#include <string>
#include <vector>

#include "dicke/detection.hpp"
#include "dicke/dynamics.hpp"

namespace dicke {

// s = 2 (Omega/gamma)^2 + 1, nu = sqrt(8 s - 9) / 2 taken as a complex number
// (purely imaginary for Omega < gamma/4).
struct G2Params {
  double s;
  cplx nu;

  static G2Params from_omega(double omega);
};

// Steady-state fringe (1 + cos d)(ee + ss) + (1 - cos d)(ee + aa). Ignores
// the s/a coherence, so it is exact only when rho_sa = 0.
double g1_intensity(const DensityMatrix4& rho_sym, double delta);

// <sigma+(delta) sigma-(delta)> written out in symmetrized elements,
// including the -2 sin(delta) Im rho_sa term of a general state.
double g1_general(const DensityMatrix4& rho_sym, double delta);

// (rho_ss - rho_aa) / (2 rho_ee + rho_ss + rho_aa) of the steady state.
double g1_visibility(double omega);
double g1_visibility(const SystemParams& params);

// Closed-form g2(delta1, 0; delta2, t), t = gamma tau.
double g2_analytic(double omega, double delta1, double delta2, double t);
double g2_analytic(const SystemParams& params, double delta1, double delta2,
                   double t);

double g2_zero_delay(double omega, double delta1, double delta2);
double g2_zero_delay(const SystemParams& params, double delta1, double delta2);

// Regression-theorem evaluation on the full master equation: reduce the
// steady state on a click at detector 1, propagate, and read the intensity at
// detector 2.
class RegressionG2 {
 public:
  explicit RegressionG2(const SystemParams& params);

  double operator()(double delta1, double delta2, double t) const;

  // values[i1][i2][k] for every (delta1, delta2, t) combination.
  std::vector<double> grid(const std::vector<double>& delta1,
                           const std::vector<double>& delta2,
                           const std::vector<double>& t) const;

  const SuperOp& liouvillian() const noexcept { return L_; }
  const DensityMatrix4& steady_state() const noexcept { return steady_; }

 private:
  SystemParams params_;
  SuperOp L_;
  DensityMatrix4 steady_;
};

double g2_numeric(const SystemParams& params, const DetectionDirection& det1,
                  const DetectionDirection& det2, double t);

struct InequalityCheck {
  double lhs;
  double rhs;
  bool violated;
};

// (g(1;1) - 1)(g(2;2) - 1) >= (g(1;2) - 1)^2 holds for classical fields; all
// values at zero delay.
InequalityCheck classical_inequality_check(const SystemParams& params,
                                           double delta1, double delta2);

enum class Method { Analytic, Numeric, MonteCarlo };
const char* to_string(Method m) noexcept;

struct CorrelationGrid {
  double omega = 0.0;
  Method method = Method::Analytic;
  std::vector<double> delta1;
  std::vector<double> delta2;
  std::vector<double> tau;
  std::vector<double> values;  // [i1][i2][k], row-major

  double at(std::size_t i1, std::size_t i2, std::size_t k) const {
    return values[(i1 * delta2.size() + i2) * tau.size() + k];
  }
};

CorrelationGrid g2_grid(const SystemParams& params, Method method,
                        const std::vector<double>& delta1,
                        const std::vector<double>& delta2,
                        const std::vector<double>& tau);

}  // namespace dicke
