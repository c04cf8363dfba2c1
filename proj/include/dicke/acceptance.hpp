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

// Desk-scale verification suite. Each criterion pins its tolerance here; the
// CLI `check` command and the acceptance test binary both run this list.

#include <cstdint>
#include <string>
#include <vector>

namespace dicke {

struct AcceptanceOptions {
  bool fast = false;  // skip the Monte Carlo criterion
  double mc_budget = 1e7;
  std::size_t ensemble_trajectories = 2000;
  std::uint64_t seed = 20261016;
  unsigned workers = 0;
};

struct CriterionResult {
  int id;
  std::string title;
  std::string measured;
  bool passed;
  bool skipped = false;
  double seconds = 0.0;
  double time_budget = 0.0;  // seconds, 0 when unbounded
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// g2 averaged over finite detector windows and a delay bin, each window
// weighted by the steady-state intensity (s + cos delta). This is what a
// coincidence histogram with those windows estimates.
double g2_window_average(double omega, double center1, double center2,
                         double half_width, double tau_lo, double tau_hi,
                         int nodes = 8);

}  // namespace dicke
