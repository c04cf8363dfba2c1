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

// Quantum-jump unraveling of the pair master equation.
//
// Photodetection is parametrized by the detection phase delta, uniform on
// [0, 2pi). The jump family sqrt(2) s-(delta) with that measure reproduces
// the single-atom dissipator exactly because
//   int d delta / 2pi  s+(delta) s-(delta) = n_1 + n_2.
// A physical detector of finite acceptance corresponds to a delta window.
//
// Seeds: trajectory i of a run with master seed m uses
//   trajectory_seed(m, i) = splitmix64(m + 0x9E3779B97F4A7C15 * (i + 1))
// so results do not depend on the number of worker threads.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "dicke/correlations.hpp"

namespace dicke {

struct Click {
  double time;   // in 1/gamma
  double delta;  // in [0, 2pi)
};

struct ClickRecord {
  std::vector<Click> clicks;
  std::uint64_t seed = 0;
  double duration = 0.0;
  double omega = 0.0;
  double phi = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) noexcept;

// Single pure-state trajectory. Between clicks the unnormalized state
// follows exp(-i H_eff t) with H_eff = H - i (n_1 + n_2); a click occurs when
// its squared norm falls to a uniform threshold, located by binary search on
// a ladder of precomputed step propagators down to below 1e-8 in time.
class JumpTrajectory {
 public:
  JumpTrajectory(const SystemParams& params, std::uint64_t seed);
  JumpTrajectory(const SystemParams& params, std::uint64_t seed,
                 const Vec4& initial);

  // Evolve to absolute time `until`, appending clicks to `clicks` if given.
  void run_until(double until, std::vector<Click>* clicks);

  double time() const noexcept { return time_; }
  // Normalized product-basis state at time().
  Vec4 state() const { return psi_ / psi_.norm(); }

 private:
  void jump(std::vector<Click>* clicks);
  double uniform();
  double sample_delta(const Vec4& psi);

  double phi_;
  Mat4 heff_;
  std::vector<Mat4> ladder_;  // exp(-i H_eff h / 2^k)
  std::vector<double> steps_;
  std::mt19937_64 rng_;
  Vec4 psi_;
  double threshold_;
  double time_ = 0.0;
};

// Starts in |g,g>.
ClickRecord simulate_trajectory(const SystemParams& params, double duration,
                                std::uint64_t seed);

struct EnsembleState {
  Mat4 mean;                // product basis
  Eigen::Matrix4d stderr_re;
  Eigen::Matrix4d stderr_im;
  std::size_t trajectories;
};

// Average of |psi(t)><psi(t)| over trajectories started in |g,g>.
EnsembleState ensemble_average(const SystemParams& params, double t,
                               std::size_t trajectories, std::uint64_t seed,
                               unsigned workers = 0);

struct PhaseWindow {
  double center;
  double half_width;

  bool contains(double delta) const noexcept;
  void validate() const;
};

struct CoincidenceHistogram {
  PhaseWindow first{0.0, kPi};
  PhaseWindow second{0.0, kPi};
  std::vector<double> tau_edges;
  std::vector<std::uint64_t> pairs;     // per tau bin
  std::vector<std::uint64_t> exposure;  // first-window clicks whose full bin fits in the record
  std::uint64_t singles_first = 0;
  std::uint64_t singles_second = 0;
  double observed_time = 0.0;

  std::size_t bins() const noexcept { return pairs.size(); }
  bool defined(std::size_t bin) const;
  // pairs / (exposure * rate_second * bin width)
  double estimate(std::size_t bin) const;
  // Poisson error on the pair count; one count when no pairs were seen.
  double standard_error(std::size_t bin) const;
  void merge(const CoincidenceHistogram& other);
};

// Ordered pairs (click in `first` at t, later click in `second` at t + tau).
// Clicks before `burn_in` are ignored. Edges must be strictly increasing with
// the first edge >= 0.
CoincidenceHistogram coincidence_histogram(const std::vector<ClickRecord>& records,
                                           const PhaseWindow& first,
                                           const PhaseWindow& second,
                                           const std::vector<double>& tau_edges,
                                           double burn_in = 0.0);

struct McOptions {
  double budget = 0.0;  // total observed time over all trajectories
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: hardware concurrency
  double trajectory_duration = 1e4;
  double burn_in = 20.0;
};

struct WindowPair {
  PhaseWindow first;
  PhaseWindow second;
};

struct G2Estimate {
  CoincidenceHistogram histogram;
  std::vector<double> value;
  std::vector<double> standard_error;
  std::vector<bool> defined;
};

// One histogram per window pair, all from the same trajectories.
std::vector<G2Estimate> estimate_g2(const SystemParams& params,
                                    const std::vector<WindowPair>& windows,
                                    const std::vector<double>& tau_edges,
                                    const McOptions& options);

G2Estimate estimate_g2(const SystemParams& params, double delta1,
                       double delta2, double half_width,
                       const std::vector<double>& tau_edges,
                       const McOptions& options);

void write_click_record(std::ostream& os, const ClickRecord& record);
ClickRecord read_click_record(std::istream& is);

}  // namespace dicke
