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

#include "doctest.h"

#include <numeric>
#include <sstream>

#include "dicke/acceptance.hpp"
#include "dicke/trajectories.hpp"
#include "oracles.hpp"

using namespace dicke;

TEST_CASE("seed splitting") {
  CHECK(trajectory_seed(5, 0) == splitmix64(5 + 0x9E3779B97F4A7C15ULL));
  CHECK(trajectory_seed(5, 0) != trajectory_seed(5, 1));
  CHECK(trajectory_seed(5, 1) != trajectory_seed(6, 1));
}

TEST_CASE("unraveling integrates to the dissipator") {
  // s+(d) s-(d) is a first-degree trigonometric polynomial in d, so a
  // three-point rule integrates it exactly.
  for (double phi : {0.0, 0.8}) {
    Mat4 avg = Mat4::Zero();
    const int n = 7;
    for (int k = 0; k < n; ++k) avg += DirectionalLoweringOp(kTwoPi * k / n, phi).intensity() / double(n);
    const PauliOps& ops = pauli_ops();
    CHECK((avg - ops.excited[0] - ops.excited[1]).norm() < 1e-14);
  }
}

TEST_CASE("trajectory basics") {
  SUBCASE("no drive, ground start: no clicks") {
    const ClickRecord r = simulate_trajectory(SystemParams::with_phi(0.0, 0.0), 100.0, 3);
    CHECK(r.clicks.empty());
    CHECK(r.duration == 100.0);
  }
  SUBCASE("invalid duration") {
    CHECK_THROWS_AS(simulate_trajectory(SystemParams::with_phi(1.0, 0.0), 0.0, 3), Error);
  }
  SUBCASE("reproducible and well formed") {
    const SystemParams p = SystemParams::with_phi(0.8, 0.3);
    const ClickRecord a = simulate_trajectory(p, 500.0, 42);
    const ClickRecord b = simulate_trajectory(p, 500.0, 42);
    const ClickRecord c = simulate_trajectory(p, 500.0, 43);
    REQUIRE(a.clicks.size() == b.clicks.size());
    for (std::size_t i = 0; i < a.clicks.size(); ++i) {
      CHECK(a.clicks[i].time == b.clicks[i].time);
      CHECK(a.clicks[i].delta == b.clicks[i].delta);
    }
    CHECK((a.clicks.size() != c.clicks.size() || a.clicks[0].time != c.clicks[0].time));
    for (std::size_t i = 0; i < a.clicks.size(); ++i) {
      CHECK(a.clicks[i].delta >= 0.0);
      CHECK(a.clicks[i].delta < kTwoPi);
      if (i) CHECK(a.clicks[i].time > a.clicks[i - 1].time);
    }
  }
  SUBCASE("decay of the fully excited pair") {
    // Without drive |e,e> emits exactly two photons.
    JumpTrajectory t(SystemParams::with_phi(0.0, 0.0), 9, Vec4::Unit(product::kEE));
    std::vector<Click> clicks;
    t.run_until(200.0, &clicks);
    CHECK(clicks.size() == 2);
    CHECK(std::abs(t.state()(product::kGG)) == doctest::Approx(1.0));
  }
}

TEST_CASE("click rate matches the steady-state excitation") {
  const double omega = 0.8;
  const SystemParams p = SystemParams::with_phi(omega, 0.0);
  const SteadyPopulations c = steady_state_closed_form(omega);
  const double expected = 2.0 * (2.0 * c.ee + c.ss + c.aa);
  const ClickRecord r = simulate_trajectory(p, 1e4 + 20.0, 77);
  // Block estimate of the rate and its error after a short burn-in.
  const int blocks = 100;
  std::vector<double> counts(blocks, 0.0);
  for (const Click& k : r.clicks)
    if (k.time >= 20.0) counts[std::min(blocks - 1, int((k.time - 20.0) / 100.0))] += 1.0;
  const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / blocks;
  double var = 0.0;
  for (double x : counts) var += (x - mean) * (x - mean);
  var /= blocks - 1;
  const double rate = mean / 100.0;
  const double se = std::sqrt(var / blocks) / 100.0;
  CHECK(std::abs(rate - expected) < 3.0 * se);
}

TEST_CASE("ensemble average reproduces the master equation") {
  const SystemParams p = SystemParams::with_phi(0.8, 0.4);
  const EnsembleState e = ensemble_average(p, 5.0, 2000, 11, 0);
  const Mat4 ref = propagate(assemble_liouvillian(p), DensityMatrix4::ground(), 5.0).entries();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(e.mean(i, j).real() - ref(i, j).real()) <= 3.0 * e.stderr_re(i, j) + 1e-12);
      CHECK(std::abs(e.mean(i, j).imag() - ref(i, j).imag()) <= 3.0 * e.stderr_im(i, j) + 1e-12);
    }
  // Independent of the number of worker threads.
  const EnsembleState one = ensemble_average(p, 1.0, 50, 11, 1);
  const EnsembleState many = ensemble_average(p, 1.0, 50, 11, 4);
  CHECK((one.mean - many.mean).norm() == 0.0);
}

TEST_CASE("coincidence histogram bookkeeping") {
  const PhaseWindow all{kPi, kPi};
  const std::vector<double> edges{0.0, 1.0, 2.0};
  SUBCASE("empty input") {
    const CoincidenceHistogram h = coincidence_histogram({}, all, all, edges);
    CHECK(h.bins() == 2);
    CHECK(h.pairs[0] == 0);
    CHECK_FALSE(h.defined(0));
    CHECK(h.estimate(0) == 0.0);
  }
  SUBCASE("single click gives no pairs") {
    ClickRecord r;
    r.duration = 10.0;
    r.clicks = {{3.0, 1.0}};
    const CoincidenceHistogram h = coincidence_histogram({r}, all, all, edges);
    CHECK(h.pairs[0] == 0);
    CHECK(h.pairs[1] == 0);
    CHECK(h.singles_first == 1);
  }
  SUBCASE("hand-counted pairs") {
    ClickRecord r;
    r.duration = 10.0;
    r.clicks = {{1.0, 0.1}, {1.5, 3.0}, {2.2, 0.2}, {9.5, 0.0}};
    const PhaseWindow near0{0.0, 0.5}, near3{3.0, 0.5};
    const CoincidenceHistogram h = coincidence_histogram({r}, near0, near3, edges);
    // Clicks near 0 at 1.0, 2.2, 9.5; only 1.0 -> 1.5 lands near 3 at tau 0.5.
    CHECK(h.pairs[0] == 1);
    CHECK(h.pairs[1] == 0);
    CHECK(h.singles_first == 3);
    CHECK(h.singles_second == 1);
    // The click at 9.5 cannot see a full bin.
    CHECK(h.exposure[0] == 2);
    CHECK(h.exposure[1] == 2);
    CHECK(h.estimate(0) == doctest::Approx(1.0 / (2.0 * (1.0 / 10.0) * 1.0)));
    const CoincidenceHistogram burn = coincidence_histogram({r}, near0, near3, edges, 1.2);
    CHECK(burn.pairs[0] == 0);
    CHECK(burn.singles_first == 2);
  }
  SUBCASE("wrapped windows") {
    const PhaseWindow w{0.0, 0.2};
    CHECK(w.contains(kTwoPi - 0.1));
    CHECK(w.contains(0.15));
    CHECK_FALSE(w.contains(0.3));
  }
  SUBCASE("invalid layouts") {
    CHECK_THROWS_AS(coincidence_histogram({}, all, all, {0.0}), Error);
    CHECK_THROWS_AS(coincidence_histogram({}, all, all, {1.0, 0.5}), Error);
    CHECK_THROWS_AS(coincidence_histogram({}, all, all, {-1.0, 0.5}), Error);
    CHECK_THROWS_AS(coincidence_histogram({}, PhaseWindow{0.0, 0.0}, all, edges), Error);
  }
}

TEST_CASE("Monte Carlo g2 estimates") {
  const double omega = 0.8;
  const SystemParams p = SystemParams::with_phi(omega, 0.0);
  const double hw = 0.3;
  const std::vector<double> edges{0.0, 0.05, 1.0, 1.05, 60.0, 60.5};
  McOptions mc;
  mc.budget = 1e6;
  mc.seed = 2024;
  const std::vector<WindowPair> windows{{{0.0, hw}, {0.0, hw}},
                                        {{0.0, hw}, {kPi, hw}},
                                        {{kPi, hw}, {kPi, hw}}};
  const std::vector<G2Estimate> est = estimate_g2(p, windows, edges, mc);
  const std::pair<double, double> centers[] = {{0.0, 0.0}, {0.0, kPi}, {kPi, kPi}};
  for (std::size_t w = 0; w < windows.size(); ++w)
    for (std::size_t b : {0u, 2u, 4u}) {
      REQUIRE(est[w].defined[b]);
      const double ref = g2_window_average(omega, centers[w].first, centers[w].second, hw,
                                           edges[b], edges[b + 1]);
      CHECK(std::abs(est[w].value[b] - ref) <= 3.0 * est[w].standard_error[b]);
    }
  // Finite windows leave a small residue at delta2 = delta1 + pi.
  CHECK(g2_window_average(omega, 0.0, kPi, hw, 0.0, 0.05) < 0.05);
  CHECK(std::abs(est[1].value[0]) <= 3.0 * est[1].standard_error[0] + 0.05);

  SUBCASE("deterministic for any worker count") {
    McOptions a = mc, b = mc;
    a.budget = b.budget = 5e4;
    a.workers = 1;
    b.workers = 3;
    const G2Estimate x = estimate_g2(p, 0.0, 0.0, hw, edges, a);
    const G2Estimate y = estimate_g2(p, 0.0, 0.0, hw, edges, b);
    CHECK(x.histogram.pairs == y.histogram.pairs);
    CHECK(x.value == y.value);
  }
  SUBCASE("error bars shrink with the budget") {
    McOptions small = mc, big = mc;
    small.budget = 2e5;
    big.budget = 4e5;
    const std::vector<double> e{0.0, 0.5, 1.0, 1.5};
    const G2Estimate s = estimate_g2(p, 0.0, kPi, 1.0, e, small);
    const G2Estimate l = estimate_g2(p, 0.0, kPi, 1.0, e, big);
    double ms = 0.0, ml = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      ms += s.standard_error[k];
      ml += l.standard_error[k];
    }
    CHECK(ml / ms == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
  }
  SUBCASE("options validated") {
    McOptions bad = mc;
    bad.budget = 0.0;
    CHECK_THROWS_AS(estimate_g2(p, 0.0, 0.0, hw, edges, bad), Error);
  }
}

TEST_CASE("click record file format") {
  const ClickRecord r = simulate_trajectory(SystemParams::with_phi(0.8, 0.25), 50.0, 5);
  std::stringstream ss;
  write_click_record(ss, r);
  const std::string text = ss.str();
  CHECK(text.rfind("# dicke-fringe v", 0) == 0);
  CHECK(text.find("# seed=5\n") != std::string::npos);
  const ClickRecord back = read_click_record(ss);
  CHECK(back.seed == 5);
  CHECK(back.duration == 50.0);
  CHECK(back.omega == 0.8);
  REQUIRE(back.clicks.size() == r.clicks.size());
  for (std::size_t i = 0; i < r.clicks.size(); ++i) {
    CHECK(back.clicks[i].time == doctest::Approx(r.clicks[i].time).epsilon(1e-11));
    CHECK(back.clicks[i].delta == doctest::Approx(r.clicks[i].delta).epsilon(1e-11));
  }
  std::stringstream broken("# dicke-fringe v0.1.0\n1.0 2.0\n");
  CHECK_THROWS_AS(read_click_record(broken), Error);
}
