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

#include <random>

#include <Eigen/Eigenvalues>

#include "dicke/dynamics.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

DensityMatrix4 sym_steady(const SystemParams& p) {
  return to_symmetrized(steady_state_numeric(assemble_liouvillian(p)), SymmetrizedBasis(p.phi()));
}

}  // namespace

TEST_CASE("generator matches an independently written master equation") {
  for (double omega : {0.0, 0.3, 1.0, 4.0})
    for (double phi : {0.0, 0.9, kPi / 2.0, 2.5}) {
      const SuperOp L = assemble_liouvillian(SystemParams::with_phi(omega, phi));
      CHECK((L.matrix() - oracle::liouvillian(omega, phi)).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("generator structure") {
  SUBCASE("trace preservation") {
    const SuperOp L = assemble_liouvillian(SystemParams::with_phi(1.3, 0.4));
    // Row of the trace functional: sum of the diagonal entries of vec.
    double worst = 0.0;
    for (int c = 0; c < 16; ++c) {
      cplx tr = 0.0;
      for (int k = 0; k < 4; ++k) tr += L.matrix()(k + 4 * k, c);
      worst = std::max(worst, std::abs(tr));
    }
    CHECK(worst < 1e-14);
  }
  SUBCASE("no drive relaxes to the ground state") {
    const DensityMatrix4 ss = steady_state_numeric(assemble_liouvillian(SystemParams::with_phi(0.0, 0.0)));
    CHECK(std::abs(ss(product::kGG, product::kGG) - 1.0) < 1e-14);
  }
  SUBCASE("one-dimensional kernel at Omega = gamma") {
    const SuperOp L = assemble_liouvillian(SystemParams::with_phi(1.0, 0.0));
    Eigen::ComplexEigenSolver<Mat16> es(L.matrix());
    int zeros = 0;
    double abscissa = -1e300;
    for (int k = 0; k < 16; ++k) {
      const double re = es.eigenvalues()(k).real();
      abscissa = std::max(abscissa, re);
      if (std::abs(es.eigenvalues()(k)) < 1e-10) ++zeros;
    }
    CHECK(zeros == 1);
    CHECK(std::abs(abscissa) < 1e-10);
  }
}

TEST_CASE("spectral gap over a range of drives") {
  for (double omega : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const SuperOp L = assemble_liouvillian(SystemParams::with_phi(omega, 0.3));
    Eigen::ComplexEigenSolver<Mat16> es(L.matrix());
    double gap = 1e300;
    for (int k = 0; k < 16; ++k) {
      const cplx ev = es.eigenvalues()(k);
      if (std::abs(ev) > 1e-9) gap = std::min(gap, -ev.real());
    }
    CHECK(gap >= 0.5 - 1e-9);
  }
  // Relaxation toward the steady state at rate one or faster.
  const SystemParams p = SystemParams::with_phi(1.0, 0.0);
  const SuperOp L = assemble_liouvillian(p);
  const DensityMatrix4 ss = steady_state_numeric(L);
  const double d5 = (propagate(L, DensityMatrix4::ground(), 5.0).entries() - ss.entries()).norm();
  const double d15 = (propagate(L, DensityMatrix4::ground(), 15.0).entries() - ss.entries()).norm();
  CHECK(std::log(d15 / d5) / 10.0 <= -0.9);
}

TEST_CASE("closed-form steady state") {
  SUBCASE("Omega = gamma") {
    const SteadyPopulations c = steady_state_closed_form(1.0);
    CHECK(c.gg == doctest::Approx(oracle::kGG1).epsilon(1e-14));
    CHECK(c.ss == doctest::Approx(oracle::kSS1).epsilon(1e-14));
    CHECK(c.aa == doctest::Approx(oracle::kAA1).epsilon(1e-14));
    CHECK(c.ee == doctest::Approx(oracle::kEE1).epsilon(1e-14));
  }
  SUBCASE("strong drive") {
    const SteadyPopulations c = steady_state_closed_form(1e3);
    for (double v : {c.gg, c.ss, c.aa, c.ee}) CHECK(std::abs(v - 0.25) < 1e-5);
  }
  SUBCASE("unit trace") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n = 0; n < 100; ++n) {
      const SteadyPopulations c = steady_state_closed_form(std::pow(10.0, u(rng)));
      CHECK(std::abs(c.gg + c.ss + c.aa + c.ee - 1.0) < 1e-12);
    }
  }
  SUBCASE("no drive is degenerate") {
    try {
      steady_state_closed_form(0.0);
      FAIL("expected DegenerateDrive");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateDrive);
    }
  }
  SUBCASE("agrees with the numeric kernel on a 20-point grid") {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double omega = 0.05 * std::pow(1000.0, k / 19.0);
      const DensityMatrix4 rho = sym_steady(SystemParams::with_phi(omega, 0.7));
      const SteadyPopulations c = steady_state_closed_form(omega);
      worst = std::max({worst, std::abs(rho(sym::kG, sym::kG).real() - c.gg),
                        std::abs(rho(sym::kS, sym::kS).real() - c.ss),
                        std::abs(rho(sym::kA, sym::kA).real() - c.aa),
                        std::abs(rho(sym::kE, sym::kE).real() - c.ee)});
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("numeric steady state") {
  SUBCASE("populations independent of phi") {
    const DensityMatrix4 ref = sym_steady(SystemParams::with_phi(0.8, 0.0));
    for (double phi : {1.0, kPi / 2.0, 2.0}) {
      const DensityMatrix4 r = sym_steady(SystemParams::with_phi(0.8, phi));
      for (int k = 0; k < 4; ++k) CHECK(std::abs(r(k, k) - ref(k, k)) < 1e-12);
    }
  }
  SUBCASE("fixed point of the propagator") {
    const SuperOp L = assemble_liouvillian(SystemParams::with_phi(0.8, 0.5));
    const DensityMatrix4 ss = steady_state_numeric(L);
    CHECK((propagate(L, ss, 1.0).entries() - ss.entries()).norm() < 1e-9);
    CHECK(is_valid(ss));
  }
}

TEST_CASE("propagation") {
  const SystemParams p = SystemParams::with_phi(1.0, 0.0);
  const SuperOp L = assemble_liouvillian(p);
  std::mt19937_64 rng(4);
  const DensityMatrix4 rho0(oracle::random_density(rng), Basis::Product);

  SUBCASE("identity at t = 0") {
    CHECK(propagate(L, rho0, 0.0).entries() == rho0.entries());
  }
  SUBCASE("negative time rejected") {
    CHECK_THROWS_AS(propagate(L, rho0, -1.0), Error);
  }
  SUBCASE("long-time limit") {
    const DensityMatrix4 r = to_symmetrized(propagate(L, DensityMatrix4::ground(), 40.0),
                                            SymmetrizedBasis(p.phi()));
    const SteadyPopulations c = steady_state_closed_form(1.0);
    CHECK(std::abs(r(sym::kG, sym::kG).real() - c.gg) < 1e-8);
    CHECK(std::abs(r(sym::kS, sym::kS).real() - c.ss) < 1e-8);
    CHECK(std::abs(r(sym::kA, sym::kA).real() - c.aa) < 1e-8);
    CHECK(std::abs(r(sym::kE, sym::kE).real() - c.ee) < 1e-8);
  }
  SUBCASE("semigroup") {
    const DensityMatrix4 half = propagate(L, propagate(L, rho0, 0.35), 0.35);
    const DensityMatrix4 full = propagate(L, rho0, 0.7);
    CHECK((half.entries() - full.entries()).norm() < 1e-9);
  }
  SUBCASE("symmetrized input stays symmetrized") {
    const DensityMatrix4 s = to_symmetrized(rho0, SymmetrizedBasis(0.0));
    const DensityMatrix4 out = propagate(L, s, 1.0);
    CHECK(out.basis() == Basis::Symmetrized);
    CHECK((to_product(out).entries() - propagate(L, rho0, 1.0).entries()).norm() < 1e-12);
  }
  SUBCASE("cached propagator") {
    const Propagator P(L, 1.3);
    CHECK((P(rho0).entries() - propagate(L, rho0, 1.3).entries()).norm() < 1e-14);
  }
  SUBCASE("matches a fine Runge-Kutta integration of the master equation") {
    oracle::M4 r = rho0.entries();
    const int steps = 4000;
    const double h = 2.0 / steps;
    for (int k = 0; k < steps; ++k) {
      const oracle::M4 k1 = oracle::master_rhs(r, 1.0, 0.0);
      const oracle::M4 k2 = oracle::master_rhs(r + 0.5 * h * k1, 1.0, 0.0);
      const oracle::M4 k3 = oracle::master_rhs(r + 0.5 * h * k2, 1.0, 0.0);
      const oracle::M4 k4 = oracle::master_rhs(r + h * k3, 1.0, 0.0);
      r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    CHECK((propagate(L, rho0, 2.0).entries() - r).norm() < 1e-10);
  }
}

TEST_CASE("propagation preserves physical states") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> om(0.0, 5.0), ph(0.0, kTwoPi), tt(0.0, 10.0);
  for (int n = 0; n < 100; ++n) {
    const SystemParams p = SystemParams::with_phi(om(rng), ph(rng));
    const DensityMatrix4 rho0(oracle::random_density(rng), Basis::Product);
    const DensityMatrix4 r = propagate(assemble_liouvillian(p), rho0, tt(rng));
    CHECK(is_valid(r));
  }
}

TEST_CASE("reduced equations") {
  SUBCASE("fully excited state feeds the antisymmetric population") {
    ReducedState x;
    x.ee = 1.0;
    const ReducedState d = reduced_rhs(x, ReducedState::alpha_for(0.7));
    CHECK(d.aa == doctest::Approx(2.0));
    CHECK(d.ss == doctest::Approx(2.0));
    CHECK(d.ee == doctest::Approx(-4.0));
  }
  SUBCASE("steady state is a fixed point") {
    for (double omega : {0.3, 1.0, 2.5}) {
      const SystemParams p = SystemParams::with_phi(omega, 0.8);
      const ReducedState x = project_reduced(sym_steady(p));
      const auto d = reduced_rhs(x, ReducedState::alpha_for(omega)).as_array();
      for (double v : d) CHECK(std::abs(v) < 1e-10);
    }
  }
  SUBCASE("embedding matches the full generator") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-0.3, 0.3), om(0.05, 5.0), ph(0.0, kTwoPi);
    for (int n = 0; n < 100; ++n) {
      const double omega = om(rng), phi = ph(rng);
      std::array<double, 9> a;
      for (double& v : a) v = u(rng);
      const ReducedState x = ReducedState::from_array(a);
      const oracle::M4 U = oracle::sym_unitary(phi);
      const oracle::M4 rho_prod = U.adjoint() * embed_reduced(x, phi).entries() * U;
      const oracle::M4 d_sym = U * oracle::master_rhs(rho_prod, omega, phi) * U.adjoint();
      const DensityMatrix4 drho(d_sym, Basis::Symmetrized, phi);
      const auto full = project_reduced(drho).as_array();
      const auto red = reduced_rhs(x, ReducedState::alpha_for(omega)).as_array();
      for (int k = 0; k < 9; ++k) CHECK(std::abs(full[k] - red[k]) < 1e-10);
      CHECK(off_manifold_norm(drho) < 1e-10);
    }
  }
  SUBCASE("manifold closure under propagation") {
    const SystemParams p = SystemParams::with_phi(1.2, 0.6);
    const SuperOp L = assemble_liouvillian(p);
    ReducedState x;
    x.ee = 0.2;
    x.ss = 0.3;
    x.aa = 0.1;
    x.sa_im = 0.05;
    x.eg_re = 0.02;
    const DensityMatrix4 rho0 = embed_reduced(x, p.phi());
    for (double t : {0.5, 3.0, 20.0}) CHECK(off_manifold_norm(propagate(L, rho0, t)) < 1e-10);
  }
}
