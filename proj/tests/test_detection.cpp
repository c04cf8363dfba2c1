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

#include "dicke/correlations.hpp"
#include "dicke/detection.hpp"
#include "dicke/dynamics.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

DensityMatrix4 sym_steady(const SystemParams& p) {
  return to_symmetrized(steady_state_numeric(assemble_liouvillian(p)), SymmetrizedBasis(p.phi()));
}

DensityMatrix4 fully_excited() {
  return DensityMatrix4::pure(Vec4::Unit(product::kEE), Basis::Product);
}

}  // namespace

TEST_CASE("lowering operator") {
  const DirectionalLoweringOp op(0.7, 0.3);
  CHECK((op.matrix() * Vec4::Unit(product::kGG)).norm() == 0.0);
  // Relative phase of the second atom is delta - 2 phi.
  const cplx rel = op.matrix()(product::kGG, product::kGE);
  CHECK(std::abs(rel - std::polar(1.0, 0.7 - 0.6)) < 1e-15);
  CHECK(std::abs(op.matrix()(product::kGG, product::kEG) - 1.0) < 1e-15);
}

TEST_CASE("fully excited pair collapses onto |s>") {
  SUBCASE("detector perpendicular to the separation") {
    SystemParams p;
    p.omega = 1.0;
    p.laser_dir = Vec3::UnitX();
    p.atom_separation = Vec3(0.0, 0.0, 3.3);
    const DirectionalLoweringOp op = directional_lowering(p, DetectionDirection::along(Vec3::UnitY()));
    const DensityMatrix4 out =
        to_symmetrized(reduce_on_detection(fully_excited(), op), SymmetrizedBasis(p.phi()));
    CHECK(out(sym::kS, sym::kS).real() >= 1.0 - 1e-12);
  }
  SUBCASE("zero detection phase at any phi") {
    for (double phi : {0.0, 0.4, kPi / 2.0, 2.9}) {
      const DensityMatrix4 out = to_symmetrized(
          reduce_on_detection(fully_excited(), DirectionalLoweringOp(0.0, phi)),
          SymmetrizedBasis(phi));
      CHECK(out(sym::kS, sym::kS).real() >= 1.0 - 1e-12);
      CHECK_FALSE(separability_witness(out));
    }
  }
  SUBCASE("opposite phase collapses onto |a>") {
    const DensityMatrix4 out = to_symmetrized(
        reduce_on_detection(fully_excited(), DirectionalLoweringOp(kPi, 0.8)), SymmetrizedBasis(0.8));
    CHECK(out(sym::kA, sym::kA).real() >= 1.0 - 1e-12);
  }
}

TEST_CASE("dark state") {
  try {
    reduce_on_detection(DensityMatrix4::ground(), DirectionalLoweringOp(0.3, 0.0));
    FAIL("expected NoPhoton");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPhoton);
  }
}

TEST_CASE("detection probability is the steady-state fringe") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (double phi : {0.0, 1.1}) {
    const SystemParams p = SystemParams::with_phi(0.9, phi);
    const DensityMatrix4 ss = sym_steady(p);
    for (int n = 0; n < 50; ++n) {
      const double d = u(rng);
      CHECK(detection_probability(ss, DirectionalLoweringOp(d, phi)) ==
            doctest::Approx(g1_intensity(ss, d)).epsilon(1e-12));
    }
  }
}

TEST_CASE("coherence after a click on the steady state") {
  // Reference: the click maps rho_ee -> |s>/|a> populations and rho_ss,
  // rho_aa -> |g>; the s/a coherence comes only from rho_ee:
  //   Im rho_sa = -sin(delta) Omega^2 / (2 (s + cos delta)), s = 2 Omega^2 + 1.
  for (double omega : {0.5, 1.0, 2.0})
    for (double phi : {0.0, kPi / 2.0, 1.3})
      for (double delta : {0.0, 0.4, kPi / 2.0, 2.0, kPi, 5.0}) {
        const SystemParams p = SystemParams::with_phi(omega, phi);
        const DensityMatrix4 r =
            reduce_on_detection(sym_steady(p), DirectionalLoweringOp(delta, phi));
        CHECK(sa_coherence(r) == doctest::Approx(oracle::sa_after_click(omega, delta)).epsilon(1e-10));
      }
}

TEST_CASE("post-click state at delta = 0 has no antisymmetric weight") {
  const SystemParams p = SystemParams::with_phi(1.0, kPi / 2.0);
  const DensityMatrix4 r = reduce_on_detection(sym_steady(p), DirectionalLoweringOp(0.0, p.phi()));
  CHECK(std::abs(r(sym::kE, sym::kE)) < 1e-14);
  CHECK(std::abs(r(sym::kA, sym::kA)) < 1e-14);
  CHECK(std::abs(sa_coherence(r)) < 1e-14);
  CHECK_FALSE(separability_witness(r));
  // No emission into the antisymmetric channel right after the click.
  CHECK(std::abs(detection_probability(r, DirectionalLoweringOp(kPi, p.phi()))) < 1e-12);
}

TEST_CASE("reduction preserves physical states") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int n = 0; n < 500; ++n) {
    const DensityMatrix4 rho(oracle::random_density(rng), Basis::Product);
    const DensityMatrix4 r = reduce_on_detection(rho, DirectionalLoweringOp(u(rng), u(rng)));
    CHECK(is_valid(r));
  }
}

TEST_CASE("periodicity in delta") {
  const SystemParams p = SystemParams::with_phi(0.8, 0.4);
  const DensityMatrix4 ss = sym_steady(p);
  for (double d : {0.1, 1.7, 4.0}) {
    const DensityMatrix4 a = reduce_on_detection(ss, DirectionalLoweringOp(d, p.phi()));
    const DensityMatrix4 b = reduce_on_detection(ss, DirectionalLoweringOp(d + kTwoPi, p.phi()));
    CHECK((a.entries() - b.entries()).norm() < 1e-12);
    CHECK(detection_probability(ss, DirectionalLoweringOp(d - 3 * kTwoPi, p.phi())) ==
          doctest::Approx(detection_probability(ss, DirectionalLoweringOp(d, p.phi()))));
  }
}

TEST_CASE("basis checks") {
  const DensityMatrix4 ss = sym_steady(SystemParams::with_phi(1.0, 0.5));
  CHECK_THROWS_AS(detection_probability(ss, DirectionalLoweringOp(0.0, 0.6)), Error);
  CHECK_THROWS_AS(sa_coherence(DensityMatrix4::ground()), Error);
  const DensityMatrix4 r = reduce_on_detection(ss, DirectionalLoweringOp(1.0, 0.5));
  CHECK(r.basis() == Basis::Symmetrized);
}

TEST_CASE("product-state witness") {
  Vec4 s = Vec4::Zero();
  s(product::kEG) = s(product::kGE) = 1.0 / std::sqrt(2.0);
  CHECK_FALSE(separability_witness(DensityMatrix4::pure(s, Basis::Product)));
  CHECK(separability_witness(DensityMatrix4::ground()));

  // Product of two arbitrary single-atom states, including coherences.
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    oracle::M2 a, b;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = cplx(n(rng), n(rng));
        b(i, j) = cplx(n(rng), n(rng));
      }
    oracle::M2 r1 = a * a.adjoint(), r2 = b * b.adjoint();
    r1 /= r1.trace();
    r2 /= r2.trace();
    const DensityMatrix4 prod(oracle::kron(r1, r2), Basis::Product);
    CHECK(separability_witness(prod));
    const ProductDecomposition d = product_decomposition(prod);
    CHECK((d.atom1 - r1).norm() < 1e-12);
    CHECK((d.atom2 - r2).norm() < 1e-12);
    // Same state expressed in the symmetrized basis.
    CHECK(separability_witness(to_symmetrized(prod, SymmetrizedBasis(0.9))));
  }
  // Classical mixture of two product states is not itself a product.
  Mat4 mix = Mat4::Zero();
  mix(product::kEE, product::kEE) = 0.5;
  mix(product::kGG, product::kGG) = 0.5;
  CHECK_FALSE(separability_witness(DensityMatrix4(mix, Basis::Product)));
}
