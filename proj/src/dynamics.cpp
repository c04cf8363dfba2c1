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

#include "dicke/dynamics.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

namespace dicke {

namespace {

// vec(A X B) = (B^T kron A) vec(X) for column stacking.
Mat16 kron(const Mat4& a, const Mat4& b) {
  Mat16 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

DensityMatrix4 in_product(const DensityMatrix4& rho) {
  return rho.basis() == Basis::Product ? rho : to_product(rho);
}

DensityMatrix4 restore_basis(const Mat4& m, const DensityMatrix4& like) {
  DensityMatrix4 out(0.5 * (m + m.adjoint()), Basis::Product);
  if (like.basis() == Basis::Symmetrized)
    return to_symmetrized(out, SymmetrizedBasis(like.phi()));
  return out;
}

// A symmetrized state built for another phi lives in a different basis.
void check_phi(double generator_phi, const DensityMatrix4& rho) {
  if (rho.basis() != Basis::Symmetrized) return;
  const double d = wrap_phase(rho.phi() - generator_phi);
  if (std::min(d, kTwoPi - d) > 1e-12)
    throw Error(ErrorCode::BasisMismatch,
                "state was symmetrized with a different phi than the generator");
}

}  // namespace

Vec16 vectorize(const Mat4& m) {
  return Eigen::Map<const Vec16>(m.data());
}

Mat4 unvectorize(const Vec16& v) {
  return Eigen::Map<const Mat4>(v.data());
}

Mat4 SuperOp::apply(const Mat4& rho) const {
  return unvectorize(matrix_ * vectorize(rho));
}

Mat4 drive_hamiltonian(double omega, double phi) {
  const PauliOps& ops = pauli_ops();
  const Mat4 up = std::polar(1.0, -phi) * ops.raise[0] +
                  std::polar(1.0, phi) * ops.raise[1];
  return -omega * (up + up.adjoint());
}

SuperOp assemble_liouvillian(const SystemParams& params) {
  params.validate();
  const double phi = params.phi();
  const Mat4 h = drive_hamiltonian(params.omega, phi);
  const Mat4 id = Mat4::Identity();
  const cplx i(0.0, 1.0);

  Mat16 l = -i * (kron(id, h) - kron(h.transpose(), id));
  const PauliOps& ops = pauli_ops();
  for (int mu = 0; mu < 2; ++mu) {
    const Mat4& s = ops.lower[mu];
    const Mat4& n = ops.excited[mu];
    l += kGamma * (2.0 * kron(s.conjugate(), s) - kron(id, n) -
                   kron(n.transpose(), id));
  }
  return SuperOp(l, phi);
}

DensityMatrix4 propagate(const SuperOp& L, const DensityMatrix4& rho0,
                         double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw Error(ErrorCode::Domain, "propagation time must be finite and >= 0");
  check_phi(L.phi(), rho0);
  if (t == 0.0) return rho0;
  return Propagator(L, t)(rho0);
}

Propagator::Propagator(const SuperOp& L, double t) : phi_(L.phi()) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw Error(ErrorCode::Domain, "propagation time must be finite and >= 0");
  const Mat16 lt = L.matrix() * t;
  expm_ = lt.exp();
}

DensityMatrix4 Propagator::operator()(const DensityMatrix4& rho0) const {
  check_phi(phi_, rho0);
  const DensityMatrix4 p = in_product(rho0);
  const Mat4 m = unvectorize(expm_ * vectorize(p.entries()));
  return restore_basis(m, rho0);
}

SteadyPopulations steady_state_closed_form(double omega) {
  if (!std::isfinite(omega) || omega < 0.0)
    throw Error(ErrorCode::InvalidArgument, "omega must be finite and >= 0");
  if (omega == 0.0)
    throw Error(ErrorCode::DegenerateDrive,
                "omega = 0: no fluorescence, steady-state correlations undefined");
  const double g2 = kGamma * kGamma;
  const double o2 = omega * omega;
  const double den = (g2 + 2.0 * o2) * (g2 + 2.0 * o2);
  SteadyPopulations p;
  p.gg = (g2 + o2) * (g2 + o2) / den;
  p.ss = o2 * (2.0 * g2 + o2) / den;
  p.aa = o2 * o2 / den;
  p.ee = p.aa;
  return p;
}

SteadyPopulations steady_state_closed_form(const SystemParams& params) {
  params.validate();
  return steady_state_closed_form(params.omega);
}

DensityMatrix4 steady_state_numeric(const SuperOp& L) {
  Mat16 a = L.matrix();
  Vec16 b = Vec16::Zero();
  // Row 0 is the d/dt rho(ee,ee) equation; the diagonal rows sum to zero, so
  // replacing one of them by the trace functional keeps full rank.
  a.row(0).setZero();
  for (int k = 0; k < 4; ++k) a(0, k + 4 * k) = 1.0;
  b(0) = 1.0;

  Eigen::FullPivLU<Mat16> lu(a);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible())
    throw Error(ErrorCode::Singular,
                "generator kernel is not one-dimensional");
  const Vec16 x = lu.solve(b);
  Mat4 rho = unvectorize(x);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix4(rho, Basis::Product);
}

std::array<double, 9> ReducedState::as_array() const {
  return {ee, ss, aa, es_im, sg_im, eg_re, ea_re, sa_im, ag_re};
}

ReducedState ReducedState::from_array(const std::array<double, 9>& a) {
  return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8]};
}

ReducedState reduced_rhs(const ReducedState& x, double alpha) {
  ReducedState d;
  d.ee = 4.0 * (alpha * x.es_im - x.ee);
  d.ss = 2.0 * (x.ee - x.ss + 2.0 * alpha * (x.sg_im - x.es_im));
  d.aa = 2.0 * (x.ee - x.aa);
  d.es_im = -3.0 * x.es_im - 2.0 * alpha * (x.ee - x.ss + x.eg_re);
  d.sg_im = 2.0 * x.es_im - x.sg_im +
            2.0 * alpha * (1.0 - x.ee - x.aa - 2.0 * x.ss + x.eg_re);
  d.eg_re = -2.0 * (x.eg_re + alpha * (x.sg_im - x.es_im));

  d.ea_re = -3.0 * x.ea_re - 2.0 * alpha * x.sa_im;
  d.sa_im = 2.0 * (alpha * (x.ea_re + x.ag_re) - x.sa_im);
  d.ag_re = -2.0 * x.ea_re - 2.0 * alpha * x.sa_im - x.ag_re;
  return d;
}

DensityMatrix4 embed_reduced(const ReducedState& x, double phi) {
  using namespace sym;
  const cplx i(0.0, 1.0);
  Mat4 m = Mat4::Zero();
  m(kE, kS) = i * x.es_im;
  m(kS, kG) = i * x.sg_im;
  m(kE, kG) = x.eg_re;
  m(kE, kA) = x.ea_re;
  m(kS, kA) = i * x.sa_im;
  m(kA, kG) = x.ag_re;
  m = (m + m.adjoint()).eval();
  m(kE, kE) = x.ee;
  m(kS, kS) = x.ss;
  m(kA, kA) = x.aa;
  m(kG, kG) = 1.0 - x.ee - x.ss - x.aa;
  return DensityMatrix4(m, Basis::Symmetrized, phi);
}

ReducedState project_reduced(const DensityMatrix4& rho) {
  if (rho.basis() != Basis::Symmetrized)
    throw Error(ErrorCode::BasisMismatch,
                "reduced coordinates require a symmetrized-basis state");
  using namespace sym;
  ReducedState x;
  x.ee = rho(kE, kE).real();
  x.ss = rho(kS, kS).real();
  x.aa = rho(kA, kA).real();
  x.es_im = rho(kE, kS).imag();
  x.sg_im = rho(kS, kG).imag();
  x.eg_re = rho(kE, kG).real();
  x.ea_re = rho(kE, kA).real();
  x.sa_im = rho(kS, kA).imag();
  x.ag_re = rho(kA, kG).real();
  return x;
}

double off_manifold_norm(const DensityMatrix4& rho) {
  if (rho.basis() != Basis::Symmetrized)
    throw Error(ErrorCode::BasisMismatch,
                "manifold check requires a symmetrized-basis state");
  using namespace sym;
  const double parts[] = {
      std::abs(rho(kE, kS).real()), std::abs(rho(kS, kG).real()),
      std::abs(rho(kE, kG).imag()), std::abs(rho(kE, kA).imag()),
      std::abs(rho(kS, kA).real()), std::abs(rho(kA, kG).imag()),
  };
  return *std::max_element(std::begin(parts), std::end(parts));
}

}  // namespace dicke
