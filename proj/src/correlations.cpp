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

#include "dicke/correlations.hpp"

#include <cmath>
#include <sstream>

namespace dicke {

namespace {

void require_drive(double omega) {
  if (!std::isfinite(omega) || omega < 0.0)
    throw Error(ErrorCode::InvalidArgument, "omega must be finite and >= 0");
  if (omega == 0.0)
    throw Error(ErrorCode::DegenerateDrive,
                "omega = 0: correlations undefined without fluorescence");
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw Error(ErrorCode::Domain, "delay must be finite and >= 0");
}

// The bracket is an even function of nu; evaluating it with a complex nu
// covers the oscillating and the overdamped regimes with one expression.
cplx g2_closed_form(double s, double d1, double d2, double t) {
  const cplx nu = 0.5 * std::sqrt(cplx(8.0 * s - 9.0, 0.0));
  const cplx nu2 = nu * nu;
  const double c1 = std::cos(d1), c2 = std::cos(d2);
  const double s1 = std::sin(d1), s2 = std::sin(d2);
  const cplx cn = std::cos(nu * t), sn = std::sin(nu * t);
  const cplx c2n = std::cos(2.0 * nu * t), s2n = std::sin(2.0 * nu * t);
  const double e1 = std::exp(t), e2 = std::exp(2.0 * t);
  const double e32 = std::exp(1.5 * t), e12 = std::exp(0.5 * t);

  cplx bracket = 4.0 * e2 * nu2 * s * s1 * s2;
  bracket += s * (e1 * nu2 * s + (s - 1.0) * (s - 1.0)) * c1 * c2;
  bracket -= e32 * nu * s * s * (2.0 * nu * cn + 3.0 * sn);
  bracket += 2.0 * e32 * nu * s * (c1 + c2) *
             ((2.0 * s - 3.0) * sn - 2.0 * nu * cn);
  bracket += e12 * nu * (2.0 * e1 * c1 * c2 + s * s1 * s2) *
             (2.0 * nu * (s - 2.0) * cn + (5.0 * s - 6.0) * sn);
  bracket += 0.25 * c1 * c2 *
             ((s * (s * (4.0 * s - 33.0) + 64.0) - 36.0) * c2n +
              2.0 * nu * (s - 2.0) * (5.0 * s - 6.0) * s2n);

  return 1.0 + std::exp(-3.0 * t) / (4.0 * nu2 * (s + c1) * (s + c2)) * bracket;
}

}  // namespace

G2Params G2Params::from_omega(double omega) {
  require_drive(omega);
  const double s = 2.0 * omega * omega + 1.0;
  return {s, 0.5 * std::sqrt(cplx(8.0 * s - 9.0, 0.0))};
}

double g1_intensity(const DensityMatrix4& rho, double delta) {
  if (rho.basis() != Basis::Symmetrized)
    throw Error(ErrorCode::BasisMismatch,
                "g1_intensity expects a symmetrized-basis state");
  using namespace sym;
  const double c = std::cos(delta);
  const double ee = rho(kE, kE).real();
  return (1.0 + c) * (ee + rho(kS, kS).real()) +
         (1.0 - c) * (ee + rho(kA, kA).real());
}

double g1_general(const DensityMatrix4& rho, double delta) {
  if (rho.basis() != Basis::Symmetrized)
    throw Error(ErrorCode::BasisMismatch,
                "g1_general expects a symmetrized-basis state");
  return g1_intensity(rho, delta) -
         2.0 * std::sin(delta) * rho(sym::kS, sym::kA).imag();
}

double g1_visibility(double omega) {
  const SteadyPopulations p = steady_state_closed_form(omega);
  return (p.ss - p.aa) / (2.0 * p.ee + p.ss + p.aa);
}

double g1_visibility(const SystemParams& params) {
  params.validate();
  return g1_visibility(params.omega);
}

double g2_analytic(double omega, double delta1, double delta2, double t) {
  require_drive(omega);
  require_time(t);
  const double s = 2.0 * omega * omega + 1.0;

  cplx value;
  // At 8 s = 9 the prefactor 1/nu^2 meets a bracket that vanishes like nu^2;
  // interpolate between neighbours on either side instead of dividing 0 by 0.
  constexpr double kBranchGap = 1e-6;
  if (std::abs(8.0 * s - 9.0) < kBranchGap) {
    const double eps = kBranchGap / 8.0;
    const double lo = 9.0 / 8.0 - eps;
    const cplx below = g2_closed_form(lo, delta1, delta2, t);
    const cplx above = g2_closed_form(9.0 / 8.0 + eps, delta1, delta2, t);
    value = below + (s - lo) / (2.0 * eps) * (above - below);
  } else {
    value = g2_closed_form(s, delta1, delta2, t);
  }

  if (!std::isfinite(value.real()) ||
      std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real()))) {
    std::ostringstream os;
    os << "closed-form g2 has imaginary part " << value.imag();
    throw Error(ErrorCode::Internal, os.str());
  }
  return value.real();
}

double g2_analytic(const SystemParams& params, double delta1, double delta2,
                   double t) {
  params.validate();
  return g2_analytic(params.omega, delta1, delta2, t);
}

double g2_zero_delay(double omega, double delta1, double delta2) {
  require_drive(omega);
  const double s = 2.0 * omega * omega + 1.0;
  const double c = std::cos(0.5 * (delta1 - delta2));
  return s * s * c * c / ((s + std::cos(delta1)) * (s + std::cos(delta2)));
}

double g2_zero_delay(const SystemParams& params, double delta1, double delta2) {
  params.validate();
  return g2_zero_delay(params.omega, delta1, delta2);
}

RegressionG2::RegressionG2(const SystemParams& params)
    : params_(params),
      L_(assemble_liouvillian(params)),
      steady_(DensityMatrix4::ground()) {
  require_drive(params.omega);
  steady_ = steady_state_numeric(L_);
}

double RegressionG2::operator()(double delta1, double delta2, double t) const {
  require_time(t);
  const double phi = L_.phi();
  const DirectionalLoweringOp first(delta1, phi);
  const DirectionalLoweringOp second(delta2, phi);
  const double unconditional = detection_probability(steady_, second);
  if (!(unconditional > 0.0))
    throw Error(ErrorCode::Internal, "steady-state intensity vanishes");
  const DensityMatrix4 conditioned = reduce_on_detection(steady_, first);
  const DensityMatrix4 later = propagate(L_, conditioned, t);
  return detection_probability(later, second) / unconditional;
}

std::vector<double> RegressionG2::grid(const std::vector<double>& delta1,
                                       const std::vector<double>& delta2,
                                       const std::vector<double>& t) const {
  const double phi = L_.phi();
  std::vector<Propagator> props;
  props.reserve(t.size());
  for (double tk : t) {
    require_time(tk);
    props.emplace_back(L_, tk);
  }
  std::vector<double> unconditional(delta2.size());
  std::vector<Mat4> intensity(delta2.size());
  for (std::size_t j = 0; j < delta2.size(); ++j) {
    const DirectionalLoweringOp op(delta2[j], phi);
    intensity[j] = op.intensity();
    unconditional[j] = detection_probability(steady_, op);
  }

  std::vector<double> out(delta1.size() * delta2.size() * t.size());
  for (std::size_t i = 0; i < delta1.size(); ++i) {
    const DensityMatrix4 conditioned =
        reduce_on_detection(steady_, DirectionalLoweringOp(delta1[i], phi));
    for (std::size_t k = 0; k < t.size(); ++k) {
      const Mat4 later = props[k](conditioned).entries();
      for (std::size_t j = 0; j < delta2.size(); ++j) {
        const double p = (later * intensity[j]).trace().real();
        out[(i * delta2.size() + j) * t.size() + k] = p / unconditional[j];
      }
    }
  }
  return out;
}

double g2_numeric(const SystemParams& params, const DetectionDirection& det1,
                  const DetectionDirection& det2, double t) {
  const RegressionG2 reg(params);
  return reg(delta_phase(params, det1).raw, delta_phase(params, det2).raw, t);
}

InequalityCheck classical_inequality_check(const SystemParams& params,
                                           double delta1, double delta2) {
  const double g11 = g2_zero_delay(params, delta1, delta1);
  const double g22 = g2_zero_delay(params, delta2, delta2);
  const double g12 = g2_zero_delay(params, delta1, delta2);
  InequalityCheck r;
  r.lhs = (g11 - 1.0) * (g22 - 1.0);
  r.rhs = (g12 - 1.0) * (g12 - 1.0);
  r.violated = r.lhs < r.rhs - 1e-12;
  return r;
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::Numeric: return "numeric";
    case Method::MonteCarlo: return "montecarlo";
  }
  return "unknown";
}

CorrelationGrid g2_grid(const SystemParams& params, Method method,
                        const std::vector<double>& delta1,
                        const std::vector<double>& delta2,
                        const std::vector<double>& tau) {
  if (delta1.empty() || delta2.empty() || tau.empty())
    throw Error(ErrorCode::InvalidArgument, "correlation grid axes must be non-empty");
  CorrelationGrid g;
  g.omega = params.omega;
  g.method = method;
  g.delta1 = delta1;
  g.delta2 = delta2;
  g.tau = tau;
  switch (method) {
    case Method::Analytic:
      g.values.reserve(delta1.size() * delta2.size() * tau.size());
      for (double d1 : delta1)
        for (double d2 : delta2)
          for (double t : tau) g.values.push_back(g2_analytic(params, d1, d2, t));
      break;
    case Method::Numeric:
      g.values = RegressionG2(params).grid(delta1, delta2, tau);
      break;
    case Method::MonteCarlo:
      throw Error(ErrorCode::InvalidArgument,
                  "Monte Carlo grids are produced by estimate_g2");
  }
  return g;
}

}  // namespace dicke
