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

#include "dicke_fringe.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "dicke/acceptance.hpp"
#include "dicke/correlations.hpp"
#include "dicke/dynamics.hpp"
#include "dicke/trajectories.hpp"
#include "dicke/version.hpp"

struct df_system {
  dicke::SystemParams params;
};

struct df_state {
  dicke::DensityMatrix4 rho;
};

struct df_clicks {
  dicke::ClickRecord record;
};

struct df_report {
  std::vector<dicke::CriterionResult> results;
};

namespace {

thread_local std::string g_last_error;

df_status fail(df_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
df_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return DF_OK;
  } catch (const dicke::Error& e) {
    return fail(static_cast<df_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DF_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw dicke::Error(dicke::ErrorCode::InvalidArgument, what);
}

dicke::Vec3 vec3(const double* v) { return dicke::Vec3(v[0], v[1], v[2]); }

dicke::Basis basis_of(df_basis b) {
  switch (b) {
    case DF_BASIS_PRODUCT:
      return dicke::Basis::Product;
    case DF_BASIS_SYMMETRIZED:
      return dicke::Basis::Symmetrized;
  }
  throw dicke::Error(dicke::ErrorCode::InvalidArgument, "unknown basis");
}

dicke::Method method_of(df_method m) {
  switch (m) {
    case DF_METHOD_ANALYTIC:
      return dicke::Method::Analytic;
    case DF_METHOD_NUMERIC:
      return dicke::Method::Numeric;
    case DF_METHOD_MONTE_CARLO:
      return dicke::Method::MonteCarlo;
  }
  throw dicke::Error(dicke::ErrorCode::InvalidArgument, "unknown method");
}

template <typename T, typename... Args>
T* make(Args&&... args) {
  return new T{std::forward<Args>(args)...};
}

}  // namespace

extern "C" {

const char* df_version(void) { return dicke::kVersion; }

const char* df_last_error(void) { return g_last_error.c_str(); }

const char* df_status_name(df_status status) {
  if (status == DF_OK) return "ok";
  if (status >= DF_ERR_INVALID_ARGUMENT && status <= DF_ERR_INTERNAL)
    return dicke::to_string(static_cast<dicke::ErrorCode>(static_cast<int>(status)));
  return "unknown";
}

df_status df_system_create(double omega, double phi, df_system** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    dicke::SystemParams p = dicke::SystemParams::with_phi(omega, phi);
    p.validate();
    *out = make<df_system>(p);
  });
}

df_status df_system_create_geometry(double omega, const double laser_dir[3],
                                    const double separation[3], df_system** out) {
  return guarded([&] {
    require(out != nullptr && laser_dir != nullptr && separation != nullptr,
            "null pointer argument");
    dicke::SystemParams p;
    p.omega = omega;
    p.laser_dir = vec3(laser_dir);
    p.atom_separation = vec3(separation);
    p.validate();
    *out = make<df_system>(p);
  });
}

void df_system_free(df_system* sys) { delete sys; }

df_status df_system_omega(const df_system* sys, double* out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = sys->params.omega;
  });
}

df_status df_system_phi(const df_system* sys, double* out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = sys->params.phi();
  });
}

df_status df_detection_phase(const df_system* sys, const double direction[3], double* reduced,
                             double* raw) {
  return guarded([&] {
    require(sys && direction && reduced, "null pointer argument");
    const dicke::Phase ph = dicke::delta_phase(
        sys->params, dicke::DetectionDirection::along(vec3(direction)));
    *reduced = ph.reduced;
    if (raw) *raw = ph.raw;
  });
}

df_status df_state_create(const double entries[32], df_basis basis, double phi,
                          df_state** out) {
  return guarded([&] {
    require(entries && out, "null pointer argument");
    dicke::Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m(i, j) = dicke::cplx(entries[2 * (4 * i + j)], entries[2 * (4 * i + j) + 1]);
    dicke::DensityMatrix4 rho(m, basis_of(basis), phi);
    dicke::validate(rho);
    *out = make<df_state>(rho);
  });
}

void df_state_free(df_state* state) { delete state; }

df_status df_state_entries(const df_state* state, double entries[32]) {
  return guarded([&] {
    require(state && entries, "null pointer argument");
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        entries[2 * (4 * i + j)] = state->rho(i, j).real();
        entries[2 * (4 * i + j) + 1] = state->rho(i, j).imag();
      }
  });
}

df_status df_state_basis(const df_state* state, df_basis* out) {
  return guarded([&] {
    require(state && out, "null pointer argument");
    *out = state->rho.basis() == dicke::Basis::Product ? DF_BASIS_PRODUCT
                                                       : DF_BASIS_SYMMETRIZED;
  });
}

df_status df_state_to_symmetrized(const df_state* state, double phi, df_state** out) {
  return guarded([&] {
    require(state && out, "null pointer argument");
    *out = make<df_state>(dicke::to_symmetrized(state->rho, dicke::SymmetrizedBasis(phi)));
  });
}

df_status df_state_to_product(const df_state* state, df_state** out) {
  return guarded([&] {
    require(state && out, "null pointer argument");
    *out = make<df_state>(dicke::to_product(state->rho));
  });
}

df_status df_steady_state_closed_form(const df_system* sys, double populations[4]) {
  return guarded([&] {
    require(sys && populations, "null pointer argument");
    const dicke::SteadyPopulations p = dicke::steady_state_closed_form(sys->params);
    populations[0] = p.gg;
    populations[1] = p.ss;
    populations[2] = p.aa;
    populations[3] = p.ee;
  });
}

df_status df_steady_state_numeric(const df_system* sys, df_state** out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = make<df_state>(
        dicke::steady_state_numeric(dicke::assemble_liouvillian(sys->params)));
  });
}

df_status df_propagate(const df_system* sys, const df_state* rho0, double t, df_state** out) {
  return guarded([&] {
    require(sys && rho0 && out, "null pointer argument");
    *out = make<df_state>(
        dicke::propagate(dicke::assemble_liouvillian(sys->params), rho0->rho, t));
  });
}

df_status df_detection_probability(const df_state* rho, double delta, double phi,
                                   double* out) {
  return guarded([&] {
    require(rho && out, "null pointer argument");
    *out = dicke::detection_probability(rho->rho, dicke::DirectionalLoweringOp(delta, phi));
  });
}

df_status df_reduce_on_detection(const df_state* rho, double delta, double phi,
                                 df_state** out) {
  return guarded([&] {
    require(rho && out, "null pointer argument");
    *out = make<df_state>(
        dicke::reduce_on_detection(rho->rho, dicke::DirectionalLoweringOp(delta, phi)));
  });
}

df_status df_sa_coherence(const df_state* rho_sym, double* out) {
  return guarded([&] {
    require(rho_sym && out, "null pointer argument");
    *out = dicke::sa_coherence(rho_sym->rho);
  });
}

df_status df_separability_witness(const df_state* rho, int* separable) {
  return guarded([&] {
    require(rho && separable, "null pointer argument");
    *separable = dicke::separability_witness(rho->rho) ? 1 : 0;
  });
}

df_status df_g1_intensity(const df_system* sys, double delta, double* out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    const dicke::DensityMatrix4 ss = dicke::to_symmetrized(
        dicke::steady_state_numeric(dicke::assemble_liouvillian(sys->params)),
        dicke::SymmetrizedBasis(sys->params.phi()));
    *out = dicke::g1_general(ss, delta);
  });
}

df_status df_g1_visibility(const df_system* sys, double* out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = dicke::g1_visibility(sys->params);
  });
}

df_status df_g2_analytic(const df_system* sys, double delta1, double delta2, double t,
                         double* out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = dicke::g2_analytic(sys->params, delta1, delta2, t);
  });
}

df_status df_g2_zero_delay(const df_system* sys, double delta1, double delta2, double* out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = dicke::g2_zero_delay(sys->params, delta1, delta2);
  });
}

df_status df_g2_numeric(const df_system* sys, double delta1, double delta2, double t,
                        double* out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = dicke::g2_numeric(sys->params, dicke::DetectionDirection::with_phase(delta1),
                             dicke::DetectionDirection::with_phase(delta2), t);
  });
}

df_status df_g2_grid(const df_system* sys, df_method method, const double* delta1, size_t n1,
                     const double* delta2, size_t n2, const double* tau, size_t nt,
                     double* out) {
  return guarded([&] {
    require(sys && out && (n1 == 0 || delta1) && (n2 == 0 || delta2) && (nt == 0 || tau),
            "null pointer argument");
    const dicke::CorrelationGrid g = dicke::g2_grid(
        sys->params, method_of(method), std::vector<double>(delta1, delta1 + n1),
        std::vector<double>(delta2, delta2 + n2), std::vector<double>(tau, tau + nt));
    std::copy(g.values.begin(), g.values.end(), out);
  });
}

df_status df_inequality_check(const df_system* sys, double delta1, double delta2, double* lhs,
                              double* rhs, int* violated) {
  return guarded([&] {
    require(sys && lhs && rhs && violated, "null pointer argument");
    const dicke::InequalityCheck c =
        dicke::classical_inequality_check(sys->params, delta1, delta2);
    *lhs = c.lhs;
    *rhs = c.rhs;
    *violated = c.violated ? 1 : 0;
  });
}

df_status df_simulate(const df_system* sys, double duration, uint64_t seed, df_clicks** out) {
  return guarded([&] {
    require(sys && out, "null pointer argument");
    *out = make<df_clicks>(dicke::simulate_trajectory(sys->params, duration, seed));
  });
}

void df_clicks_free(df_clicks* clicks) { delete clicks; }

df_status df_clicks_count(const df_clicks* clicks, size_t* out) {
  return guarded([&] {
    require(clicks && out, "null pointer argument");
    *out = clicks->record.clicks.size();
  });
}

df_status df_clicks_get(const df_clicks* clicks, size_t index, double* time, double* delta) {
  return guarded([&] {
    require(clicks && time && delta, "null pointer argument");
    if (index >= clicks->record.clicks.size())
      throw dicke::Error(dicke::ErrorCode::Domain, "click index out of range");
    *time = clicks->record.clicks[index].time;
    *delta = clicks->record.clicks[index].delta;
  });
}

df_status df_clicks_write(const df_clicks* clicks, const char* path) {
  return guarded([&] {
    require(clicks && path, "null pointer argument");
    std::ofstream os(path);
    if (!os) throw dicke::Error(dicke::ErrorCode::Io, std::string("cannot open ") + path);
    dicke::write_click_record(os, clicks->record);
    if (!os) throw dicke::Error(dicke::ErrorCode::Io, std::string("write failed: ") + path);
  });
}

df_status df_clicks_read(const char* path, df_clicks** out) {
  return guarded([&] {
    require(path && out, "null pointer argument");
    std::ifstream is(path);
    if (!is) throw dicke::Error(dicke::ErrorCode::Io, std::string("cannot open ") + path);
    *out = make<df_clicks>(dicke::read_click_record(is));
  });
}

void df_mc_options_default(df_mc_options* opts) {
  if (!opts) return;
  const dicke::McOptions d;
  opts->budget = d.budget;
  opts->seed = d.seed;
  opts->workers = d.workers;
  opts->trajectory_duration = d.trajectory_duration;
  opts->burn_in = d.burn_in;
}

df_status df_g2_monte_carlo(const df_system* sys, double delta1, double delta2,
                            double half_width, const double* tau_edges, size_t n_edges,
                            const df_mc_options* opts, double* value, double* standard_error,
                            int* defined) {
  return guarded([&] {
    require(sys && tau_edges && opts && value && standard_error && defined,
            "null pointer argument");
    require(n_edges >= 2, "at least two delay edges are required");
    dicke::McOptions mc;
    mc.budget = opts->budget;
    mc.seed = opts->seed;
    mc.workers = opts->workers;
    mc.trajectory_duration = opts->trajectory_duration;
    mc.burn_in = opts->burn_in;
    const dicke::G2Estimate est =
        dicke::estimate_g2(sys->params, delta1, delta2, half_width,
                           std::vector<double>(tau_edges, tau_edges + n_edges), mc);
    for (size_t b = 0; b + 1 < n_edges; ++b) {
      value[b] = est.value[b];
      standard_error[b] = est.standard_error[b];
      defined[b] = est.defined[b] ? 1 : 0;
    }
  });
}

void df_acceptance_options_default(df_acceptance_options* opts) {
  if (!opts) return;
  const dicke::AcceptanceOptions d;
  opts->fast = d.fast ? 1 : 0;
  opts->mc_budget = d.mc_budget;
  opts->ensemble_trajectories = d.ensemble_trajectories;
  opts->seed = d.seed;
  opts->workers = d.workers;
}

df_status df_run_acceptance(const df_acceptance_options* opts, df_report** out) {
  return guarded([&] {
    require(opts && out, "null pointer argument");
    dicke::AcceptanceOptions o;
    o.fast = opts->fast != 0;
    o.mc_budget = opts->mc_budget;
    o.ensemble_trajectories = opts->ensemble_trajectories;
    o.seed = opts->seed;
    o.workers = opts->workers;
    *out = make<df_report>(dicke::run_acceptance(o));
  });
}

void df_report_free(df_report* report) { delete report; }

size_t df_report_count(const df_report* report) {
  return report ? report->results.size() : 0;
}

df_status df_report_entry(const df_report* report, size_t index, int* id, const char** title,
                          const char** measured, int* passed, int* skipped, double* seconds) {
  return guarded([&] {
    require(report != nullptr, "null report");
    if (index >= report->results.size())
      throw dicke::Error(dicke::ErrorCode::Domain, "report index out of range");
    const dicke::CriterionResult& r = report->results[index];
    if (id) *id = r.id;
    if (title) *title = r.title.c_str();
    if (measured) *measured = r.measured.c_str();
    if (passed) *passed = r.passed ? 1 : 0;
    if (skipped) *skipped = r.skipped ? 1 : 0;
    if (seconds) *seconds = r.seconds;
  });
}

}  // extern "C"
