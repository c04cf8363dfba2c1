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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dicke_fringe.h"
#include "table.hpp"

namespace {

constexpr const char* kUnits =
    "Units: times in 1/gamma, Omega in gamma, lengths in optical wavelengths, "
    "angles in radians.\n"
    "Grids: comma list (0,0.5,1) or inclusive range lo:hi:n; 'pi' multiples such as "
    "2pi are accepted.";

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitAcceptance = 3;

// Failure reported by the C library.
struct LibraryError {
  df_status status;
  std::string message;
};

void check(df_status s) {
  if (s != DF_OK) throw LibraryError{s, df_last_error()};
}

struct SystemDeleter {
  void operator()(df_system* p) const { df_system_free(p); }
};
struct StateDeleter {
  void operator()(df_state* p) const { df_state_free(p); }
};
struct ClicksDeleter {
  void operator()(df_clicks* p) const { df_clicks_free(p); }
};
struct ReportDeleter {
  void operator()(df_report* p) const { df_report_free(p); }
};
using System = std::unique_ptr<df_system, SystemDeleter>;
using State = std::unique_ptr<df_state, StateDeleter>;

System make_system(double omega, double phi) {
  df_system* s = nullptr;
  check(df_system_create(omega, phi, &s));
  return System(s);
}

void require_positive_omega(double omega) {
  if (!(omega > 0.0)) throw cli::UsageError("--omega must be > 0 for correlation commands");
}

struct Output {
  std::string format = "csv";
  std::string path;
};

void emit(const cli::Table& t, const Output& out) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.path.empty()) {
    file.open(out.path);
    if (!file) throw cli::UsageError("cannot open output file '" + out.path + "'");
    os = &file;
  }
  if (out.format == "json") cli::write_json(*os, t);
  else cli::write_csv(*os, t);
}

cli::Table new_table(const std::string& command) {
  cli::Table t;
  t.command = command;
  t.provenance["version"] = df_version();
  return t;
}

// steady-state -------------------------------------------------------------

struct SteadyArgs {
  std::string omega = "1";
  double phi = 0.0;
  bool verify = false;
};

cli::Table steady_state_table(const std::vector<double>& omegas, double phi, bool verify,
                              const std::string& command) {
  cli::Table t = new_table(command);
  t.params["omega"] = omegas.size() == 1 ? nlohmann::ordered_json(omegas[0])
                                         : nlohmann::ordered_json(omegas);
  t.params["phi"] = phi;
  t.provenance["method"] = verify ? "closed-form+numeric" : "closed-form";
  t.columns = {"omega", "rho_gg", "rho_ss", "rho_aa", "rho_ee"};
  if (verify)
    t.columns.insert(t.columns.end(),
                     {"rho_gg_num", "rho_ss_num", "rho_aa_num", "rho_ee_num", "max_dev"});
  for (double omega : omegas) {
    if (!(omega >= 0.0)) throw cli::UsageError("--omega values must be >= 0");
    System sys = make_system(omega, phi);
    double pop[4];
    check(df_steady_state_closed_form(sys.get(), pop));
    std::vector<double> row{omega, pop[0], pop[1], pop[2], pop[3]};
    if (verify) {
      df_state* raw = nullptr;
      check(df_steady_state_numeric(sys.get(), &raw));
      State prod(raw);
      check(df_state_to_symmetrized(prod.get(), phi, &raw));
      State sym(raw);
      double e[32];
      check(df_state_entries(sym.get(), e));
      auto diag = [&](int k) { return e[2 * (5 * k)]; };
      const double num[4] = {diag(3), diag(1), diag(2), diag(0)};
      double dev = 0.0;
      for (int k = 0; k < 4; ++k) {
        row.push_back(num[k]);
        dev = std::max(dev, std::abs(num[k] - pop[k]));
      }
      row.push_back(dev);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// fringes ------------------------------------------------------------------

struct FringeArgs {
  std::string mode;
  double omega = 0.8;
  double phi = 0.0;
  std::string delta = "0:4pi:801";
  std::optional<double> delta1;
};

cli::Table fringe_table(const std::string& mode, double omega, double phi,
                        const std::vector<double>& deltas, std::optional<double> delta1,
                        const std::string& command) {
  require_positive_omega(omega);
  if (mode == "g2-pair" && !delta1) throw cli::UsageError("g2-pair needs --delta1");
  if (mode != "g2-pair" && delta1) throw cli::UsageError("--delta1 applies to g2-pair only");
  System sys = make_system(omega, phi);
  cli::Table t = new_table(command);
  t.params["mode"] = mode;
  t.params["omega"] = omega;
  t.params["phi"] = phi;
  if (delta1) t.params["delta1"] = *delta1;
  t.provenance["method"] = mode == "g1" ? "steady-state intensity, per-atom rate units"
                                        : "closed-form zero-delay g2";
  t.columns = {"delta", "value"};
  for (double d : deltas) {
    double v = 0.0;
    if (mode == "g1") check(df_g1_intensity(sys.get(), d, &v));
    else if (mode == "g2-single") check(df_g2_zero_delay(sys.get(), d, d, &v));
    else check(df_g2_zero_delay(sys.get(), *delta1, d, &v));
    t.rows.push_back({d, v});
  }
  return t;
}

// g2 -----------------------------------------------------------------------

struct G2Args {
  double omega = 0.8;
  double phi = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::string tau = "0";
  std::string method = "analytic";
  std::optional<double> budget;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  double half_width = 0.1;
  double bin_width = 0.05;
  double trajectory_duration = 1e4;
  double burn_in = 20.0;
};

cli::Table g2_table(const G2Args& a) {
  require_positive_omega(a.omega);
  const std::vector<double> taus = cli::parse_grid(a.tau);
  for (double t : taus)
    if (t < 0.0) throw cli::UsageError("--tau values must be >= 0");
  const bool numeric = a.method == "numeric" || a.method == "all";
  const bool mc = a.method == "mc" || (a.method == "all" && a.budget);
  if (a.method == "mc" && !a.budget) throw cli::UsageError("--method mc requires --budget");
  if (a.budget && !(*a.budget > 0.0)) throw cli::UsageError("--budget must be > 0");

  System sys = make_system(a.omega, a.phi);
  cli::Table t = new_table("g2");
  t.params["omega"] = a.omega;
  t.params["phi"] = a.phi;
  t.params["delta1"] = a.delta1;
  t.params["delta2"] = a.delta2;
  t.provenance["method"] = a.method;
  t.columns = {"tau", "g2"};
  if (numeric) t.columns.insert(t.columns.end(), {"g2_numeric", "abs_diff"});
  if (mc) {
    t.columns.insert(t.columns.end(), {"g2_mc", "stderr"});
    t.params["budget"] = *a.budget;
    t.params["window_half_width"] = a.half_width;
    t.params["tau_bin_width"] = a.bin_width;
    t.params["trajectory_duration"] = a.trajectory_duration;
    t.params["burn_in"] = a.burn_in;
    t.provenance["seed"] = a.seed;
    t.provenance["workers"] = a.workers;
  }

  // Monte Carlo: one pass over trajectories fills the bins [tau, tau + w).
  std::vector<double> mc_value(taus.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<double> mc_err(taus.size(), std::numeric_limits<double>::quiet_NaN());
  if (mc) {
    if (!(a.bin_width > 0.0)) throw cli::UsageError("--bin-width must be > 0");
    std::vector<std::size_t> order(taus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return taus[x] < taus[y]; });
    std::vector<double> edges;
    std::vector<std::size_t> bin_of(taus.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const double lo = taus[order[k]];
      if (!edges.empty() && lo < edges.back())
        throw cli::UsageError("Monte Carlo delay bins overlap; space --tau by at least --bin-width");
      if (edges.empty() || lo > edges.back()) edges.push_back(lo);
      bin_of[order[k]] = edges.size() - 1;
      edges.push_back(lo + a.bin_width);
    }
    df_mc_options opts;
    df_mc_options_default(&opts);
    opts.budget = *a.budget;
    opts.seed = a.seed;
    opts.workers = a.workers;
    opts.trajectory_duration = a.trajectory_duration;
    opts.burn_in = a.burn_in;
    const std::size_t nb = edges.size() - 1;
    std::vector<double> value(nb), err(nb);
    std::vector<int> defined(nb);
    check(df_g2_monte_carlo(sys.get(), a.delta1, a.delta2, a.half_width, edges.data(),
                            edges.size(), &opts, value.data(), err.data(), defined.data()));
    for (std::size_t i = 0; i < taus.size(); ++i) {
      if (!defined[bin_of[i]]) continue;
      mc_value[i] = value[bin_of[i]];
      mc_err[i] = err[bin_of[i]];
    }
  }

  for (std::size_t i = 0; i < taus.size(); ++i) {
    double g = 0.0;
    check(df_g2_analytic(sys.get(), a.delta1, a.delta2, taus[i], &g));
    std::vector<double> row{taus[i], g};
    if (numeric) {
      double n = 0.0;
      check(df_g2_numeric(sys.get(), a.delta1, a.delta2, taus[i], &n));
      row.push_back(n);
      row.push_back(std::abs(n - g));
    }
    if (mc) {
      row.push_back(mc_value[i]);
      row.push_back(mc_err[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// simulate -----------------------------------------------------------------

struct SimArgs {
  double omega = 0.8;
  double phi = 0.0;
  double duration = 1e3;
  std::uint64_t seed = 1;
  std::string record;
};

void run_simulate(const SimArgs& a) {
  if (!(a.duration > 0.0)) throw cli::UsageError("--duration must be > 0");
  if (a.record.empty()) throw cli::UsageError("simulate needs --record <file>");
  System sys = make_system(a.omega, a.phi);
  df_clicks* raw = nullptr;
  check(df_simulate(sys.get(), a.duration, a.seed, &raw));
  std::unique_ptr<df_clicks, ClicksDeleter> clicks(raw);
  check(df_clicks_write(clicks.get(), a.record.c_str()));
  std::size_t n = 0;
  check(df_clicks_count(clicks.get(), &n));
  std::printf("wrote %zu clicks over t = %.12g to %s (rate %.6g per 1/gamma)\n", n, a.duration,
              a.record.c_str(), static_cast<double>(n) / a.duration);
}

// phase --------------------------------------------------------------------

struct PhaseArgs {
  std::string laser = "0,0,1";
  std::string separation;
  std::string direction;
};

cli::Table phase_table(const PhaseArgs& a) {
  const std::vector<double> k = cli::parse_vec3(a.laser);
  const std::vector<double> x = cli::parse_vec3(a.separation);
  const std::vector<double> r = cli::parse_vec3(a.direction);
  df_system* raw = nullptr;
  // The drive strength does not enter the phases.
  check(df_system_create_geometry(1.0, k.data(), x.data(), &raw));
  System sys(raw);
  double phi = 0.0, reduced = 0.0, unreduced = 0.0;
  check(df_system_phi(sys.get(), &phi));
  check(df_detection_phase(sys.get(), r.data(), &reduced, &unreduced));
  cli::Table t = new_table("phase");
  t.params["laser_dir"] = k;
  t.params["separation"] = x;
  t.params["direction"] = r;
  t.columns = {"phi", "delta_raw", "delta"};
  t.rows.push_back({phi, unreduced, reduced});
  return t;
}

// fig ----------------------------------------------------------------------

cli::Table figure_table(int name) {
  const double pi = std::numbers::pi;
  std::vector<double> deltas;
  for (int k = 0; k <= 800; ++k) deltas.push_back(pi * k / 200.0);
  switch (name) {
    case 3: {
      std::vector<double> omegas;
      for (int k = 1; k <= 500; ++k) omegas.push_back(0.01 * k);
      return steady_state_table(omegas, 0.0, false, "fig 3");
    }
    case 4:
      return fringe_table("g2-single", 0.8, 0.0, deltas, std::nullopt, "fig 4");
    case 5:
      return fringe_table("g2-pair", 0.8, 0.0, deltas, 0.0, "fig 5");
    case 6:
      return fringe_table("g2-pair", 0.8, 0.0, deltas, pi, "fig 6");
  }
  throw cli::UsageError("--name must be 3, 4, 5 or 6");
}

// check --------------------------------------------------------------------

struct CheckArgs {
  bool fast = false;
  double budget = 1e7;
  std::uint64_t seed = 20261016;
  unsigned workers = 0;
};

int run_check(const CheckArgs& a, const Output& out) {
  df_acceptance_options opts;
  df_acceptance_options_default(&opts);
  opts.fast = a.fast ? 1 : 0;
  opts.mc_budget = a.budget;
  opts.seed = a.seed;
  opts.workers = a.workers;
  df_report* raw = nullptr;
  check(df_run_acceptance(&opts, &raw));
  std::unique_ptr<df_report, ReportDeleter> report(raw);

  int failures = 0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string text;
  for (std::size_t i = 0; i < df_report_count(report.get()); ++i) {
    int id = 0, passed = 0, skipped = 0;
    const char* title = nullptr;
    const char* measured = nullptr;
    double seconds = 0.0;
    check(df_report_entry(report.get(), i, &id, &title, &measured, &passed, &skipped, &seconds));
    if (!passed) ++failures;
    const char* tag = skipped ? "SKIP" : (passed ? "PASS" : "FAIL");
    char line[1024];
    std::snprintf(line, sizeof line, "%-4s %2d  %-48s %s (%.2fs)\n", tag, id, title, measured,
                  seconds);
    text += line;
    rows.push_back({{"id", id}, {"title", title}, {"status", tag}, {"measured", measured},
                    {"seconds", seconds}});
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.path.empty()) {
    file.open(out.path);
    if (!file) throw cli::UsageError("cannot open output file '" + out.path + "'");
    os = &file;
  }
  if (out.format == "json") {
    nlohmann::ordered_json j;
    j["params"] = {{"fast", a.fast}, {"mc_budget", a.budget}, {"seed", a.seed}};
    j["columns"] = {"id", "title", "status", "measured", "seconds"};
    j["rows"] = rows;
    j["provenance"] = {{"version", df_version()}, {"command", "check"},
                       {"failed", failures}};
    *os << j.dump(2) << '\n';
  } else {
    *os << "# dicke-fringe v" << df_version() << '\n' << text;
    *os << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
        << '\n';
  }
  return failures == 0 ? 0 : kExitAcceptance;
}

int library_exit(const LibraryError& e) {
  std::cerr << "error: " << df_status_name(e.status) << ": " << e.message << '\n';
  switch (e.status) {
    case DF_ERR_INVALID_ARGUMENT:
    case DF_ERR_INVALID_GEOMETRY:
    case DF_ERR_IO:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("Resonance fluorescence of two driven two-level atoms: steady "
                           "states, fringes and photon correlations.\n") +
               kUnits};
  app.require_subcommand(1);
  app.set_version_flag("--version", df_version());

  Output out;
  std::string config;
  app.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("-o,--output", out.path, "Write the table here instead of stdout");
  app.add_option("--config", config, "key=value file; command-line flags take precedence");

  auto add_sub = [&](const char* name, const char* what) {
    CLI::App* s = app.add_subcommand(name, what);
    s->footer(kUnits);
    s->fallthrough();
    return s;
  };

  SteadyArgs ss;
  CLI::App* c_ss = add_sub("steady-state", "Steady-state populations rho_gg, rho_ss, rho_aa, rho_ee.");
  c_ss->add_option("--omega", ss.omega, "Rabi frequency grid, in gamma")->capture_default_str();
  c_ss->add_option("--phi", ss.phi, "Half the laser phase difference k_L . x12 / 2, radians")
      ->capture_default_str();
  c_ss->add_flag("--verify", ss.verify, "Add numeric-kernel columns and the max deviation");

  FringeArgs fr;
  CLI::App* c_fr = add_sub("fringes", "Fringe scans over the detection phase delta.");
  c_fr->add_option("mode", fr.mode, "g1 | g2-single | g2-pair")
      ->required()
      ->check(CLI::IsMember({"g1", "g2-single", "g2-pair"}));
  c_fr->add_option("--omega", fr.omega, "Rabi frequency, in gamma")->capture_default_str();
  c_fr->add_option("--phi", fr.phi, "k_L . x12 / 2, radians")->capture_default_str();
  c_fr->add_option("--delta", fr.delta, "Detection phase grid, radians")->capture_default_str();
  std::string delta1_text;
  c_fr->add_option("--delta1", delta1_text, "Fixed first-detector phase for g2-pair, radians");

  G2Args g2;
  std::string g2_budget, g2_d1 = "0", g2_d2 = "0";
  CLI::App* c_g2 = add_sub("g2", "Intensity correlation g2(delta1, 0; delta2, tau).");
  c_g2->add_option("--omega", g2.omega, "Rabi frequency, in gamma")->capture_default_str();
  c_g2->add_option("--phi", g2.phi, "k_L . x12 / 2, radians")->capture_default_str();
  c_g2->add_option("--delta1", g2_d1, "First-detector phase, radians")->capture_default_str();
  c_g2->add_option("--delta2", g2_d2, "Second-detector phase, radians")->capture_default_str();
  c_g2->add_option("--tau", g2.tau, "Delay grid, in 1/gamma")->capture_default_str();
  c_g2->add_option("--method", g2.method, "analytic | numeric | mc | all")
      ->check(CLI::IsMember({"analytic", "numeric", "mc", "all"}))
      ->capture_default_str();
  c_g2->add_option("--budget", g2_budget, "Monte Carlo: total simulated time, in 1/gamma");
  c_g2->add_option("--seed", g2.seed, "Monte Carlo master seed")->capture_default_str();
  c_g2->add_option("--workers", g2.workers, "Monte Carlo threads (0: all cores)")
      ->capture_default_str();
  c_g2->add_option("--half-width", g2.half_width, "Monte Carlo detector window half-width, radians")
      ->capture_default_str();
  c_g2->add_option("--bin-width", g2.bin_width, "Monte Carlo delay bin [tau, tau+w), in 1/gamma")
      ->capture_default_str();
  c_g2->add_option("--trajectory-duration", g2.trajectory_duration,
                   "Monte Carlo length of one trajectory, in 1/gamma")
      ->capture_default_str();
  c_g2->add_option("--burn-in", g2.burn_in, "Monte Carlo clicks before this time are ignored, in 1/gamma")
      ->capture_default_str();

  SimArgs sim;
  CLI::App* c_sim = add_sub("simulate", "One quantum-jump trajectory from |g,g>; writes its click record.");
  c_sim->add_option("--omega", sim.omega, "Rabi frequency, in gamma")->capture_default_str();
  c_sim->add_option("--phi", sim.phi, "k_L . x12 / 2, radians")->capture_default_str();
  c_sim->add_option("--duration", sim.duration, "Trajectory length, in 1/gamma")->capture_default_str();
  c_sim->add_option("--seed", sim.seed, "Trajectory seed")->capture_default_str();
  c_sim->add_option("--record", sim.record, "Click record file (t_k <TAB> delta_k)")->required();

  PhaseArgs ph;
  CLI::App* c_ph = add_sub("phase", "Laser phase phi and detection phase delta from geometry.");
  c_ph->add_option("--laser", ph.laser, "Laser unit vector x,y,z")->capture_default_str();
  c_ph->add_option("--separation", ph.separation, "x1 - x2, in wavelengths, x,y,z")->required();
  c_ph->add_option("--direction", ph.direction, "Detector unit vector x,y,z")->required();

  int fig_name = 0;
  CLI::App* c_fig = add_sub("fig", "Data behind the reference figures (3: populations vs Omega; "
                                   "4: single-detector g2; 5, 6: two-detector g2 at delta1 = 0, pi).");
  c_fig->add_option("--name", fig_name, "3 | 4 | 5 | 6")->required();

  CheckArgs chk;
  CLI::App* c_chk = add_sub("check", "Run the acceptance criteria; exit 3 if any fails.");
  c_chk->add_flag("--fast", chk.fast, "Skip the Monte Carlo criterion");
  c_chk->add_option("--budget", chk.budget, "Monte Carlo total simulated time, in 1/gamma")
      ->capture_default_str();
  c_chk->add_option("--seed", chk.seed, "Monte Carlo master seed")->capture_default_str();
  c_chk->add_option("--workers", chk.workers, "Monte Carlo threads (0: all cores)")
      ->capture_default_str();

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = cli::merge_config(args, {"steady-state", "fringes", "g2", "simulate", "phase", "fig",
                                    "check"});
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*c_ss) {
      emit(steady_state_table(cli::parse_grid(ss.omega), ss.phi, ss.verify, "steady-state"), out);
    } else if (*c_fr) {
      std::optional<double> d1;
      if (!delta1_text.empty()) d1 = cli::parse_number(delta1_text);
      emit(fringe_table(fr.mode, fr.omega, fr.phi, cli::parse_grid(fr.delta), d1, "fringes"),
           out);
    } else if (*c_g2) {
      g2.delta1 = cli::parse_number(g2_d1);
      g2.delta2 = cli::parse_number(g2_d2);
      if (!g2_budget.empty()) g2.budget = cli::parse_number(g2_budget);
      emit(g2_table(g2), out);
    } else if (*c_sim) {
      run_simulate(sim);
    } else if (*c_ph) {
      emit(phase_table(ph), out);
    } else if (*c_fig) {
      emit(figure_table(fig_name), out);
    } else if (*c_chk) {
      return run_check(chk, out);
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LibraryError& e) {
    return library_exit(e);
  }
  return 0;
}
