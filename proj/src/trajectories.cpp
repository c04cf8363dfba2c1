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

#include "dicke/trajectories.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/version.hpp"

namespace dicke {

namespace {

constexpr double kCoarseStep = 0.05;
constexpr double kTimeResolution = 1e-8;

Mat4 step_propagator(const Mat4& heff, double h) {
  const Mat4 a = cplx(0.0, -h) * heff;
  return a.exp();
}

// Runs body(i) for i in [0, n) on `workers` threads. Each index owns its
// output slot, so the result does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < n && !failed; i = next++) body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

JumpTrajectory::JumpTrajectory(const SystemParams& params, std::uint64_t seed)
    : JumpTrajectory(params, seed, Vec4::Unit(product::kGG)) {}

JumpTrajectory::JumpTrajectory(const SystemParams& params, std::uint64_t seed,
                               const Vec4& initial)
    : phi_(params.phi()), rng_(seed) {
  params.validate();
  if (!(initial.squaredNorm() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "initial state has zero norm");
  const PauliOps& ops = pauli_ops();
  heff_ = drive_hamiltonian(params.omega, phi_) -
          cplx(0.0, kGamma) * (ops.excited[0] + ops.excited[1]);

  const int levels = static_cast<int>(
      std::ceil(std::log2(kCoarseStep / kTimeResolution)));
  double h = kCoarseStep;
  for (int k = 0; k <= levels; ++k, h *= 0.5) {
    ladder_.push_back(step_propagator(heff_, h));
    steps_.push_back(h);
  }
  psi_ = initial / initial.norm();
  threshold_ = 1.0 - uniform();
}

double JumpTrajectory::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

void JumpTrajectory::run_until(double until, std::vector<Click>* clicks) {
  if (!std::isfinite(until))
    throw Error(ErrorCode::InvalidArgument, "trajectory end time must be finite");
  while (time_ < until) {
    // Greedy descent: at each level take steps while the norm stays above
    // the threshold. Below the coarse level at most one step fits.
    bool crossed = false;
    for (std::size_t k = 0; k < ladder_.size(); ++k) {
      const double h = steps_[k];
      while (time_ + h <= until) {
        const Vec4 cand = ladder_[k] * psi_;
        if (cand.squaredNorm() <= threshold_) {
          crossed = true;
          break;
        }
        psi_ = cand;
        time_ += h;
        if (k > 0) break;
      }
    }
    if (crossed) {
      psi_ = ladder_.back() * psi_;
      time_ += steps_.back();
      jump(clicks);
      continue;
    }
    // Remaining interval is shorter than the finest step.
    const double rest = until - time_;
    if (rest > 0.0) {
      const Vec4 cand = step_propagator(heff_, rest) * psi_;
      psi_ = cand;
      time_ = until;
      if (cand.squaredNorm() <= threshold_) jump(clicks);
    }
  }
}

void JumpTrajectory::jump(std::vector<Click>* clicks) {
  const Vec4 psi = psi_ / psi_.norm();
  const double delta = sample_delta(psi);
  const DirectionalLoweringOp op(delta, phi_);
  const Vec4 after = op.matrix() * psi;
  const double n = after.norm();
  if (!(n > 0.0))
    throw Error(ErrorCode::Internal, "jump produced a zero state");
  psi_ = after / n;
  threshold_ = 1.0 - uniform();
  if (clicks) {
    if (!clicks->empty() && !(time_ > clicks->back().time))
      throw Error(ErrorCode::Internal, "click times not strictly increasing");
    clicks->push_back({time_, delta});
  }
}

// p(delta) = (A + B cos delta + C sin delta) / (2 pi A) with
// A = |v1|^2 + |v2|^2 and B - i C = 2 exp(-2 i phi) <v1|v2>, v_mu = s-_mu psi.
double JumpTrajectory::sample_delta(const Vec4& psi) {
  const PauliOps& ops = pauli_ops();
  const Vec4 v1 = ops.lower[0] * psi;
  const Vec4 v2 = ops.lower[1] * psi;
  const double a = v1.squaredNorm() + v2.squaredNorm();
  if (!(a > 0.0))
    throw Error(ErrorCode::Internal, "jump requested from a state with no excitation");
  const cplx z = std::polar(1.0, -2.0 * phi_) * v1.dot(v2);
  const double b = 2.0 * z.real();
  const double c = -2.0 * z.imag();

  const double u = uniform();
  const double target = u * kTwoPi * a;
  auto cdf = [&](double d) { return a * d + b * std::sin(d) + c * (1.0 - std::cos(d)); };
  auto pdf = [&](double d) { return a + b * std::cos(d) + c * std::sin(d); };

  double lo = 0.0, hi = kTwoPi, d = kTwoPi * u;
  for (int it = 0; it < 200; ++it) {
    const double f = cdf(d) - target;
    if (std::abs(f) <= 1e-13 * a || hi - lo < 1e-14) return wrap_phase(d);
    if (f > 0.0) hi = d; else lo = d;
    const double p = pdf(d);
    double next = p > 0.0 ? d - f / p : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    d = next;
  }
  // Fallback: rejection sampling against the flat envelope A + |B - iC|.
  const double envelope = a + std::hypot(b, c);
  for (;;) {
    const double cand = kTwoPi * uniform();
    if (uniform() * envelope <= pdf(cand)) return cand;
  }
}

ClickRecord simulate_trajectory(const SystemParams& params, double duration,
                                std::uint64_t seed) {
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw Error(ErrorCode::InvalidArgument, "duration must be positive");
  ClickRecord rec;
  rec.seed = seed;
  rec.duration = duration;
  rec.omega = params.omega;
  rec.phi = params.phi();
  JumpTrajectory traj(params, seed);
  traj.run_until(duration, &rec.clicks);
  return rec;
}

EnsembleState ensemble_average(const SystemParams& params, double t,
                               std::size_t trajectories, std::uint64_t seed,
                               unsigned workers) {
  if (trajectories < 2)
    throw Error(ErrorCode::InvalidArgument, "ensemble needs at least two trajectories");
  if (!(t >= 0.0))
    throw Error(ErrorCode::Domain, "ensemble time must be >= 0");
  params.validate();
  std::vector<Vec4> finals(trajectories);
  parallel_for(trajectories, workers, [&](std::size_t i) {
    JumpTrajectory traj(params, trajectory_seed(seed, i));
    traj.run_until(t, nullptr);
    finals[i] = traj.state();
  });

  Mat4 mean = Mat4::Zero();
  Eigen::Matrix4d sq_re = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d sq_im = Eigen::Matrix4d::Zero();
  for (const Vec4& psi : finals) {
    const Mat4 rho = psi * psi.adjoint();
    mean += rho;
    sq_re += rho.real().cwiseAbs2();
    sq_im += rho.imag().cwiseAbs2();
  }
  const double n = static_cast<double>(trajectories);
  mean /= n;
  EnsembleState out;
  out.mean = mean;
  const Eigen::Matrix4d var_re = (sq_re / n - mean.real().cwiseAbs2()) * (n / (n - 1.0));
  const Eigen::Matrix4d var_im = (sq_im / n - mean.imag().cwiseAbs2()) * (n / (n - 1.0));
  out.stderr_re = (var_re.cwiseMax(0.0) / n).cwiseSqrt();
  out.stderr_im = (var_im.cwiseMax(0.0) / n).cwiseSqrt();
  out.trajectories = trajectories;
  return out;
}

bool PhaseWindow::contains(double delta) const noexcept {
  const double d = wrap_phase(delta - center + kPi) - kPi;
  return std::abs(d) <= half_width;
}

void PhaseWindow::validate() const {
  if (!std::isfinite(center) || !(half_width > 0.0) || half_width > kPi)
    throw Error(ErrorCode::InvalidArgument,
                "phase window needs a finite center and half width in (0, pi]");
}

bool CoincidenceHistogram::defined(std::size_t bin) const {
  return exposure[bin] > 0 && singles_second > 0 && observed_time > 0.0;
}

double CoincidenceHistogram::estimate(std::size_t bin) const {
  if (!defined(bin)) return 0.0;
  const double width = tau_edges[bin + 1] - tau_edges[bin];
  const double rate = static_cast<double>(singles_second) / observed_time;
  return static_cast<double>(pairs[bin]) /
         (static_cast<double>(exposure[bin]) * rate * width);
}

double CoincidenceHistogram::standard_error(std::size_t bin) const {
  if (!defined(bin)) return 0.0;
  const double width = tau_edges[bin + 1] - tau_edges[bin];
  const double rate = static_cast<double>(singles_second) / observed_time;
  const double per_count = 1.0 / (static_cast<double>(exposure[bin]) * rate * width);
  return per_count * std::sqrt(std::max<double>(1.0, static_cast<double>(pairs[bin])));
}

void CoincidenceHistogram::merge(const CoincidenceHistogram& other) {
  if (other.pairs.size() != pairs.size())
    throw Error(ErrorCode::InvalidArgument, "histogram bin layouts differ");
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    pairs[b] += other.pairs[b];
    exposure[b] += other.exposure[b];
  }
  singles_first += other.singles_first;
  singles_second += other.singles_second;
  observed_time += other.observed_time;
}

namespace {

CoincidenceHistogram empty_histogram(const PhaseWindow& first,
                                     const PhaseWindow& second,
                                     const std::vector<double>& tau_edges) {
  first.validate();
  second.validate();
  if (tau_edges.size() < 2 || !(tau_edges.front() >= 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "need at least one tau bin starting at tau >= 0");
  for (std::size_t i = 1; i < tau_edges.size(); ++i)
    if (!(tau_edges[i] > tau_edges[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "tau bin edges must increase");
  CoincidenceHistogram h;
  h.first = first;
  h.second = second;
  h.tau_edges = tau_edges;
  h.pairs.assign(tau_edges.size() - 1, 0);
  h.exposure.assign(tau_edges.size() - 1, 0);
  return h;
}

void accumulate(CoincidenceHistogram& h, const std::vector<Click>& clicks,
                double begin, double end) {
  const auto& edges = h.tau_edges;
  const double tau_max = edges.back();
  const std::size_t nbins = h.pairs.size();
  h.observed_time += std::max(0.0, end - begin);
  const auto start = std::lower_bound(
      clicks.begin(), clicks.end(), begin,
      [](const Click& c, double t) { return c.time < t; });
  for (auto it = start; it != clicks.end(); ++it) {
    if (it->time > end) break;
    const bool in_second = h.second.contains(it->delta);
    if (in_second) ++h.singles_second;
    if (!h.first.contains(it->delta)) continue;
    ++h.singles_first;
    for (std::size_t b = 0; b < nbins; ++b)
      if (it->time + edges[b + 1] <= end) ++h.exposure[b];
    for (auto jt = std::next(it); jt != clicks.end(); ++jt) {
      const double tau = jt->time - it->time;
      if (tau >= tau_max || jt->time > end) break;
      if (tau < edges.front() || !h.second.contains(jt->delta)) continue;
      const auto ub = std::upper_bound(edges.begin(), edges.end(), tau);
      const auto b = static_cast<std::size_t>(ub - edges.begin()) - 1;
      // Same rule as the exposure count: the whole bin must fit in the record.
      if (it->time + edges[b + 1] <= end) ++h.pairs[b];
    }
  }
}

}  // namespace

CoincidenceHistogram coincidence_histogram(const std::vector<ClickRecord>& records,
                                           const PhaseWindow& first,
                                           const PhaseWindow& second,
                                           const std::vector<double>& tau_edges,
                                           double burn_in) {
  CoincidenceHistogram h = empty_histogram(first, second, tau_edges);
  for (const ClickRecord& r : records) accumulate(h, r.clicks, burn_in, r.duration);
  return h;
}

std::vector<G2Estimate> estimate_g2(const SystemParams& params,
                                    const std::vector<WindowPair>& windows,
                                    const std::vector<double>& tau_edges,
                                    const McOptions& options) {
  params.validate();
  if (!(options.budget > 0.0) || !std::isfinite(options.budget))
    throw Error(ErrorCode::InvalidArgument, "Monte Carlo budget must be positive");
  if (!(options.trajectory_duration > 0.0) || !(options.burn_in >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "invalid trajectory duration or burn-in");
  if (windows.empty())
    throw Error(ErrorCode::InvalidArgument, "no window pairs requested");

  const auto n = static_cast<std::size_t>(
      std::ceil(options.budget / options.trajectory_duration - 1e-9));
  const std::size_t count = std::max<std::size_t>(n, 1);
  const double observed = options.budget / static_cast<double>(count);
  const double end = options.burn_in + observed;

  std::vector<CoincidenceHistogram> blank;
  for (const WindowPair& w : windows)
    blank.push_back(empty_histogram(w.first, w.second, tau_edges));

  std::vector<std::vector<CoincidenceHistogram>> partial(count);
  parallel_for(count, options.workers, [&](std::size_t i) {
    JumpTrajectory traj(params, trajectory_seed(options.seed, i));
    std::vector<Click> clicks;
    traj.run_until(end, &clicks);
    std::vector<CoincidenceHistogram> mine = blank;
    for (auto& h : mine) accumulate(h, clicks, options.burn_in, end);
    partial[i] = std::move(mine);
  });

  std::vector<G2Estimate> out;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    G2Estimate e;
    e.histogram = blank[w];
    for (const auto& p : partial) e.histogram.merge(p[w]);
    for (std::size_t b = 0; b < e.histogram.bins(); ++b) {
      e.defined.push_back(e.histogram.defined(b));
      e.value.push_back(e.histogram.estimate(b));
      e.standard_error.push_back(e.histogram.standard_error(b));
    }
    out.push_back(std::move(e));
  }
  return out;
}

G2Estimate estimate_g2(const SystemParams& params, double delta1,
                       double delta2, double half_width,
                       const std::vector<double>& tau_edges,
                       const McOptions& options) {
  const WindowPair w{{wrap_phase(delta1), half_width},
                     {wrap_phase(delta2), half_width}};
  return std::move(estimate_g2(params, {w}, tau_edges, options).front());
}

void write_click_record(std::ostream& os, const ClickRecord& record) {
  os << "# dicke-fringe v" << kVersion << '\n'
     << "# record=clicks\n"
     << "# omega=" << format12(record.omega) << '\n'
     << "# phi=" << format12(record.phi) << '\n'
     << "# seed=" << record.seed << '\n'
     << "# duration=" << format12(record.duration) << '\n'
     << "# columns=t_k\tdelta_k\n";
  for (const Click& c : record.clicks)
    os << format12(c.time) << '\t' << format12(c.delta) << '\n';
  if (!os) throw Error(ErrorCode::Io, "failed to write click record");
}

ClickRecord read_click_record(std::istream& is) {
  ClickRecord rec;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      try {
        if (key == "omega") rec.omega = std::stod(value);
        else if (key == "phi") rec.phi = std::stod(value);
        else if (key == "seed") rec.seed = std::stoull(value);
        else if (key == "duration") rec.duration = std::stod(value);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Io, "malformed click record header: " + line);
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::Io, "malformed click record line: " + line);
    try {
      rec.clicks.push_back({std::stod(line.substr(0, tab)), std::stod(line.substr(tab + 1))});
    } catch (const std::exception&) {
      throw Error(ErrorCode::Io, "malformed click record line: " + line);
    }
  }
  return rec;
}

}  // namespace dicke
