#include "bdlab/measure_change.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bdlab/errors.hpp"
#include "bdlab/numerics.hpp"
#include "bdlab/parallel.hpp"
#include "bdlab/rate_functionals.hpp"
#include "bdlab/simulate.hpp"

namespace bdlab {

double Estimate::value() const { return n_hits == 0 ? 0.0 : std::exp(log_value); }

EventSpec EventSpec::full_space() { return EventSpec{}; }

EventSpec EventSpec::neighborhood(PiecewiseFunction center, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("neighborhood event: eps must be positive");
  EventSpec e;
  e.kind = Kind::neighborhood;
  e.center = std::move(center);
  e.eps = eps;
  return e;
}

EventSpec EventSpec::level_cross(double a) {
  if (!(a > 0.0)) throw PreconditionError("level_cross event: a must be positive");
  EventSpec e;
  e.kind = Kind::level_cross;
  e.a = a;
  return e;
}

EventSpec EventSpec::terminal_window(double lo, double hi) {
  if (!(lo >= 0.0 && lo <= hi))
    throw PreconditionError("terminal_window event: needs 0 <= lo <= hi");
  EventSpec e;
  e.kind = Kind::terminal_window;
  e.lo = lo;
  e.hi = hi;
  return e;
}

std::string EventSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::full_space: os << "full_space"; break;
    case Kind::neighborhood: os << "neighborhood(eps=" << eps << ")"; break;
    case Kind::level_cross: os << "level_cross(a=" << a << ")"; break;
    case Kind::terminal_window: os << "terminal_window[" << lo << ":" << hi << "]"; break;
  }
  return os.str();
}

bool EventSpec::contains(const Trajectory& traj, double phi_of_T) const {
  switch (kind) {
    case Kind::full_space: return true;
    case Kind::level_cross:
      return traj.max_state() >= lattice_at_least(a, phi_of_T).first;
    case Kind::terminal_window: {
      const auto w = lattice_window(lo, hi, phi_of_T);
      const State x = traj.final_state();
      return x >= w.first && x <= w.last;
    }
    case Kind::neighborhood:
      return l1_distance(center, scale_path(traj, traj.horizon(), phi_of_T)) < eps;
  }
  return false;
}

std::int64_t count_jumps(const Trajectory& traj) {
  return static_cast<std::int64_t>(traj.jump_count());
}

double functional_A(const RateModel& model, const Trajectory& traj) {
  const auto& times = traj.jump_times();
  const auto& signs = traj.jump_signs();
  NeumaierSum acc;
  State x = traj.initial_state();
  double prev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    acc.add(model.total_rate(x) * (times[i] - prev));
    prev = times[i];
    x += signs[i];
  }
  acc.add(model.total_rate(x) * (traj.horizon() - prev));
  return acc.value();
}

double functional_B(const RateModel& model, const Trajectory& traj) {
  NeumaierSum acc;
  State x = traj.initial_state();
  for (auto s : traj.jump_signs()) {
    const double nu = s > 0 ? model.birth(x) : model.death(x);
    if (nu == 0.0) return kNegInf;
    acc.add(std::log(nu));
    x += s;
  }
  return acc.value();
}

double log_density_from(const RateModel& model, const Trajectory& traj) {
  if (traj.min_state() < 0)
    throw PreconditionError("log density: path leaves Z+");
  const double b = functional_B(model, traj);
  if (b == kNegInf) return kNegInf;
  return traj.horizon() - functional_A(model, traj) + b +
         static_cast<double>(count_jumps(traj)) * std::numbers::ln2;
}

double log_density(const RateModel& model, const Trajectory& traj) {
  if (!in_path_space(traj)) throw PreconditionError("log density: trajectory is not in X_T");
  return log_density_from(model, traj);
}

Estimate estimate_from_log_weights(std::span<const double> log_weights) {
  Estimate est{kNegInf, 0.0, static_cast<std::int64_t>(log_weights.size()), 0, 0.0};
  if (log_weights.empty()) return est;
  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  if (peak == kNegInf) return est;

  NeumaierSum sum;
  std::int64_t hits = 0;
  for (double lw : log_weights) {
    if (lw == kNegInf) continue;
    ++hits;
    sum.add(std::exp(lw - peak));
  }
  const double n = static_cast<double>(log_weights.size());
  const double mean = sum.value() / n;  // in units of e^peak
  NeumaierSum sq;
  for (double lw : log_weights) {
    const double w = lw == kNegInf ? 0.0 : std::exp(lw - peak);
    sq.add((w - mean) * (w - mean));
  }
  const double var = n > 1 ? sq.value() / (n - 1) : 0.0;
  est.log_value = peak + std::log(mean);
  est.relative_std_error = std::sqrt(var) / (mean * std::sqrt(n));
  est.n_hits = hits;
  est.max_weight_share = 1.0 / sum.value();
  return est;
}

Estimate importance_estimate(const RateModel& model, double T, double phi_of_T,
                             const EventSpec& event, const SamplingOptions& opts) {
  if (opts.n < 1) throw PreconditionError("importance_estimate: n must be >= 1");
  const auto weights = parallel_map<double>(
      static_cast<std::size_t>(opts.n), opts.threads, [&](std::size_t i) {
        RngStream stream(opts.seed, i);
        const Trajectory z = simulate_zeta(T, stream);
        if (!in_path_space(z) || !event.contains(z, phi_of_T)) return kNegInf;
        return log_density(model, z);
      });
  return estimate_from_log_weights(weights);
}

Estimate direct_estimate(const RateModel& model, double T, double phi_of_T,
                         const EventSpec& event, const SamplingOptions& opts) {
  if (opts.n < 1) throw PreconditionError("direct_estimate: n must be >= 1");
  const auto hits = parallel_map<char>(
      static_cast<std::size_t>(opts.n), opts.threads, [&](std::size_t i) {
        RngStream stream(opts.seed, i);
        return static_cast<char>(event.contains(simulate_xi(model, T, stream), phi_of_T));
      });
  const auto k = std::count(hits.begin(), hits.end(), char{1});
  const double n = static_cast<double>(opts.n);
  Estimate est{kNegInf, 0.0, opts.n, static_cast<std::int64_t>(k), 0.0};
  if (k == 0) return est;
  const double p = static_cast<double>(k) / n;
  est.log_value = std::log(p);
  est.relative_std_error = std::sqrt(p * (1.0 - p) / n) / p;
  est.max_weight_share = 1.0 / static_cast<double>(k);
  return est;
}

}  // namespace bdlab
