#ifndef BDLAB_MEASURE_CHANGE_HPP
#define BDLAB_MEASURE_CHANGE_HPP

#include <cstdint>
#include <span>
#include <string>

#include "bdlab/path_space.hpp"
#include "bdlab/rate_model.hpp"
#include "bdlab/trajectory.hpp"

namespace bdlab {

// Max-weight share above which importance weights are treated as heavy-tailed:
// the reported standard error then tends to understate the true error.
inline constexpr double kHeavyWeightShare = 0.005;

// Natural-log probability estimate.
struct Estimate {
  double log_value;           // -inf iff n_hits == 0
  double relative_std_error;  // sample sd / (mean sqrt(n)); 0 when n_hits == 0
  std::int64_t n_samples;
  std::int64_t n_hits;        // replicas with a nonzero contribution
  double max_weight_share;    // largest single contribution / total (0 for no hits)

  double value() const;
  double std_error() const { return value() * relative_std_error; }
  bool heavy_weights() const { return max_weight_share > kHeavyWeightShare; }
};

// Path event evaluated on the scaled path x(tT)/phi of a trajectory.
struct EventSpec {
  enum class Kind { neighborhood, level_cross, terminal_window, full_space };

  Kind kind = Kind::full_space;
  PiecewiseFunction center = PiecewiseFunction::constant(0.0);  // neighborhood
  double eps = 0.0;                                             // neighborhood
  double a = 0.0;                                               // level_cross
  double lo = 0.0, hi = 0.0;                                    // terminal_window

  static EventSpec full_space();
  static EventSpec neighborhood(PiecewiseFunction center, double eps);
  static EventSpec level_cross(double a);
  static EventSpec terminal_window(double lo, double hi);

  std::string describe() const;

  // Exact membership: level_cross compares the path maximum, terminal_window
  // the final state (both on the integer lattice via ceil/floor of bound * phi),
  // neighborhood uses the exact L1 distance.
  bool contains(const Trajectory& traj, double phi_of_T) const;
};

std::int64_t count_jumps(const Trajectory& traj);

// A_T = int_0^T eta(u(t)) dt. Throws PreconditionError on a negative state.
double functional_A(const RateModel& model, const Trajectory& traj);

// B_T = sum ln nu(u(t_{i-1}), u(t_i)); -inf when a jump has zero rate (a down
// jump from 0). Throws PreconditionError on a negative pre-jump state.
double functional_B(const RateModel& model, const Trajectory& traj);

// ln of the Radon-Nikodym density of the xi-law against the zeta-law on X_T,
// with the e^T factor folded in: T - A_T + B_T + N_T ln 2.
double log_density(const RateModel& model, const Trajectory& traj);

// Same quantity for a path that may start anywhere in Z+ (used for splitting).
double log_density_from(const RateModel& model, const Trajectory& traj);

struct SamplingOptions {
  std::int64_t n = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = sequential
};

// P(xi in H) = E[exp(log_density(zeta)) 1(zeta in H)] over the reference walk.
// zeta paths leaving Z+ contribute 0.
Estimate importance_estimate(const RateModel& model, double T, double phi_of_T,
                             const EventSpec& event, const SamplingOptions& opts);

// Plain Monte Carlo over xi with binomial standard error.
Estimate direct_estimate(const RateModel& model, double T, double phi_of_T,
                         const EventSpec& event, const SamplingOptions& opts);

// Weighted-mean estimate from per-replica log contributions (-inf for zero).
Estimate estimate_from_log_weights(std::span<const double> log_weights);

}  // namespace bdlab

#endif  // BDLAB_MEASURE_CHANGE_HPP
