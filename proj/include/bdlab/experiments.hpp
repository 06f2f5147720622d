#ifndef BDLAB_EXPERIMENTS_HPP
#define BDLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bdlab/config.hpp"
#include "bdlab/measure_change.hpp"
#include "bdlab/rate_model.hpp"
#include "bdlab/results.hpp"

namespace bdlab {

// Seed tags for stage_seed().
enum class Stage : std::uint64_t { direct = 1, importance = 2, poisson = 3, level_mc = 4, simulate = 5 };

struct PoissonCheckResult {
  double T = 0.0;
  std::int64_t n = 0;
  std::vector<std::int64_t> histogram;  // counts of xi(T) = 0, 1, ...
  double tv_distance = 0.0;             // 0.5 sum |empirical - exact|, tail included
  double chi_square = 0.0;
  int dof = 0;
};

// Histogram of xi(T) over n replicas against the exact Poisson law.
PoissonCheckResult poisson_check(const RateModel& model, double T, std::int64_t n,
                                 std::uint64_t seed, unsigned threads);

// |p1 - p2| <= k sqrt(se1^2 + se2^2) in linear space.
bool agree_within(const Estimate& a, const Estimate& b, double k);
// |p - exact| <= k se.
bool within_se_of(const Estimate& e, double exact_log_prob, double k);

ResultTable run_poisson_check(const ExperimentConfig& cfg, unsigned threads);
ResultTable run_marginal_ldp_scan(const ExperimentConfig& cfg, unsigned threads);
ResultTable run_consistency_check(const ExperimentConfig& cfg, unsigned threads);
ResultTable run_level_cross_scan(const ExperimentConfig& cfg, unsigned threads);

// Replica trajectories of xi (or zeta) at T_grid[0] as "replica,time,sign,state"
// CSV, with one row per jump plus a time-0 row per replica.
std::string simulate_csv(const ExperimentConfig& cfg, bool reference_walk, unsigned threads);

// Key/value CSV of the rate functionals of f for the configured model and scaling.
std::string rate_eval_csv(const ExperimentConfig& cfg, const PiecewiseFunction& f);

}  // namespace bdlab

#endif  // BDLAB_EXPERIMENTS_HPP
