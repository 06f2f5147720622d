#ifndef BDLAB_RATE_FUNCTIONALS_HPP
#define BDLAB_RATE_FUNCTIONALS_HPP

#include <cstdint>
#include <string>

#include "bdlab/path_space.hpp"
#include "bdlab/rate_model.hpp"

namespace bdlab {

enum class Regime { sub, exp, super };

std::string to_string(Regime r);

// phi(T) = T^alpha (poly), e^{kT} (exponential) or e^{k T^beta} (superexp).
struct ScalingFamily {
  enum class Kind { poly, exponential, superexp };

  Kind kind = Kind::poly;
  double alpha = 1.0;
  double k = 1.0;
  double beta = 2.0;

  static ScalingFamily poly(double alpha);
  static ScalingFamily exponential(double k);
  static ScalingFamily superexp(double k, double beta);

  // lim ln(phi)/T: 0 for poly, k for exponential, infinite for superexp.
  Regime regime() const;
  std::string name() const;
};

double log_phi(const ScalingFamily& family, double T);
double phi(const ScalingFamily& family, double T);

// psi(T): T phi(T) in the SUB regime, phi(T) ln phi(T) otherwise. The latter
// requires phi(T) > 1.
double normalizer(const ScalingFamily& family, double T);

struct RateValue {
  double value;
  bool domain_warning;  // f outside {continuous, f(0) = 0, f > 0 on (0,1]}
};

// Q int_0^1 f. With check_domain the result carries a warning when f is not in
// the class the subexponential functional is stated on; the value is returned
// regardless.
RateValue rate_sub(const PiecewiseFunction& f, double Q, bool check_domain = false);

// (Q/k) int_0^1 f + (1 - l) f+(1-). Every representable f has finite
// variation, so the +infinity branch of the functional never applies here.
double rate_exp(const PiecewiseFunction& f, double Q, double k, double l);

// (1 - l) f+(1-).
double rate_super(const PiecewiseFunction& f, double l);

// Decay rate (1 - l) a of P(sup xi_T >= a) on the phi ln phi scale.
double level_crossing_rate(double a, double l);

// Mean of the exact time-T law: (P/Q)(1 - e^{-QT}).
double poisson_mean(double P, double Q, double T);

// ln P(xi(T) = x) for models with constant birth P and death Q x.
double poisson_exact_log_pmf(const RateModel& model, double T, std::int64_t x);

// ln P(lo <= xi(T) <= hi) under the exact law; hi < 0 means no upper bound.
// Sums outward from the largest term in the window and stops once terms fall
// more than 60 e-folds below it (the pmf is unimodal, so the neglected tail is
// below double precision).
double poisson_window_log_prob(const RateModel& model, double T, std::int64_t lo, std::int64_t hi);

// Integer lattice window [ceil(lo phi), floor(hi phi)] for the scaled event
// lo <= x / phi <= hi. Empty when first > second.
struct LatticeWindow {
  std::int64_t first;
  std::int64_t last;  // -1 with unbounded == true means no upper limit
  bool unbounded = false;
  bool empty() const { return !unbounded && first > last; }
};
LatticeWindow lattice_window(double lo, double hi, double phi_of_T);
LatticeWindow lattice_at_least(double a, double phi_of_T);

// (1 / (phi ln phi)) ln P(xi_T(1) in [a - eps, a + eps]); -inf for an empty window.
double marginal_normalized_log_prob(const RateModel& model, const ScalingFamily& family, double T,
                                    double a, double eps);

// (1 / psi) ln P(xi_T(1) >= a) under the exact law.
double terminal_tail_normalized_log_prob(const RateModel& model, const ScalingFamily& family,
                                         double T, double a);

// argmax over 0 <= k <= C phi(T) of k ln phi - T/2 + k ln(T/2) - ln k!,
// by direct scan. Requires T > 2C; the maximum then sits at floor(C phi(T)).
std::int64_t lemma57_argmax(double C, double T, const ScalingFamily& family);

}  // namespace bdlab

#endif  // BDLAB_RATE_FUNCTIONALS_HPP
