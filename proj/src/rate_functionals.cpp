#include "bdlab/rate_functionals.hpp"

#include <cmath>
#include <limits>

#include "bdlab/errors.hpp"
#include "bdlab/numerics.hpp"

namespace bdlab {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::sub: return "SUB";
    case Regime::exp: return "EXP";
    case Regime::super: return "SUPER";
  }
  return "?";
}

ScalingFamily ScalingFamily::poly(double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("poly scaling: alpha must be positive");
  ScalingFamily f;
  f.kind = Kind::poly;
  f.alpha = alpha;
  return f;
}

ScalingFamily ScalingFamily::exponential(double k) {
  if (!(k > 0.0)) throw PreconditionError("exponential scaling: k must be positive");
  ScalingFamily f;
  f.kind = Kind::exponential;
  f.k = k;
  return f;
}

ScalingFamily ScalingFamily::superexp(double k, double beta) {
  if (!(k > 0.0)) throw PreconditionError("superexponential scaling: k must be positive");
  if (!(beta > 1.0)) throw PreconditionError("superexponential scaling: beta must exceed 1");
  ScalingFamily f;
  f.kind = Kind::superexp;
  f.k = k;
  f.beta = beta;
  return f;
}

Regime ScalingFamily::regime() const {
  switch (kind) {
    case Kind::poly: return Regime::sub;
    case Kind::exponential: return Regime::exp;
    case Kind::superexp: return Regime::super;
  }
  return Regime::sub;
}

std::string ScalingFamily::name() const {
  switch (kind) {
    case Kind::poly: return "poly";
    case Kind::exponential: return "exponential";
    case Kind::superexp: return "superexp";
  }
  return "?";
}

namespace {

void check_T(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("T must be positive and finite");
}

void check_nonnegative(const PiecewiseFunction& f) {
  if (f.min_value() < 0.0) throw PreconditionError("rate functional requires f >= 0");
}

}  // namespace

double log_phi(const ScalingFamily& family, double T) {
  check_T(T);
  switch (family.kind) {
    case ScalingFamily::Kind::poly: return family.alpha * std::log(T);
    case ScalingFamily::Kind::exponential: return family.k * T;
    case ScalingFamily::Kind::superexp: return family.k * std::pow(T, family.beta);
  }
  return 0.0;
}

double phi(const ScalingFamily& family, double T) {
  if (family.kind == ScalingFamily::Kind::poly) {
    check_T(T);
    return std::pow(T, family.alpha);
  }
  return std::exp(log_phi(family, T));
}

double normalizer(const ScalingFamily& family, double T) {
  const double p = phi(family, T);
  if (family.regime() == Regime::sub) return T * p;
  const double lp = log_phi(family, T);
  if (!(lp > 0.0))
    throw PreconditionError("normalizer phi ln phi needs phi(T) > 1; got phi = " +
                            std::to_string(p));
  return p * lp;
}

RateValue rate_sub(const PiecewiseFunction& f, double Q, bool check_domain) {
  check_nonnegative(f);
  RateValue out{Q * f.integral(), false};
  if (check_domain) {
    bool ok = f.mode() == PiecewiseFunction::Mode::linear && f.values().front() == 0.0;
    for (std::size_t i = 1; ok && i < f.values().size(); ++i) ok = f.values()[i] > 0.0;
    out.domain_warning = !ok;
  }
  return out;
}

double rate_exp(const PiecewiseFunction& f, double Q, double k, double l) {
  if (!(k > 0.0)) throw PreconditionError("rate_exp: k must be positive");
  return (Q / k) * f.integral() + rate_super(f, l);
}

double rate_super(const PiecewiseFunction& f, double l) {
  check_nonnegative(f);
  if (!(l >= 0.0 && l < 1.0)) throw PreconditionError("l must lie in [0, 1)");
  return (1.0 - l) * left_limit_at_one(jordan_decompose(f).plus);
}

double level_crossing_rate(double a, double l) {
  if (!(a > 0.0)) throw PreconditionError("level_crossing_rate: a must be positive");
  if (!(l >= 0.0 && l < 1.0)) throw PreconditionError("l must lie in [0, 1)");
  return (1.0 - l) * a;
}

double poisson_mean(double P, double Q, double T) { return P / Q * -std::expm1(-Q * T); }

namespace {

void check_exact(const RateModel& model) {
  if (!model.exact_law_available())
    throw PreconditionError("exact Poisson law needs constant birth rate and death rate Q x");
}

double log_pmf(double log_mean, double mean, std::int64_t x) {
  if (x == 0) return -mean;
  const double xd = static_cast<double>(x);
  return xd * log_mean - mean - std::lgamma(xd + 1.0);
}

}  // namespace

double poisson_exact_log_pmf(const RateModel& model, double T, std::int64_t x) {
  check_exact(model);
  check_T(T);
  if (x < 0) return kNegInf;
  const double mean = poisson_mean(model.P(), model.Q(), T);
  return log_pmf(std::log(mean), mean, x);
}

double poisson_window_log_prob(const RateModel& model, double T, std::int64_t lo,
                               std::int64_t hi) {
  check_exact(model);
  check_T(T);
  constexpr double kCutoff = 60.0;
  const bool unbounded = hi < 0;
  lo = std::max<std::int64_t>(lo, 0);
  if (!unbounded && lo > hi) return kNegInf;
  const double mean = poisson_mean(model.P(), model.Q(), T);
  const double lm = std::log(mean);
  auto mode = static_cast<std::int64_t>(std::floor(mean));
  std::int64_t start = std::max(mode, lo);
  if (!unbounded) start = std::min(start, hi);
  const double peak = log_pmf(lm, mean, start);
  NeumaierSum acc;
  acc.add(1.0);
  for (std::int64_t x = start + 1; unbounded || x <= hi; ++x) {
    const double r = log_pmf(lm, mean, x) - peak;
    if (r < -kCutoff) break;
    acc.add(std::exp(r));
  }
  for (std::int64_t x = start - 1; x >= lo; --x) {
    const double r = log_pmf(lm, mean, x) - peak;
    if (r < -kCutoff) break;
    acc.add(std::exp(r));
  }
  return peak + std::log(acc.value());
}

LatticeWindow lattice_window(double lo, double hi, double phi_of_T) {
  return {static_cast<std::int64_t>(std::ceil(lo * phi_of_T)),
          static_cast<std::int64_t>(std::floor(hi * phi_of_T)), false};
}

LatticeWindow lattice_at_least(double a, double phi_of_T) {
  return {static_cast<std::int64_t>(std::ceil(a * phi_of_T)), -1, true};
}

double marginal_normalized_log_prob(const RateModel& model, const ScalingFamily& family, double T,
                                    double a, double eps) {
  if (!(a > 0.0)) throw PreconditionError("marginal probability: a must be positive");
  if (!(eps > 0.0)) throw PreconditionError("marginal probability: eps must be positive");
  if (a - eps < 0.0) throw PreconditionError("marginal probability: needs a - eps >= 0");
  check_exact(model);
  const double psi = normalizer(family, T);
  const LatticeWindow w = lattice_window(a - eps, a + eps, phi(family, T));
  if (w.empty()) return kNegInf;
  return poisson_window_log_prob(model, T, w.first, w.last) / psi;
}

double terminal_tail_normalized_log_prob(const RateModel& model, const ScalingFamily& family,
                                         double T, double a) {
  if (!(a > 0.0)) throw PreconditionError("tail probability: a must be positive");
  check_exact(model);
  const double psi = normalizer(family, T);
  const LatticeWindow w = lattice_at_least(a, phi(family, T));
  return poisson_window_log_prob(model, T, w.first, -1) / psi;
}

std::int64_t lemma57_argmax(double C, double T, const ScalingFamily& family) {
  if (!(C > 0.0)) throw PreconditionError("lemma57_argmax: C must be positive");
  if (!(T > 2.0 * C)) throw PreconditionError("lemma57_argmax: requires T > 2C");
  const double lp = log_phi(family, T);
  const double bound = C * phi(family, T);
  if (!(bound < 1e9)) throw PreconditionError("lemma57_argmax: C phi(T) too large to scan");
  const auto kmax = static_cast<std::int64_t>(std::floor(bound));
  const double lh = std::log(T / 2.0);
  std::int64_t best = 0;
  double best_val = kNegInf;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    const double kd = static_cast<double>(k);
    const double g = kd * lp - T / 2.0 + kd * lh - std::lgamma(kd + 1.0);
    if (g > best_val) {
      best_val = g;
      best = k;
    }
  }
  return best;
}

}  // namespace bdlab
