#include "bdlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bdlab/errors.hpp"
#include "bdlab/numerics.hpp"
#include "bdlab/parallel.hpp"
#include "bdlab/rate_functionals.hpp"
#include "bdlab/rng.hpp"
#include "bdlab/simulate.hpp"

namespace bdlab {

namespace {

std::uint64_t seed_for(std::uint64_t seed, Stage stage, std::size_t index) {
  return stage_seed(seed, static_cast<std::uint64_t>(stage), index);
}

ResultTable new_table(const ExperimentConfig& cfg, std::string name) {
  ResultTable t;
  t.experiment = std::move(name);
  t.seed = cfg.seed;
  t.config = config_to_json(cfg);
  return t;
}

ResultRow base_row(const ExperimentConfig& cfg, double T) {
  ResultRow r;
  r.T = T;
  r.phi = phi(cfg.scaling, T);
  r.psi = normalizer(cfg.scaling, T);
  return r;
}

std::string fmt(double v) { return format_double(v); }

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

void require_exact(const RateModel& model, const char* what) {
  if (!model.exact_law_available())
    throw PreconditionError(std::string(what) +
                            " needs a model with constant birth rate and death rate Q x");
}

void require_ldp_regime(const ExperimentConfig& cfg, const char* what) {
  if (cfg.scaling.regime() == Regime::sub)
    throw PreconditionError(std::string(what) + " needs an exponential or superexponential scaling");
}

double require_target_a(const ExperimentConfig& cfg) {
  if (!cfg.target_a) throw ConfigError("config needs target.a");
  return *cfg.target_a;
}

}  // namespace

bool agree_within(const Estimate& a, const Estimate& b, double k) {
  const double diff = std::abs(a.value() - b.value());
  return diff <= k * std::hypot(a.std_error(), b.std_error());
}

bool within_se_of(const Estimate& e, double exact_log_prob, double k) {
  return std::abs(e.value() - std::exp(exact_log_prob)) <= k * e.std_error();
}

PoissonCheckResult poisson_check(const RateModel& model, double T, std::int64_t n,
                                 std::uint64_t seed, unsigned threads) {
  require_exact(model, "poisson check");
  if (n < 1) throw PreconditionError("poisson check: n must be >= 1");
  const auto finals = parallel_map<State>(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    RngStream stream(seed, i);
    return simulate_xi(model, T, stream).final_state();
  });

  PoissonCheckResult out;
  out.T = T;
  out.n = n;
  const State top = *std::max_element(finals.begin(), finals.end());
  out.histogram.assign(static_cast<std::size_t>(top) + 1, 0);
  for (State x : finals) ++out.histogram[static_cast<std::size_t>(x)];

  const double nd = static_cast<double>(n);
  NeumaierSum tv;
  std::vector<double> pmf(out.histogram.size());
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    pmf[x] = std::exp(poisson_exact_log_pmf(model, T, static_cast<std::int64_t>(x)));
    tv.add(std::abs(static_cast<double>(out.histogram[x]) / nd - pmf[x]));
  }
  const double tail = std::exp(poisson_window_log_prob(model, T, top + 1, -1));
  tv.add(tail);
  out.tv_distance = 0.5 * tv.value();

  // Pearson statistic over bins with expected count >= 5; the last bin is the
  // open upper tail.
  struct Bin { double observed = 0.0, expected = 0.0; };
  std::vector<Bin> bins;
  Bin cur;
  std::size_t x = 0;
  for (;; ++x) {
    const double upper_tail =
        std::exp(poisson_window_log_prob(model, T, static_cast<std::int64_t>(x), -1)) * nd;
    if (upper_tail < 10.0) {
      cur.expected += upper_tail;
      for (std::size_t y = x; y < out.histogram.size(); ++y)
        cur.observed += static_cast<double>(out.histogram[y]);
      break;
    }
    const double p = std::exp(poisson_exact_log_pmf(model, T, static_cast<std::int64_t>(x)));
    cur.expected += p * nd;
    cur.observed += x < out.histogram.size() ? static_cast<double>(out.histogram[x]) : 0.0;
    if (cur.expected >= 5.0) {
      bins.push_back(cur);
      cur = Bin{};
    }
  }
  if (cur.expected < 5.0 && !bins.empty()) {
    bins.back().expected += cur.expected;
    bins.back().observed += cur.observed;
  } else {
    bins.push_back(cur);
  }
  NeumaierSum chi;
  for (const auto& b : bins) chi.add((b.observed - b.expected) * (b.observed - b.expected) / b.expected);
  out.chi_square = chi.value();
  out.dof = static_cast<int>(bins.size()) - 1;
  return out;
}

ResultTable run_poisson_check(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const RateModel model = cfg.model.build();
  require_exact(model, "poisson-check");
  ResultTable table = new_table(cfg, "poisson-check");
  for (std::size_t i = 0; i < cfg.T_grid.size(); ++i) {
    const double T = cfg.T_grid[i];
    const auto n = cfg.samples_at(i);
    const auto res = poisson_check(model, T, n, seed_for(cfg.seed, Stage::poisson, i), threads);
    ResultRow r = base_row(cfg, T);
    // Point check at x = 0 alongside the whole-histogram statistics in the flag.
    const std::int64_t zeros = res.histogram.empty() ? 0 : res.histogram[0];
    const double p0 = static_cast<double>(zeros) / static_cast<double>(n);
    r.log_prob = zeros > 0 ? std::log(p0) : kNegInf;
    r.normalized = r.log_prob / r.psi;
    r.predicted = poisson_exact_log_pmf(model, T, 0) / r.psi;
    r.rel_se = zeros > 0 ? std::sqrt(p0 * (1.0 - p0) / static_cast<double>(n)) / p0 : 0.0;
    r.n_hits = zeros;
    r.max_weight_share = zeros > 0 ? 1.0 / static_cast<double>(zeros) : 0.0;
    r.flag = "tv=" + fmt(res.tv_distance) + ";chi2=" + fmt(res.chi_square) +
             ";dof=" + std::to_string(res.dof);
    table.rows.push_back(std::move(r));
  }
  return table;
}

ResultTable run_marginal_ldp_scan(const ExperimentConfig& cfg, unsigned) {
  cfg.validate();
  const RateModel model = cfg.model.build();
  require_exact(model, "marginal-scan");
  require_ldp_regime(cfg, "marginal-scan");
  const double a = require_target_a(cfg);
  if (!cfg.target_eps) throw ConfigError("marginal-scan needs target.eps");
  const double eps = *cfg.target_eps;
  if (a - eps < 0.0) throw PreconditionError("marginal-scan needs target.a - target.eps >= 0");
  ResultTable table = new_table(cfg, "marginal-scan");
  for (double T : cfg.T_grid) {
    ResultRow r = base_row(cfg, T);
    r.normalized = marginal_normalized_log_prob(model, cfg.scaling, T, a, eps);
    r.log_prob = r.normalized == kNegInf ? kNegInf : r.normalized * r.psi;
    r.predicted = -a;
    r.flag = r.normalized == kNegInf ? "exact;empty_window" : "exact";
    table.rows.push_back(std::move(r));
  }
  return table;
}

ResultTable run_level_cross_scan(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const RateModel model = cfg.model.build();
  require_exact(model, "level-cross-scan terminal anchor");
  require_ldp_regime(cfg, "level-cross-scan");
  const double a = require_target_a(cfg);
  const double limit = -level_crossing_rate(a, model.l());
  ResultTable table = new_table(cfg, "level-cross-scan");
  for (double T : cfg.T_grid) {
    ResultRow r = base_row(cfg, T);
    r.normalized = terminal_tail_normalized_log_prob(model, cfg.scaling, T, a);
    r.log_prob = r.normalized * r.psi;
    r.predicted = limit;
    r.flag = "exact;terminal_tail";
    table.rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < cfg.mc_T_grid.size(); ++i) {
    const double T = cfg.mc_T_grid[i];
    ResultRow r = base_row(cfg, T);
    const SamplingOptions opts{cfg.mc_samples, seed_for(cfg.seed, Stage::level_mc, i), threads};
    const Estimate est = direct_estimate(model, T, r.phi, EventSpec::level_cross(a), opts);
    const double tail_log = poisson_window_log_prob(model, T, lattice_at_least(a, r.phi).first, -1);
    const double p_tail = std::exp(tail_log);
    const double p_ref = std::max(est.value(), p_tail);
    const double se = std::sqrt(p_ref * (1.0 - p_ref) / static_cast<double>(cfg.mc_samples));
    const bool dominates = est.value() >= p_tail - 3.0 * se;
    r.log_prob = est.log_value;
    r.normalized = est.log_value / r.psi;
    r.predicted = limit;
    r.rel_se = est.relative_std_error;
    r.n_hits = est.n_hits;
    r.max_weight_share = est.max_weight_share;
    r.flag = "direct_mc;sup_event;tail_log_prob=" + fmt(tail_log) +
             ";dominates=" + verdict(dominates);
    table.rows.push_back(std::move(r));
  }
  return table;
}

ResultTable run_consistency_check(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const RateModel model = cfg.model.build();
  ResultTable table = new_table(cfg, "consistency-check");
  for (std::size_t i = 0; i < cfg.T_grid.size(); ++i) {
    const double T = cfg.T_grid[i];
    const auto n = cfg.samples_at(i);
    const ResultRow base = base_row(cfg, T);
    const SamplingOptions is_opts{n, seed_for(cfg.seed, Stage::importance, i), threads};
    const SamplingOptions mc_opts{n, seed_for(cfg.seed, Stage::direct, i), threads};

    auto fill = [&](const Estimate& est, double predicted, std::string flag) {
      ResultRow r = base;
      r.log_prob = est.log_value;
      r.normalized = est.log_value / r.psi;
      r.predicted = predicted;
      r.rel_se = est.relative_std_error;
      r.n_hits = est.n_hits;
      r.max_weight_share = est.max_weight_share;
      r.flag = std::move(flag);
      if (est.heavy_weights() && r.flag.rfind("importance", 0) == 0) r.flag += ";heavy_weights";
      return r;
    };

    const Estimate norm = importance_estimate(model, T, base.phi, EventSpec::full_space(), is_opts);
    const bool norm_ok = std::abs(norm.log_value) <= 4.0 * norm.relative_std_error;
    table.rows.push_back(fill(norm, 0.0, std::string("importance;full_space;normalization=") +
                                             verdict(norm_ok)));

    for (const auto& event : cfg.events) {
      if (event.kind == EventSpec::Kind::full_space) continue;
      const Estimate direct = direct_estimate(model, T, base.phi, event, mc_opts);
      const Estimate weighted = importance_estimate(model, T, base.phi, event, is_opts);
      const bool agree = agree_within(direct, weighted, 3.0);

      std::string ref = "reference=direct";
      double reference = direct.log_value;
      std::string direct_exact, weighted_exact;
      if (event.kind == EventSpec::Kind::terminal_window && model.exact_law_available()) {
        const auto w = lattice_window(event.lo, event.hi, base.phi);
        reference = w.empty() ? kNegInf : poisson_window_log_prob(model, T, w.first, w.last);
        ref = "reference=exact";
        direct_exact = std::string(";exact_within_3se=") + verdict(within_se_of(direct, reference, 3.0));
        weighted_exact =
            std::string(";exact_within_3se=") + verdict(within_se_of(weighted, reference, 3.0));
      }
      const std::string tag = event.describe() + ";" + ref + ";agree=" + verdict(agree);
      table.rows.push_back(fill(direct, reference, "direct;" + tag + direct_exact));
      table.rows.push_back(fill(weighted, reference, "importance;" + tag + weighted_exact));
    }
  }
  return table;
}

std::string simulate_csv(const ExperimentConfig& cfg, bool reference_walk, unsigned threads) {
  cfg.validate();
  const RateModel model = cfg.model.build();
  const double T = cfg.T_grid.front();
  const auto n = cfg.samples_at(0);
  const std::uint64_t seed = seed_for(cfg.seed, Stage::simulate, 0);
  const auto paths = parallel_map<std::string>(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    RngStream stream(seed, i);
    const Trajectory traj = reference_walk ? simulate_zeta(T, stream) : simulate_xi(model, T, stream);
    std::ostringstream os;
    State x = traj.initial_state();
    os << i << ',' << format_double(0.0) << ",0," << x << '\n';
    for (std::size_t k = 0; k < traj.jump_count(); ++k) {
      x += traj.jump_signs()[k];
      os << i << ',' << format_double(traj.jump_times()[k]) << ','
         << static_cast<int>(traj.jump_signs()[k]) << ',' << x << '\n';
    }
    return os.str();
  });
  std::string out = "replica,time,sign,state\n";
  for (const auto& p : paths) out += p;
  return out;
}

std::string rate_eval_csv(const ExperimentConfig& cfg, const PiecewiseFunction& f) {
  const double Q = cfg.model.kind == RateModel::Kind::canonical ? cfg.model.Q : cfg.model.build().Q();
  const double l = cfg.model.l;
  const RateValue sub = rate_sub(f, Q, true);
  const double ex = rate_exp(f, Q, cfg.scaling.kind == ScalingFamily::Kind::poly ? 1.0 : cfg.scaling.k, l);
  const double sup = rate_super(f, l);
  const JordanPair jp = jordan_decompose(f);
  double regime_value = sub.value;
  if (cfg.scaling.regime() == Regime::exp) regime_value = ex;
  if (cfg.scaling.regime() == Regime::super) regime_value = sup;

  std::ostringstream os;
  os << "key,value\n";
  os << "regime," << to_string(cfg.scaling.regime()) << '\n';
  os << "rate," << format_double(regime_value) << '\n';
  os << "integral," << format_double(f.integral()) << '\n';
  os << "total_variation," << format_double(total_variation(f)) << '\n';
  os << "plus_at_one," << format_double(left_limit_at_one(jp.plus)) << '\n';
  os << "minus_at_one," << format_double(left_limit_at_one(jp.minus)) << '\n';
  os << "rate_sub," << format_double(sub.value) << '\n';
  os << "rate_sub_domain_warning," << (sub.domain_warning ? 1 : 0) << '\n';
  if (cfg.scaling.regime() != Regime::sub) os << "rate_exp," << format_double(ex) << '\n';
  os << "rate_super," << format_double(sup) << '\n';
  return os.str();
}

}  // namespace bdlab
