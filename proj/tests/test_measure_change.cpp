#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "bdlab/errors.hpp"
#include "bdlab/measure_change.hpp"
#include "bdlab/numerics.hpp"
#include "bdlab/simulate.hpp"

using namespace bdlab;

namespace {

// Radon-Nikodym density as the literal product over holding intervals:
// 2^n prod e^{-(eta(u_{i-1}) - 1) tau_i} nu_i * e^{-(eta(u_n) - 1)(T - t_n)}.
double product_form_density(const RateModel& m, const Trajectory& u) {
  const auto states = u.states();
  const auto& t = u.jump_times();
  double p = 1.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const State x = states[i];
    const double nu = u.jump_signs()[i] > 0 ? m.birth(x) : m.death(x);
    p *= 2.0 * std::exp(-(m.total_rate(x) - 1.0) * (t[i] - prev)) * nu;
    prev = t[i];
  }
  p *= std::exp(-(m.total_rate(states.back()) - 1.0) * (u.horizon() - prev));
  return p;
}

}  // namespace

TEST_CASE("count_jumps") {
  const Trajectory e(2.0, {}, {});
  const Trajectory t(2.0, {0.5, 1.0, 1.5}, {1, -1, 1});
  CHECK(count_jumps(e) == 0);
  CHECK(count_jumps(t) == 3);
  const Trajectory tail(1.0, {0.25}, {-1}, t.final_state());
  CHECK(count_jumps(concatenate(t, tail)) == count_jumps(t) + count_jumps(tail));
}

TEST_CASE("functional_A") {
  const auto m = RateModel::canonical(1, 1, 0);
  const double T = 4.0;
  CHECK(functional_A(m, Trajectory(T, {}, {})) == doctest::Approx(T));
  const double t1 = 1.25;
  CHECK(functional_A(m, Trajectory(T, {t1}, {1})) == doctest::Approx(t1 + 2 * (T - t1)));
  CHECK_THROWS_AS(functional_A(m, Trajectory(T, {1.0, 2.0}, {-1, 1})), PreconditionError);
}

TEST_CASE("functional_A is eta T for a constant-eta table") {
  const auto m = RateModel::load_table(std::string(BDLAB_TEST_DATA_DIR) + "/constant_eta.txt");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    RngStream s(8, static_cast<std::uint64_t>(i));
    Trajectory z = simulate_zeta(2.0, s);
    if (!in_path_space(z) || z.max_state() > m.max_state()) continue;
    CHECK(functional_A(m, z) == doctest::Approx(3.0 * 2.0).epsilon(1e-14));
  }
}

TEST_CASE("functional_B") {
  const auto m = RateModel::canonical(1, 1, 0);
  CHECK(functional_B(m, Trajectory(3.0, {}, {})) == 0.0);
  CHECK(functional_B(m, Trajectory(3.0, {0.5, 1.0, 2.0}, {1, 1, -1})) ==
        doctest::Approx(std::log(2.0)));
  CHECK(functional_B(m, Trajectory(3.0, {0.5, 1.0}, {1, -1})) == doctest::Approx(0.0));
  CHECK(functional_B(m, Trajectory(3.0, {0.5}, {-1})) == kNegInf);
  CHECK(functional_B(m, Trajectory(3.0, {0.5, 1.0, 2.0}, {1, -1, -1})) == kNegInf);
}

TEST_CASE("log_density closed forms") {
  const auto m = RateModel::canonical(1, 1, 0);
  const double T = 3.0;
  CHECK(log_density(m, Trajectory(T, {}, {})) == doctest::Approx(0.0));
  const auto m2 = RateModel::canonical(2.5, 1, 0);
  CHECK(log_density(m2, Trajectory(T, {}, {})) == doctest::Approx(-(2.5 - 1.0) * T));
  const double t1 = 1.0;
  CHECK(log_density(m, Trajectory(T, {t1}, {1})) == doctest::Approx(-(T - t1) + std::log(2.0)));
  CHECK_THROWS_AS(log_density(m, Trajectory(T, {1.0}, {-1})), PreconditionError);
}

TEST_CASE("log_density equals the term-by-term product") {
  const auto flat = RateModel::table({{2.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
  const Trajectory two(2.5, {0.4, 1.7}, {1, 1});
  CHECK(std::abs(log_density(flat, two) - std::log(product_form_density(flat, two))) < 1e-12);

  const auto m = RateModel::canonical(1.3, 0.6, 0.5);
  for (std::uint64_t r = 0; r < 200; ++r) {
    RngStream s(31, r);
    const Trajectory u = simulate_xi(m, 2.0, s);
    CHECK(std::abs(log_density(m, u) - std::log(product_form_density(m, u))) < 1e-10);
  }
}

TEST_CASE("log_density is additive over a split") {
  const auto m = RateModel::canonical(1.7, 0.9, 0.5);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (std::uint64_t r = 0; r < 300; ++r) {
    RngStream s(17, r);
    const Trajectory traj = simulate_xi(m, 5.0, s);
    const double cut = 5.0 * u(rng);
    if (cut <= 0.0 || std::binary_search(traj.jump_times().begin(), traj.jump_times().end(), cut))
      continue;
    const auto [head, tail] = split_at(traj, cut);
    CHECK(std::abs(log_density_from(m, head) + log_density_from(m, tail) - log_density(m, traj)) < 1e-10);
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("zero weights occur exactly on paths leaving Z+") {
  const auto m = RateModel::canonical(1, 1, 0);
  for (std::uint64_t r = 0; r < 3000; ++r) {
    RngStream s(23, r);
    const Trajectory z = simulate_zeta(3.0, s);
    CHECK((functional_B(m, z) == kNegInf) == !in_path_space(z));
  }
}

TEST_CASE("estimate_from_log_weights") {
  const std::vector<double> w{0.0, std::log(3.0), kNegInf};
  const Estimate e = estimate_from_log_weights(w);
  CHECK(e.n_samples == 3);
  CHECK(e.n_hits == 2);
  CHECK(e.log_value == doctest::Approx(std::log(4.0 / 3.0)));
  const double sd = std::sqrt(7.0 / 3.0);
  CHECK(e.relative_std_error == doctest::Approx(sd / (4.0 / 3.0 * std::sqrt(3.0))));
  CHECK(e.max_weight_share == doctest::Approx(0.75));

  const std::vector<double> none{kNegInf, kNegInf};
  const Estimate z = estimate_from_log_weights(none);
  CHECK(z.log_value == kNegInf);
  CHECK(z.n_hits == 0);

  // Large log weights do not overflow and the mean is order independent.
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(800.0, 30.0);
  std::vector<double> big(5000);
  for (double& x : big) x = g(rng);
  const double forward = estimate_from_log_weights(big).log_value;
  std::shuffle(big.begin(), big.end(), rng);
  CHECK(std::isfinite(forward));
  CHECK(std::abs(estimate_from_log_weights(big).log_value - forward) < 1e-12);
}

TEST_CASE("event membership") {
  const Trajectory t(4.0, {1.0, 2.0, 3.0}, {1, 1, -1});
  CHECK(EventSpec::full_space().contains(t, 1.0));
  CHECK(EventSpec::level_cross(2.0).contains(t, 1.0));
  CHECK_FALSE(EventSpec::level_cross(2.5).contains(t, 1.0));
  CHECK(EventSpec::level_cross(1.0).contains(t, 2.0));  // max 2 / phi 2 = 1
  CHECK(EventSpec::terminal_window(1.0, 1.0).contains(t, 1.0));
  CHECK_FALSE(EventSpec::terminal_window(0.0, 0.0).contains(t, 1.0));
  const auto center = scale_path(t, 4.0, 1.0);
  CHECK(EventSpec::neighborhood(center, 1e-9).contains(t, 1.0));
  CHECK_FALSE(EventSpec::neighborhood(PiecewiseFunction::constant(0.0), 1.0).contains(t, 1.0));
  CHECK_THROWS_AS(EventSpec::terminal_window(0.5, 0.2), PreconditionError);
  CHECK_THROWS_AS(EventSpec::level_cross(0.0), PreconditionError);
  CHECK_THROWS_AS(EventSpec::neighborhood(center, 0.0), PreconditionError);
}

TEST_CASE("importance estimate examples") {
  const auto m = RateModel::canonical(1, 1, 0);
  const double T = 3.0;
  const SamplingOptions opts{100000, 5, 4};

  const Estimate full = importance_estimate(m, T, 1.0, EventSpec::full_space(), opts);
  CHECK(std::abs(full.log_value) <= 4.0 * full.relative_std_error);

  const Estimate zero = importance_estimate(m, T, 1.0, EventSpec::terminal_window(0, 0), opts);
  const double exact = std::exp(-(1.0 - std::exp(-T)));
  CHECK(std::abs(zero.value() - exact) <= 4.0 * zero.std_error());

  const auto far = EventSpec::neighborhood(PiecewiseFunction::constant(1000.0), 1e-6);
  const Estimate none = importance_estimate(m, T, 1.0, far, SamplingOptions{2000, 5, 0});
  CHECK(none.n_hits == 0);
  CHECK(none.log_value == kNegInf);
}

TEST_CASE("direct estimate examples") {
  const auto m = RateModel::canonical(1, 1, 0);
  const double T = 3.0;
  const Estimate full = direct_estimate(m, T, 1.0, EventSpec::full_space(), SamplingOptions{1000, 1, 0});
  CHECK(full.log_value == 0.0);
  CHECK(full.relative_std_error == 0.0);

  const SamplingOptions opts{100000, 9, 4};
  const Estimate zero = direct_estimate(m, T, 1.0, EventSpec::terminal_window(0, 0), opts);
  const double exact = std::exp(-(1.0 - std::exp(-T)));
  CHECK(std::abs(zero.value() - exact) <= 4.0 * zero.std_error());

  const Estimate weighted = importance_estimate(m, T, 1.0, EventSpec::terminal_window(0, 0),
                                                SamplingOptions{100000, 10, 4});
  CHECK(std::abs(zero.value() - weighted.value()) <=
        3.0 * std::hypot(zero.std_error(), weighted.std_error()));
}

namespace {

// E_zeta[exp(log_density)] stratified by the jump count N ~ Poisson(T): given
// N = n the jump times are sorted uniforms on (0, T) and the signs fair coins.
// Every stratum is sampled, so the many-jump paths that carry most of the
// weight under heavy tails are never missed. Returns {mean, standard error}.
std::pair<double, double> stratified_total_mass(const RateModel& m, double T, int reps,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0.0, var = 0.0;
  for (int n = 0;; ++n) {
    const double log_pn = -T + n * std::log(T) - std::lgamma(n + 1.0);
    if (n > T && log_pn < -40.0) break;
    double s = 0.0, s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      std::vector<double> times(static_cast<std::size_t>(n));
      for (double& t : times) t = u(rng) * T;
      std::sort(times.begin(), times.end());
      std::vector<std::int8_t> signs(static_cast<std::size_t>(n));
      for (auto& sg : signs) sg = (rng() >> 63) ? 1 : -1;
      const Trajectory z(T, times, signs);
      const double w = in_path_space(z) ? std::exp(log_density(m, z)) : 0.0;
      s += w;
      s2 += w * w;
    }
    const double mean = s / reps;
    total += std::exp(log_pn) * mean;
    var += std::exp(2.0 * log_pn) * (s2 / reps - mean * mean) / reps;
  }
  return {total, std::sqrt(var)};
}

}  // namespace

TEST_CASE("change of measure preserves total mass (stratified oracle)") {
  std::uint64_t seed = 1;
  for (double P : {0.5, 1.0, 2.0})
    for (double Q : {0.5, 1.0, 2.0})
      for (double l : {0.0, 0.5})
        for (double T : {1.0, 3.0}) {
          const auto [mass, se] = stratified_total_mass(RateModel::canonical(P, Q, l), T, 3000, seed++);
          INFO("P=" << P << " Q=" << Q << " l=" << l << " T=" << T << " mass=" << mass << " se=" << se);
          CHECK(std::abs(mass - 1.0) <= 4.0 * se);
        }
}

TEST_CASE("normalization identity over a parameter battery") {
  // Plain importance sampling undercovers when the weights are heavy-tailed;
  // in that case the max-weight-share diagnostic must raise the alarm.
  int idx = 0, light = 0;
  for (double P : {0.5, 1.0, 2.0})
    for (double Q : {0.5, 1.0, 2.0})
      for (double l : {0.0, 0.5})
        for (double T : {1.0, 3.0}) {
          const auto m = RateModel::canonical(P, Q, l);
          const Estimate e = importance_estimate(m, T, 1.0, EventSpec::full_space(),
                                                 SamplingOptions{100000, std::uint64_t(1000 + idx++), 8});
          INFO("P=" << P << " Q=" << Q << " l=" << l << " T=" << T << " log=" << e.log_value
                    << " rse=" << e.relative_std_error << " share=" << e.max_weight_share);
          CHECK((std::abs(e.log_value) <= 4.0 * e.relative_std_error || e.heavy_weights()));
          if (!e.heavy_weights()) {
            ++light;
            CHECK(std::abs(e.log_value) <= 4.0 * e.relative_std_error);
          }
        }
  CHECK(light >= 12);
}

TEST_CASE("direct and importance estimates agree on a small-T battery") {
  // l = 0 only: with l > 0 the importance weights are heavy enough that the
  // sample standard error undercovers even at T = 1.
  const double T = 1.0;
  const std::vector<EventSpec> events{
      EventSpec::level_cross(2.0), EventSpec::terminal_window(1.0, 2.0),
      EventSpec::terminal_window(0.0, 0.0),
      EventSpec::neighborhood(PiecewiseFunction::step({0.0, 0.3}, {0.0, 1.0}), 0.5)};
  std::uint64_t seed = 100;
  for (double l : {0.0}) {
    const auto m = RateModel::canonical(1.0, 1.0, l);
    for (const auto& ev : events) {
      const Estimate d = direct_estimate(m, T, 1.0, ev, SamplingOptions{50000, seed++, 8});
      const Estimate w = importance_estimate(m, T, 1.0, ev, SamplingOptions{50000, seed++, 8});
      INFO(ev.describe() << " l=" << l);
      REQUIRE(d.n_hits > 0);
      CHECK(std::abs(d.value() - w.value()) <= 3.0 * std::hypot(d.std_error(), w.std_error()));
    }
  }
}

TEST_CASE("estimators are identical serial and parallel") {
  const auto m = RateModel::canonical(1, 2, 0);
  const auto ev = EventSpec::level_cross(2.0);
  const Estimate s = importance_estimate(m, 2.0, 1.0, ev, SamplingOptions{20000, 3, 0});
  const Estimate p = importance_estimate(m, 2.0, 1.0, ev, SamplingOptions{20000, 3, 7});
  CHECK(s.log_value == p.log_value);
  CHECK(s.relative_std_error == p.relative_std_error);
  const Estimate ds = direct_estimate(m, 2.0, 1.0, ev, SamplingOptions{20000, 3, 0});
  const Estimate dp = direct_estimate(m, 2.0, 1.0, ev, SamplingOptions{20000, 3, 5});
  CHECK(ds.n_hits == dp.n_hits);
}

namespace {

// Law of xi(T) from xi(0) = 0 by uniformization of the generator truncated at
// n_states (the truncated mass is negligible for the models used here).
std::vector<double> master_equation_law(const RateModel& m, double T, int n_states) {
  double Lambda = 0.0;
  for (int x = 0; x < n_states; ++x) Lambda = std::max(Lambda, m.birth(x) + m.death(x));
  std::vector<double> v(static_cast<std::size_t>(n_states), 0.0), out(v.size(), 0.0);
  v[0] = 1.0;
  double log_w = -Lambda * T;
  for (int k = 0; k < 4000; ++k) {
    for (std::size_t x = 0; x < v.size(); ++x) out[x] += std::exp(log_w) * v[x];
    std::vector<double> next(v.size(), 0.0);
    for (int x = 0; x < n_states; ++x) {
      const double up = x + 1 < n_states ? m.birth(x) / Lambda : 0.0;
      const double down = x > 0 ? m.death(x) / Lambda : 0.0;
      const auto i = static_cast<std::size_t>(x);
      if (x + 1 < n_states) next[i + 1] += v[i] * up;
      if (x > 0) next[i - 1] += v[i] * down;
      next[i] += v[i] * (1.0 - up - down);
    }
    v = std::move(next);
    log_w += std::log(Lambda * T) - std::log(k + 1.0);
    if (k > Lambda * T && log_w < -60.0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("direct estimate matches the master equation for l > 0") {
  const auto m = RateModel::canonical(1.0, 1.0, 0.5);
  std::uint64_t seed = 500;
  for (double T : {1.0, 2.0}) {
    const auto law = master_equation_law(m, T, 60);
    for (auto [lo, hi] : {std::pair{0.0, 0.0}, std::pair{1.0, 2.0}}) {
      double exact = 0.0;
      for (int x = static_cast<int>(lo); x <= static_cast<int>(hi); ++x) exact += law[static_cast<std::size_t>(x)];
      const Estimate d = direct_estimate(m, T, 1.0, EventSpec::terminal_window(lo, hi),
                                         SamplingOptions{100000, seed++, 8});
      INFO("T=" << T << " window=" << lo << ":" << hi << " exact=" << exact);
      CHECK(std::abs(d.value() - exact) <= 4.0 * d.std_error());
    }
  }
}
