#include <doctest.h>

#include <cmath>

#include "bdlab/errors.hpp"
#include "bdlab/rate_model.hpp"
#include "bdlab/simulate.hpp"
#include "bdlab/trajectory.hpp"

using namespace bdlab;

TEST_CASE("total_rate of the canonical family") {
  CHECK(total_rate(RateModel::canonical(1, 1, 0), 0) == doctest::Approx(1.0));
  CHECK(total_rate(RateModel::canonical(2, 0.5, 0), 4) == doctest::Approx(4.0));
  CHECK(total_rate(RateModel::canonical(1, 1, 0.5), 4) == doctest::Approx(6.0));

  const auto m = RateModel::canonical(3, 2, 0.25);
  CHECK(m.death(0) == 0.0);
  CHECK(m.birth(0) == 3.0);
  CHECK(m.birth(1) == 3.0);
  CHECK(m.exact_law_available() == false);
  CHECK(RateModel::canonical(3, 2, 0).exact_law_available());
}

TEST_CASE("rate model parameter validation") {
  CHECK_THROWS_AS(RateModel::canonical(0, 1, 0), PreconditionError);
  CHECK_THROWS_AS(RateModel::canonical(1, -1, 0), PreconditionError);
  CHECK_THROWS_AS(RateModel::canonical(1, 1, 1.0), PreconditionError);
  CHECK_THROWS_AS(RateModel::canonical(1, 1, -0.1), PreconditionError);
  CHECK_THROWS_AS(RateModel::canonical(1, 1, 0).birth(-1), PreconditionError);
}

TEST_CASE("table models fail loudly beyond their range") {
  const auto m = RateModel::table({{1.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}});
  CHECK(m.total_rate(2) == doctest::Approx(3.0));
  CHECK(m.exact_law_available());
  CHECK(m.Q() == 1.0);
  CHECK_THROWS_AS(m.total_rate(3), OutOfRangeError);

  CHECK_THROWS_AS(RateModel::table({{1.0, 0.5}}), PreconditionError);           // mu(0) != 0
  CHECK_THROWS_AS(RateModel::table({{1.0, 0.0}, {1.0, 0.0}}), PreconditionError);  // mu(1) = 0
  CHECK_THROWS_AS(RateModel::table({{0.0, 0.0}}), PreconditionError);

  const auto odd = RateModel::table({{2.0, 0.0}, {1.0, 1.0}});
  CHECK_FALSE(odd.exact_law_available());
}

TEST_CASE("table file loading") {
  const auto m = RateModel::load_table(std::string(BDLAB_TEST_DATA_DIR) + "/constant_eta.txt");
  CHECK(m.kind() == RateModel::Kind::table);
  for (State x = 0; x <= m.max_state(); ++x) CHECK(m.total_rate(x) == doctest::Approx(3.0));
  CHECK_THROWS_AS(RateModel::load_table("/nonexistent/rates.txt"), IoError);
}

TEST_CASE("trajectory invariants are enforced") {
  CHECK_NOTHROW(Trajectory(1.0, {0.2, 0.5}, {1, -1}));
  CHECK_THROWS_AS(Trajectory(1.0, {0.5, 0.2}, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(Trajectory(1.0, {0.5, 0.5}, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(Trajectory(1.0, {1.0}, {1}), PreconditionError);
  CHECK_THROWS_AS(Trajectory(1.0, {0.0}, {1}), PreconditionError);
  CHECK_THROWS_AS(Trajectory(1.0, {0.5}, {2}), PreconditionError);
  CHECK_THROWS_AS(Trajectory(1.0, {0.5}, {}), PreconditionError);
  CHECK_THROWS_AS(Trajectory(0.0, {}, {}), PreconditionError);

  const Trajectory t(4.0, {1, 2, 3}, {1, 1, -1});
  CHECK(t.states() == std::vector<State>{0, 1, 2, 1});
  CHECK(t.final_state() == 1);
  CHECK(t.max_state() == 2);
  CHECK(t.state_at(0.5) == 0);
  CHECK(t.state_at(2.0) == 2);
  CHECK(t.state_at(3.9) == 1);
}

TEST_CASE("in_path_space") {
  CHECK(in_path_space(Trajectory(1.0, {0.2, 0.4}, {1, -1})));
  CHECK_FALSE(in_path_space(Trajectory(1.0, {0.2, 0.4}, {-1, 1})));
  CHECK(in_path_space(Trajectory(1.0, {}, {})));
  CHECK_FALSE(in_path_space(Trajectory(1.0, {}, {}, 2)));
}

TEST_CASE("split and concatenate are inverse") {
  const Trajectory t(5.0, {0.5, 1.5, 2.5, 4.0}, {1, 1, -1, 1});
  auto [head, tail] = split_at(t, 2.0);
  CHECK(head.horizon() == 2.0);
  CHECK(head.jump_count() == 2);
  CHECK(tail.initial_state() == 2);
  CHECK(tail.jump_times().front() == doctest::Approx(0.5));
  const Trajectory back = concatenate(head, tail);
  CHECK(back.jump_signs() == t.jump_signs());
  for (std::size_t i = 0; i < t.jump_count(); ++i)
    CHECK(back.jump_times()[i] == doctest::Approx(t.jump_times()[i]).epsilon(1e-15));
  CHECK_THROWS_AS(split_at(t, 1.5), PreconditionError);
  CHECK_THROWS_AS(concatenate(tail, head), PreconditionError);
}

TEST_CASE("simulation is deterministic per (seed, replica)") {
  const auto m = RateModel::canonical(1.5, 0.7, 0.3);
  RngStream a(99, 7), b(99, 7), c(99, 8);
  const auto ta = simulate_xi(m, 20.0, a);
  const auto tb = simulate_xi(m, 20.0, b);
  const auto tc = simulate_xi(m, 20.0, c);
  CHECK(ta.jump_times() == tb.jump_times());
  CHECK(ta.jump_signs() == tb.jump_signs());
  CHECK(ta.jump_times() != tc.jump_times());

  RngStream z1(5, 0), z2(5, 0);
  CHECK(simulate_zeta(10.0, z1).jump_times() == simulate_zeta(10.0, z2).jump_times());
  CHECK(substream_key(1, 0) != substream_key(1, 1));
  CHECK(substream_key(1, 0) != substream_key(2, 0));
}

TEST_CASE("xi trajectories stay in X_T and start with an up-jump") {
  const auto m = RateModel::canonical(0.8, 2.0, 0.5);
  for (std::uint64_t r = 0; r < 2000; ++r) {
    RngStream s(2024, r);
    const auto t = simulate_xi(m, 6.0, s);
    REQUIRE(in_path_space(t));
    if (t.jump_count() > 0) CHECK(t.jump_signs().front() == 1);
    for (double x : t.jump_times()) CHECK(x < 6.0);
  }
}

TEST_CASE("simulation preconditions") {
  RngStream s(1, 0);
  CHECK_THROWS_AS(simulate_xi(RateModel::canonical(1, 1, 0), 0.0, s), PreconditionError);
  CHECK_THROWS_AS(simulate_zeta(-1.0, s), PreconditionError);
  // A short table is exhausted quickly under strong births.
  const auto tiny = RateModel::table({{50.0, 0.0}, {50.0, 0.01}});
  CHECK_THROWS_AS(simulate_xi(tiny, 10.0, s), OutOfRangeError);
}

TEST_CASE("xi terminal mean matches the exact law at T = 5") {
  const auto m = RateModel::canonical(1, 1, 0);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int r = 0; r < n; ++r) {
    RngStream s(11, static_cast<std::uint64_t>(r));
    const double x = static_cast<double>(simulate_xi(m, 5.0, s).final_state());
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  const double exact = 1.0 - std::exp(-5.0);  // 0.99326
  CHECK(std::abs(mean - exact) <= 4.0 * se);
}

TEST_CASE("holding time at 0 and jump direction frequencies") {
  const auto m = RateModel::canonical(1, 1, 0);
  const int n = 20000;
  double hold = 0.0;
  long from_one = 0, up_from_one = 0;
  for (int r = 0; r < n; ++r) {
    RngStream s(77, static_cast<std::uint64_t>(r));
    const auto t = simulate_xi(m, 50.0, s);
    REQUIRE(t.jump_count() > 0);
    hold += t.jump_times().front();
    const auto states = t.states();
    for (std::size_t i = 0; i < t.jump_count(); ++i) {
      if (states[i] == 1) {
        ++from_one;
        if (t.jump_signs()[i] > 0) ++up_from_one;
      }
    }
  }
  // Exp(eta(0) = 1): mean 1, sd 1.
  CHECK(std::abs(hold / n - 1.0) <= 4.0 / std::sqrt(double(n)));
  // lambda(1) / eta(1) = 1/2.
  const double p = double(up_from_one) / double(from_one);
  CHECK(std::abs(p - 0.5) <= 4.0 * std::sqrt(0.25 / double(from_one)));
}

TEST_CASE("zeta is a unit-rate Poisson walk") {
  const int n = 100000;
  const double T = 3.0;
  long zero = 0;
  double jumps = 0.0, jumps_sq = 0.0, ups = 0.0, downs = 0.0;
  for (int r = 0; r < n; ++r) {
    RngStream s(3, static_cast<std::uint64_t>(r));
    const auto t = simulate_zeta(T, s);
    const double k = double(t.jump_count());
    if (t.jump_count() == 0) ++zero;
    jumps += k;
    jumps_sq += k * k;
    for (auto sg : t.jump_signs()) (sg > 0 ? ups : downs) += 1.0;
  }
  const double p0 = std::exp(-T);
  CHECK(std::abs(double(zero) / n - p0) <= 4.0 * std::sqrt(p0 * (1 - p0) / n));
  const double se = std::sqrt(T / n);  // Poisson variance T
  CHECK(std::abs(jumps / n - T) <= 4.0 * se);
  // Each sign class is Poisson(T/2).
  const double se_half = std::sqrt(T / 2 / n);
  CHECK(std::abs(ups / n - T / 2) <= 4.0 * se_half);
  CHECK(std::abs(downs / n - T / 2) <= 4.0 * se_half);
}
