#include "bdlab/simulate.hpp"

#include <cmath>

#include "bdlab/errors.hpp"

namespace bdlab {

namespace {

// Next jump time after t for total rate `rate`. Draws whose increment vanishes
// (exact zero, or absorbed by rounding at t) are redrawn so that jump times
// stay strictly increasing.
double next_jump_time(double t, double rate, RngStream& stream) {
  for (;;) {
    const double next = t + stream.standard_exponential() / rate;
    if (next > t) return next;
  }
}

void check_horizon(double T) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw PreconditionError("simulation horizon T must be positive and finite");
}

}  // namespace

Trajectory simulate_xi(const RateModel& model, double T, RngStream& stream) {
  check_horizon(T);
  std::vector<double> times;
  std::vector<std::int8_t> signs;
  State x = 0;
  double t = 0.0;
  for (;;) {
    const double up = model.birth(x);
    const double rate = up + model.death(x);
    t = next_jump_time(t, rate, stream);
    if (t >= T) break;
    const bool birth = x == 0 || stream.uniform() * rate < up;
    times.push_back(t);
    signs.push_back(birth ? 1 : -1);
    x += birth ? 1 : -1;
  }
  return Trajectory(T, std::move(times), std::move(signs), 0);
}

Trajectory simulate_zeta(double T, RngStream& stream) {
  check_horizon(T);
  std::vector<double> times;
  std::vector<std::int8_t> signs;
  double t = 0.0;
  for (;;) {
    t = next_jump_time(t, 1.0, stream);
    if (t >= T) break;
    times.push_back(t);
    signs.push_back(stream.coin() ? 1 : -1);
  }
  return Trajectory(T, std::move(times), std::move(signs), 0);
}

}  // namespace bdlab
