#include "bdlab/path_space.hpp"

#include <algorithm>
#include <cmath>

#include "bdlab/errors.hpp"
#include "bdlab/numerics.hpp"

namespace bdlab {

PiecewiseFunction::PiecewiseFunction(Mode mode, std::vector<double> breakpoints,
                                     std::vector<double> values)
    : mode_(mode), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2)
    throw PreconditionError("piecewise function needs at least breakpoints 0 and 1");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
    throw PreconditionError("piecewise function breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw PreconditionError("piecewise function breakpoints must be strictly increasing");
  const std::size_t expected =
      mode_ == Mode::step ? breakpoints_.size() - 1 : breakpoints_.size();
  if (values_.size() != expected)
    throw PreconditionError("piecewise function has " + std::to_string(values_.size()) +
                            " values, expected " + std::to_string(expected));
  for (double v : values_)
    if (!std::isfinite(v)) throw PreconditionError("piecewise function values must be finite");
}

PiecewiseFunction PiecewiseFunction::constant(double c) {
  return PiecewiseFunction(Mode::step, {0.0, 1.0}, {c});
}

PiecewiseFunction PiecewiseFunction::step(std::vector<double> starts, std::vector<double> values) {
  starts.push_back(1.0);
  return PiecewiseFunction(Mode::step, std::move(starts), std::move(values));
}

PiecewiseFunction PiecewiseFunction::linear(std::vector<double> nodes, std::vector<double> values) {
  return PiecewiseFunction(Mode::linear, std::move(nodes), std::move(values));
}

double PiecewiseFunction::segment_start(std::size_t i) const { return values_[i]; }

double PiecewiseFunction::segment_end(std::size_t i) const {
  return mode_ == Mode::step ? values_[i] : values_[i + 1];
}

double PiecewiseFunction::operator()(double t) const {
  if (t <= 0.0) return values_.front();
  if (t >= 1.0) return values_.back();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  if (mode_ == Mode::step) return values_[i];
  const double w = (t - breakpoints_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

double PiecewiseFunction::integral() const {
  NeumaierSum acc;
  for (std::size_t i = 0; i < segment_count(); ++i) {
    const double width = breakpoints_[i + 1] - breakpoints_[i];
    acc.add(0.5 * (segment_start(i) + segment_end(i)) * width);
  }
  return acc.value();
}

double PiecewiseFunction::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

PiecewiseFunction PiecewiseFunction::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return PiecewiseFunction(mode_, breakpoints_, std::move(v));
}

PiecewiseFunction scale_path(const Trajectory& traj, double T, double phi_of_T) {
  if (traj.horizon() != T)
    throw PreconditionError("scale_path: trajectory horizon " + std::to_string(traj.horizon()) +
                            " does not match T = " + std::to_string(T));
  if (!(phi_of_T > 0.0) || !std::isfinite(phi_of_T))
    throw PreconditionError("scale_path: phi(T) must be positive and finite");
  std::vector<double> breaks{0.0};
  State x = traj.initial_state();
  std::vector<double> values{static_cast<double>(x) / phi_of_T};
  const auto& times = traj.jump_times();
  const auto& signs = traj.jump_signs();
  for (std::size_t i = 0; i < times.size(); ++i) {
    x += signs[i];
    const double v = static_cast<double>(x) / phi_of_T;
    const double b = times[i] / T;
    if (b >= 1.0) {
      values.back() = v;
      continue;
    }
    if (b <= breaks.back()) {
      values.back() = v;
    } else {
      breaks.push_back(b);
      values.push_back(v);
    }
  }
  breaks.push_back(1.0);
  return PiecewiseFunction(PiecewiseFunction::Mode::step, std::move(breaks), std::move(values));
}

namespace {

// int_0^w |d0 + (d1 - d0) s / w| ds.
double abs_linear_integral(double d0, double d1, double w) {
  if ((d0 >= 0.0 && d1 >= 0.0) || (d0 <= 0.0 && d1 <= 0.0))
    return 0.5 * std::abs(d0 + d1) * w;
  // Sign change at s* = w d0 / (d0 - d1); two triangles.
  const double z = w * d0 / (d0 - d1);
  return 0.5 * (std::abs(d0) * z + std::abs(d1) * (w - z));
}

}  // namespace

double l1_distance(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  std::vector<double> grid;
  grid.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
             g.breakpoints().end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // Value of h just right of `a` and just left of `b` within the segment (a, b),
  // which lies inside one segment of h.
  auto one_sided = [](const PiecewiseFunction& h, std::size_t seg, double a, double b) {
    if (h.mode() == PiecewiseFunction::Mode::step) return std::pair{h.values()[seg], h.values()[seg]};
    const double t0 = h.breakpoints()[seg], t1 = h.breakpoints()[seg + 1];
    const double v0 = h.values()[seg], v1 = h.values()[seg + 1];
    const double slope = (v1 - v0) / (t1 - t0);
    return std::pair{v0 + slope * (a - t0), v0 + slope * (b - t0)};
  };

  NeumaierSum acc;
  std::size_t fi = 0, gi = 0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double a = grid[k], b = grid[k + 1];
    while (f.breakpoints()[fi + 1] <= a) ++fi;
    while (g.breakpoints()[gi + 1] <= a) ++gi;
    const auto [fa, fb] = one_sided(f, fi, a, b);
    const auto [ga, gb] = one_sided(g, gi, a, b);
    acc.add(abs_linear_integral(fa - ga, fb - gb, b - a));
  }
  return acc.value();
}

double total_variation(const PiecewiseFunction& f) {
  NeumaierSum acc;
  const auto& v = f.values();
  for (std::size_t i = 1; i < v.size(); ++i) acc.add(std::abs(v[i] - v[i - 1]));
  return acc.value();
}

JordanPair jordan_decompose(const PiecewiseFunction& f) {
  const auto& v = f.values();
  std::vector<double> plus(v.size()), minus(v.size());
  plus[0] = v[0];
  minus[0] = 0.0;
  NeumaierSum up, down;
  up.add(v[0]);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    if (d > 0.0) up.add(d);
    else if (d < 0.0) down.add(-d);
    plus[i] = up.value();
    minus[i] = down.value();
  }
  return {PiecewiseFunction(f.mode(), f.breakpoints(), std::move(plus)),
          PiecewiseFunction(f.mode(), f.breakpoints(), std::move(minus))};
}

double left_limit_at_one(const PiecewiseFunction& f) { return f.values().back(); }

bool neighborhood_contains(const PiecewiseFunction& center, const PiecewiseFunction& candidate,
                           double eps) {
  if (!(eps > 0.0)) throw PreconditionError("neighborhood radius must be positive");
  return l1_distance(center, candidate) < eps;
}

}  // namespace bdlab
