#ifndef BDLAB_PATH_SPACE_HPP
#define BDLAB_PATH_SPACE_HPP

#include <vector>

#include "bdlab/trajectory.hpp"

namespace bdlab {

// A function on [0,1] with finitely many breakpoints 0 = t_0 < ... < t_n = 1.
//
// Step mode: values[i] is the value on [t_i, t_{i+1}) (n values). The function
// is right-continuous and takes the final segment's value at t = 1, i.e. the
// cadlag representative with its left limit at 1.
// Linear mode: values[i] is the value at t_i (n + 1 values), linearly
// interpolated in between.
class PiecewiseFunction {
 public:
  enum class Mode { step, linear };

  PiecewiseFunction(Mode mode, std::vector<double> breakpoints, std::vector<double> values);

  static PiecewiseFunction constant(double c);
  // Step function from (start, value) pieces; starts[0] must be 0.
  static PiecewiseFunction step(std::vector<double> starts, std::vector<double> values);
  // Linear interpolant through nodes (t_i, v_i); t_0 = 0 and t_n = 1.
  static PiecewiseFunction linear(std::vector<double> nodes, std::vector<double> values);

  Mode mode() const { return mode_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t segment_count() const { return breakpoints_.size() - 1; }

  double operator()(double t) const;
  // Values at the left and right ends of segment i (the one-sided limits).
  double segment_start(std::size_t i) const;
  double segment_end(std::size_t i) const;

  double integral() const;
  double min_value() const;

  // Same shape with every value multiplied by c.
  PiecewiseFunction scaled(double c) const;

 private:
  Mode mode_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Monotone split f = plus - minus with plus(0) = f(0), minus(0) = 0 and
// Var f = Var plus + Var minus.
struct JordanPair {
  PiecewiseFunction plus;
  PiecewiseFunction minus;
};

// xi_T(t) = xi(tT) / phi as a step function. Jump times are rescaled by 1/T;
// breakpoints that collapse under rounding are merged (later state wins).
PiecewiseFunction scale_path(const Trajectory& traj, double T, double phi_of_T);

// rho(f, g) = int_0^1 |f - g| dt, exact on the merged breakpoint grid.
double l1_distance(const PiecewiseFunction& f, const PiecewiseFunction& g);

double total_variation(const PiecewiseFunction& f);

JordanPair jordan_decompose(const PiecewiseFunction& f);

double left_limit_at_one(const PiecewiseFunction& f);

// g in U_eps(center), i.e. rho(center, g) < eps.
bool neighborhood_contains(const PiecewiseFunction& center, const PiecewiseFunction& candidate,
                           double eps);

}  // namespace bdlab

#endif  // BDLAB_PATH_SPACE_HPP
