#ifndef BDLAB_NUMERICS_HPP
#define BDLAB_NUMERICS_HPP

#include <cmath>
#include <limits>
#include <span>

namespace bdlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// Compensated (Neumaier) running sum.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(sum_i exp(v_i)), shifted by the peak. Returns -inf for an empty span or
// when every entry is -inf.
double log_sum_exp(std::span<const double> values);

}  // namespace bdlab

#endif  // BDLAB_NUMERICS_HPP
