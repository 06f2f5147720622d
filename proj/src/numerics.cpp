#include "bdlab/numerics.hpp"

#include <algorithm>

namespace bdlab {

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return kNegInf;
  const double peak = *std::max_element(values.begin(), values.end());
  if (peak == kNegInf) return kNegInf;
  NeumaierSum acc;
  for (double v : values) acc.add(std::exp(v - peak));
  return peak + std::log(acc.value());
}

}  // namespace bdlab
