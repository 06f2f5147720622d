#ifndef BDLAB_CONFIG_HPP
#define BDLAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdlab/measure_change.hpp"
#include "bdlab/rate_functionals.hpp"
#include "bdlab/rate_model.hpp"

namespace bdlab {

struct ModelSpec {
  RateModel::Kind kind = RateModel::Kind::canonical;
  double P = 1.0, Q = 1.0, l = 0.0;
  std::string table_path;

  RateModel build() const;
};

// Experiment description, read from a JSON document. Every key is explicit:
// physics parameters have no defaults and unknown keys are rejected.
//
//   {
//     "model":    {"kind": "canonical", "P": 1, "Q": 1, "l": 0}
//               | {"kind": "table", "path": "rates.txt"},
//     "scaling":  {"family": "poly", "alpha": 1}
//               | {"family": "exponential", "k": 1}
//               | {"family": "superexp", "k": 1, "beta": 2},
//     "T_grid":   [5, 8, 11],              strictly increasing, positive
//     "samples":  [100000],                one count, or one per T
//     "seed":     42,
//     "events":   [ {"kind": "full_space"}
//                 | {"kind": "level_cross", "a": 1}
//                 | {"kind": "terminal_window", "lo": 0, "hi": 0}
//                 | {"kind": "neighborhood", "eps": 0.1,
//                    "center": {"mode": "step", "breakpoints": [0, 0.5, 1],
//                               "values": [0, 1]}} ],           optional
//     "target":   {"a": 0.5, "eps": 0.1},                       optional
//     "mc":       {"T_grid": [3], "samples": 100000},           optional
//     "output":   {"path": "out.csv", "format": "csv"}          optional
//   }
struct ExperimentConfig {
  ModelSpec model;
  ScalingFamily scaling;
  std::vector<double> T_grid;
  std::vector<std::int64_t> samples;
  std::uint64_t seed = 0;
  std::vector<EventSpec> events;
  std::optional<double> target_a;
  std::optional<double> target_eps;
  std::vector<double> mc_T_grid;
  std::int64_t mc_samples = 0;
  std::string output_path;
  std::string output_format;

  // Sample count for grid point i.
  std::int64_t samples_at(std::size_t i) const;

  // Throws ConfigError on any invariant violation.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

nlohmann::json profile_to_json(const PiecewiseFunction& f);
PiecewiseFunction profile_from_json(const nlohmann::json& j);

// Profile text file: a line "mode step" or "mode linear", then one "t value"
// pair per line. Step pairs give the value starting at t (first t = 0); linear
// pairs are interpolation nodes from t = 0 to t = 1. '#' starts a comment.
PiecewiseFunction load_profile(const std::string& path);
PiecewiseFunction parse_profile(const std::string& text);

}  // namespace bdlab

#endif  // BDLAB_CONFIG_HPP
