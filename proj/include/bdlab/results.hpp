#ifndef BDLAB_RESULTS_HPP
#define BDLAB_RESULTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace bdlab {

struct ResultRow {
  double T = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double log_prob = 0.0;    // exact or estimated ln P
  double normalized = 0.0;  // log_prob / psi
  double predicted = 0.0;   // limit predicted by the rate functional
  double rel_se = 0.0;
  std::int64_t n_hits = 0;
  double max_weight_share = 0.0;
  std::string flag;  // ';'-separated tags, never contains ','

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  std::string experiment;
  std::uint64_t seed = 0;
  nlohmann::json config;  // echoed into JSON output
  std::vector<ResultRow> rows;
};

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& s);

// Column order of the CSV header.
const std::vector<std::string>& result_columns();

// Doubles are written with 17 significant digits; -inf as "-inf", +inf as "inf".
std::string format_double(double v);
double parse_double(const std::string& s);

std::string to_csv(const ResultTable& table);
std::string to_json_text(const ResultTable& table);

std::vector<ResultRow> rows_from_csv(const std::string& text);
ResultTable table_from_json_text(const std::string& text);

// Writes the table to `path`; throws IoError naming the path on failure.
void emit_results(const ResultTable& table, OutputFormat format, const std::string& path);

}  // namespace bdlab

#endif  // BDLAB_RESULTS_HPP
