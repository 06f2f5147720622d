#include "bdlab/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bdlab/errors.hpp"

namespace bdlab {

using nlohmann::json;

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("output format must be 'csv' or 'json', got '" + s + "'");
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{"T",      "phi",        "psi",   "log_prob",
                                             "normalized", "predicted", "rel_se", "n_hits",
                                             "max_weight_share", "flag"};
  return cols;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "-inf") return -INFINITY;
  if (s == "inf") return INFINITY;
  if (s == "nan") return NAN;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

namespace {

std::string clean_flag(std::string flag) {
  for (char& c : flag)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return flag;
}

json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double json_number(const json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

}  // namespace

std::string to_csv(const ResultTable& table) {
  std::ostringstream os;
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : table.rows) {
    os << format_double(r.T) << ',' << format_double(r.phi) << ',' << format_double(r.psi) << ','
       << format_double(r.log_prob) << ',' << format_double(r.normalized) << ','
       << format_double(r.predicted) << ',' << format_double(r.rel_se) << ',' << r.n_hits << ','
       << format_double(r.max_weight_share) << ',' << clean_flag(r.flag) << '\n';
  }
  return os.str();
}

std::string to_json_text(const ResultTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"T", number_json(r.T)},
                    {"phi", number_json(r.phi)},
                    {"psi", number_json(r.psi)},
                    {"log_prob", number_json(r.log_prob)},
                    {"normalized", number_json(r.normalized)},
                    {"predicted", number_json(r.predicted)},
                    {"rel_se", number_json(r.rel_se)},
                    {"n_hits", r.n_hits},
                    {"max_weight_share", number_json(r.max_weight_share)},
                    {"flag", clean_flag(r.flag)}});
  }
  json doc = {{"experiment", table.experiment},
              {"seed", table.seed},
              {"config", table.config},
              {"columns", result_columns()},
              {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ResultRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (header) {
      if (cells != result_columns()) throw ConfigError("unexpected CSV header: " + line);
      header = false;
      continue;
    }
    if (cells.size() != result_columns().size())
      throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells: " + line);
    ResultRow r;
    r.T = parse_double(cells[0]);
    r.phi = parse_double(cells[1]);
    r.psi = parse_double(cells[2]);
    r.log_prob = parse_double(cells[3]);
    r.normalized = parse_double(cells[4]);
    r.predicted = parse_double(cells[5]);
    r.rel_se = parse_double(cells[6]);
    r.n_hits = std::stoll(cells[7]);
    r.max_weight_share = parse_double(cells[8]);
    r.flag = cells[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

ResultTable table_from_json_text(const std::string& text) {
  const json doc = json::parse(text);
  ResultTable t;
  t.experiment = doc.at("experiment").get<std::string>();
  t.seed = doc.at("seed").get<std::uint64_t>();
  t.config = doc.at("config");
  for (const auto& j : doc.at("rows")) {
    ResultRow r;
    r.T = json_number(j.at("T"));
    r.phi = json_number(j.at("phi"));
    r.psi = json_number(j.at("psi"));
    r.log_prob = json_number(j.at("log_prob"));
    r.normalized = json_number(j.at("normalized"));
    r.predicted = json_number(j.at("predicted"));
    r.rel_se = json_number(j.at("rel_se"));
    r.n_hits = j.at("n_hits").get<std::int64_t>();
    r.max_weight_share = json_number(j.at("max_weight_share"));
    r.flag = j.at("flag").get<std::string>();
    t.rows.push_back(std::move(r));
  }
  return t;
}

void emit_results(const ResultTable& table, OutputFormat format, const std::string& path) {
  if (table.rows.empty()) throw PreconditionError("emit_results: table has no rows");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << (format == OutputFormat::csv ? to_csv(table) : to_json_text(table));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace bdlab
