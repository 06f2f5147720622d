#include "bdlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "bdlab/errors.hpp"

namespace bdlab {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  require_object(j, where);
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

const json& need(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + std::string(key) + "'");
  return j.at(key);
}

double need_number(const json& j, const std::string& where, const char* key) {
  const json& v = need(j, where, key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::string need_string(const json& j, const std::string& where, const char* key) {
  const json& v = need(j, where, key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> need_number_list(const json& j, const std::string& where, const char* key) {
  const json& v = need(j, where, key);
  if (!v.is_array()) throw ConfigError(where + "." + key + ": expected an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::int64_t to_count(const json& x, const std::string& where) {
  if (!x.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return x.get<std::int64_t>();
}

// Wraps library precondition failures raised while building config objects.
template <typename Fn>
auto as_config_error(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const PreconditionError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

EventSpec event_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  const std::string kind = need_string(j, where, "kind");
  return as_config_error(where, [&] {
    if (kind == "full_space") {
      check_keys(j, where, {"kind"});
      return EventSpec::full_space();
    }
    if (kind == "level_cross") {
      check_keys(j, where, {"kind", "a"});
      return EventSpec::level_cross(need_number(j, where, "a"));
    }
    if (kind == "terminal_window") {
      check_keys(j, where, {"kind", "lo", "hi"});
      return EventSpec::terminal_window(need_number(j, where, "lo"), need_number(j, where, "hi"));
    }
    if (kind == "neighborhood") {
      check_keys(j, where, {"kind", "eps", "center"});
      return EventSpec::neighborhood(profile_from_json(need(j, where, "center")),
                                     need_number(j, where, "eps"));
    }
    throw ConfigError(where + ": unknown event kind '" + kind + "'");
  });
}

json event_to_json(const EventSpec& e) {
  switch (e.kind) {
    case EventSpec::Kind::full_space: return {{"kind", "full_space"}};
    case EventSpec::Kind::level_cross: return {{"kind", "level_cross"}, {"a", e.a}};
    case EventSpec::Kind::terminal_window:
      return {{"kind", "terminal_window"}, {"lo", e.lo}, {"hi", e.hi}};
    case EventSpec::Kind::neighborhood:
      return {{"kind", "neighborhood"}, {"eps", e.eps}, {"center", profile_to_json(e.center)}};
  }
  return {};
}

}  // namespace

RateModel ModelSpec::build() const {
  if (kind == RateModel::Kind::table) return RateModel::load_table(table_path);
  return RateModel::canonical(P, Q, l);
}

std::int64_t ExperimentConfig::samples_at(std::size_t i) const {
  return samples.size() == 1 ? samples.front() : samples.at(i);
}

void ExperimentConfig::validate() const {
  if (T_grid.empty()) throw ConfigError("T_grid must not be empty");
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] > 0.0) || !std::isfinite(T_grid[i]))
      throw ConfigError("T_grid entries must be positive and finite");
    if (i > 0 && !(T_grid[i] > T_grid[i - 1]))
      throw ConfigError("T_grid must be strictly increasing");
  }
  if (samples.size() != 1 && samples.size() != T_grid.size())
    throw ConfigError("samples must hold one count or one count per T_grid entry");
  for (auto n : samples)
    if (n < 1) throw ConfigError("sample counts must be >= 1");
  for (std::size_t i = 0; i < mc_T_grid.size(); ++i) {
    if (!(mc_T_grid[i] > 0.0)) throw ConfigError("mc.T_grid entries must be positive");
    if (i > 0 && !(mc_T_grid[i] > mc_T_grid[i - 1]))
      throw ConfigError("mc.T_grid must be strictly increasing");
  }
  if (!mc_T_grid.empty() && mc_samples < 1) throw ConfigError("mc.samples must be >= 1");
  if (target_a && !(*target_a > 0.0)) throw ConfigError("target.a must be positive");
  if (target_eps && !(*target_eps > 0.0)) throw ConfigError("target.eps must be positive");
  if (!output_format.empty() && output_format != "csv" && output_format != "json")
    throw ConfigError("output.format must be 'csv' or 'json'");
  if (model.kind == RateModel::Kind::canonical)
    as_config_error("model", [&] { return RateModel::canonical(model.P, model.Q, model.l); });
}

ExperimentConfig config_from_json(const json& j) {
  check_keys(j, "config", {"model", "scaling", "T_grid", "samples", "seed", "events", "target", "mc",
                           "output"});
  ExperimentConfig cfg;

  const json& m = need(j, "config", "model");
  const std::string mkind = need_string(m, "model", "kind");
  if (mkind == "canonical") {
    check_keys(m, "model", {"kind", "P", "Q", "l"});
    cfg.model.kind = RateModel::Kind::canonical;
    cfg.model.P = need_number(m, "model", "P");
    cfg.model.Q = need_number(m, "model", "Q");
    cfg.model.l = need_number(m, "model", "l");
  } else if (mkind == "table") {
    check_keys(m, "model", {"kind", "path"});
    cfg.model.kind = RateModel::Kind::table;
    cfg.model.table_path = need_string(m, "model", "path");
  } else {
    throw ConfigError("model.kind must be 'canonical' or 'table'");
  }

  const json& s = need(j, "config", "scaling");
  const std::string family = need_string(s, "scaling", "family");
  cfg.scaling = as_config_error("scaling", [&] {
    if (family == "poly") {
      check_keys(s, "scaling", {"family", "alpha"});
      return ScalingFamily::poly(need_number(s, "scaling", "alpha"));
    }
    if (family == "exponential") {
      check_keys(s, "scaling", {"family", "k"});
      return ScalingFamily::exponential(need_number(s, "scaling", "k"));
    }
    if (family == "superexp") {
      check_keys(s, "scaling", {"family", "k", "beta"});
      return ScalingFamily::superexp(need_number(s, "scaling", "k"), need_number(s, "scaling", "beta"));
    }
    throw ConfigError("scaling.family must be 'poly', 'exponential' or 'superexp'");
  });

  cfg.T_grid = need_number_list(j, "config", "T_grid");
  const json& samples = need(j, "config", "samples");
  if (!samples.is_array()) throw ConfigError("config.samples: expected an array");
  for (const auto& x : samples) cfg.samples.push_back(to_count(x, "config.samples"));

  const json& seed = need(j, "config", "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
    throw ConfigError("config.seed: expected a nonnegative integer");
  cfg.seed = seed.get<std::uint64_t>();

  if (j.contains("events")) {
    const json& ev = j.at("events");
    if (!ev.is_array()) throw ConfigError("config.events: expected an array");
    for (std::size_t i = 0; i < ev.size(); ++i)
      cfg.events.push_back(event_from_json(ev[i], "events[" + std::to_string(i) + "]"));
  }
  if (j.contains("target")) {
    const json& t = j.at("target");
    check_keys(t, "target", {"a", "eps"});
    if (t.contains("a")) cfg.target_a = need_number(t, "target", "a");
    if (t.contains("eps")) cfg.target_eps = need_number(t, "target", "eps");
  }
  if (j.contains("mc")) {
    const json& mc = j.at("mc");
    check_keys(mc, "mc", {"T_grid", "samples"});
    cfg.mc_T_grid = need_number_list(mc, "mc", "T_grid");
    cfg.mc_samples = to_count(need(mc, "mc", "samples"), "mc.samples");
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) cfg.output_path = need_string(o, "output", "path");
    if (o.contains("format")) cfg.output_format = need_string(o, "output", "format");
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  if (cfg.model.kind == RateModel::Kind::canonical)
    j["model"] = {{"kind", "canonical"}, {"P", cfg.model.P}, {"Q", cfg.model.Q}, {"l", cfg.model.l}};
  else
    j["model"] = {{"kind", "table"}, {"path", cfg.model.table_path}};
  switch (cfg.scaling.kind) {
    case ScalingFamily::Kind::poly:
      j["scaling"] = {{"family", "poly"}, {"alpha", cfg.scaling.alpha}};
      break;
    case ScalingFamily::Kind::exponential:
      j["scaling"] = {{"family", "exponential"}, {"k", cfg.scaling.k}};
      break;
    case ScalingFamily::Kind::superexp:
      j["scaling"] = {{"family", "superexp"}, {"k", cfg.scaling.k}, {"beta", cfg.scaling.beta}};
      break;
  }
  j["T_grid"] = cfg.T_grid;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  if (!cfg.events.empty()) {
    j["events"] = json::array();
    for (const auto& e : cfg.events) j["events"].push_back(event_to_json(e));
  }
  if (cfg.target_a || cfg.target_eps) {
    json t = json::object();
    if (cfg.target_a) t["a"] = *cfg.target_a;
    if (cfg.target_eps) t["eps"] = *cfg.target_eps;
    j["target"] = t;
  }
  if (!cfg.mc_T_grid.empty()) j["mc"] = {{"T_grid", cfg.mc_T_grid}, {"samples", cfg.mc_samples}};
  if (!cfg.output_path.empty() || !cfg.output_format.empty()) {
    json o = json::object();
    if (!cfg.output_path.empty()) o["path"] = cfg.output_path;
    if (!cfg.output_format.empty()) o["format"] = cfg.output_format;
    j["output"] = o;
  }
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j);
}

json profile_to_json(const PiecewiseFunction& f) {
  return {{"mode", f.mode() == PiecewiseFunction::Mode::step ? "step" : "linear"},
          {"breakpoints", f.breakpoints()},
          {"values", f.values()}};
}

PiecewiseFunction profile_from_json(const json& j) {
  check_keys(j, "profile", {"mode", "breakpoints", "values"});
  const std::string mode = need_string(j, "profile", "mode");
  if (mode != "step" && mode != "linear") throw ConfigError("profile.mode must be 'step' or 'linear'");
  return as_config_error("profile", [&] {
    return PiecewiseFunction(mode == "step" ? PiecewiseFunction::Mode::step
                                            : PiecewiseFunction::Mode::linear,
                             need_number_list(j, "profile", "breakpoints"),
                             need_number_list(j, "profile", "values"));
  });
}

PiecewiseFunction parse_profile(const std::string& text) {
  std::istringstream in(text);
  std::string line, mode;
  std::vector<double> ts, vs;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "mode") {
      if (!(ls >> mode) || (mode != "step" && mode != "linear"))
        throw ConfigError("profile line " + std::to_string(line_no) + ": mode must be step or linear");
      continue;
    }
    double t = 0.0, v = 0.0;
    try {
      t = std::stod(first);
    } catch (const std::exception&) {
      throw ConfigError("profile line " + std::to_string(line_no) + ": expected 't value'");
    }
    if (!(ls >> v)) throw ConfigError("profile line " + std::to_string(line_no) + ": expected 't value'");
    ts.push_back(t);
    vs.push_back(v);
  }
  if (mode.empty()) throw ConfigError("profile: missing 'mode step|linear' line");
  return as_config_error("profile", [&] {
    return mode == "step" ? PiecewiseFunction::step(ts, vs) : PiecewiseFunction::linear(ts, vs);
  });
}

PiecewiseFunction load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str());
}

}  // namespace bdlab
