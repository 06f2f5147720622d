#include "bdlab/rate_model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "bdlab/errors.hpp"

namespace bdlab {

RateModel RateModel::canonical(double P, double Q, double l) {
  if (!(P > 0.0) || !std::isfinite(P))
    throw PreconditionError("canonical model: P must be a positive finite number");
  if (!(Q > 0.0) || !std::isfinite(Q))
    throw PreconditionError("canonical model: Q must be a positive finite number");
  if (!(l >= 0.0 && l < 1.0))
    throw PreconditionError("canonical model: l must lie in [0, 1)");
  RateModel m;
  m.kind_ = Kind::canonical;
  m.P_ = P;
  m.Q_ = Q;
  m.l_ = l;
  m.exact_law_ = (l == 0.0);
  return m;
}

RateModel RateModel::table(std::vector<RateEntry> entries) {
  if (entries.empty()) throw PreconditionError("table model: no entries");
  for (std::size_t x = 0; x < entries.size(); ++x) {
    const auto& e = entries[x];
    if (!(e.birth > 0.0) || !std::isfinite(e.birth))
      throw PreconditionError("table model: birth rate must be positive at state " +
                              std::to_string(x));
    if (x == 0 && e.death != 0.0)
      throw PreconditionError("table model: death rate at state 0 must be 0");
    if (x > 0 && (!(e.death > 0.0) || !std::isfinite(e.death)))
      throw PreconditionError("table model: death rate must be positive at state " +
                              std::to_string(x));
  }
  RateModel m;
  m.kind_ = Kind::table;
  m.l_ = 0.0;
  m.P_ = entries.front().birth;
  m.Q_ = entries.size() > 1 ? entries[1].death : 0.0;
  bool exact = entries.size() > 1;
  for (std::size_t x = 0; x < entries.size() && exact; ++x) {
    exact = entries[x].birth == m.P_ && entries[x].death == m.Q_ * static_cast<double>(x);
  }
  m.exact_law_ = exact;
  m.entries_ = std::move(entries);
  return m;
}

RateModel RateModel::load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rate table '" + path + "'");
  std::vector<RateEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long state;
    RateEntry e{};
    if (!(ls >> state)) continue;
    if (!(ls >> e.birth >> e.death))
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'state birth death'");
    if (state != static_cast<long long>(entries.size()))
      throw ConfigError(path + ":" + std::to_string(line_no) + ": states must be listed 0, 1, 2, ...");
    entries.push_back(e);
  }
  return table(std::move(entries));
}

State RateModel::max_state() const {
  if (kind_ == Kind::table) return static_cast<State>(entries_.size()) - 1;
  return std::numeric_limits<State>::max();
}

void RateModel::check_state(State x) const {
  if (x < 0) throw PreconditionError("rate queried at negative state " + std::to_string(x));
  if (kind_ == Kind::table && x > max_state())
    throw OutOfRangeError("rate table has no entry for state " + std::to_string(x) +
                          " (covers 0.." + std::to_string(max_state()) + ")");
}

double RateModel::birth(State x) const {
  check_state(x);
  if (kind_ == Kind::table) return entries_[static_cast<std::size_t>(x)].birth;
  if (l_ == 0.0 || x <= 1) return P_;
  return P_ * std::pow(static_cast<double>(x), l_);
}

double RateModel::death(State x) const {
  check_state(x);
  if (kind_ == Kind::table) return entries_[static_cast<std::size_t>(x)].death;
  return Q_ * static_cast<double>(x);
}

}  // namespace bdlab
