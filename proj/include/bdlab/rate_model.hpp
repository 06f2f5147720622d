#ifndef BDLAB_RATE_MODEL_HPP
#define BDLAB_RATE_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bdlab {

using State = std::int64_t;

struct RateEntry {
  double birth;  // lambda(x)
  double death;  // mu(x)
};

// Birth and death rates of the process on Z+.
//
// Canonical family: lambda(x) = P * max(x,1)^l, mu(x) = Q * x, with P, Q > 0 and
// l in [0,1). Table models give (lambda, mu) for states 0..size-1 and refuse to
// extrapolate past the table.
class RateModel {
 public:
  enum class Kind { canonical, table };

  static RateModel canonical(double P, double Q, double l);

  // entries[x] holds the rates of state x. Requires lambda > 0 everywhere,
  // mu(0) = 0 and mu(x) > 0 for x >= 1.
  static RateModel table(std::vector<RateEntry> entries);

  // Whitespace-separated "state birth death" lines, states 0..n-1 in order.
  // '#' starts a comment.
  static RateModel load_table(const std::string& path);

  Kind kind() const { return kind_; }
  double P() const { return P_; }
  double Q() const { return Q_; }
  double l() const { return l_; }

  // True iff lambda is a constant P and mu(x) = Q x exactly, so the time-T law
  // is Poisson with mean (P/Q)(1 - exp(-QT)). For tables P and Q are read off
  // the table when the flag is set.
  bool exact_law_available() const { return exact_law_; }

  // Largest state a table covers; max State for canonical models.
  State max_state() const;

  double birth(State x) const;
  double death(State x) const;
  double total_rate(State x) const { return birth(x) + death(x); }

  const std::vector<RateEntry>& entries() const { return entries_; }

 private:
  RateModel() = default;
  void check_state(State x) const;

  Kind kind_ = Kind::canonical;
  double P_ = 1.0;
  double Q_ = 1.0;
  double l_ = 0.0;
  bool exact_law_ = false;
  std::vector<RateEntry> entries_;
};

// eta(x) = lambda(x) + mu(x).
inline double total_rate(const RateModel& model, State x) { return model.total_rate(x); }

}  // namespace bdlab

#endif  // BDLAB_RATE_MODEL_HPP
