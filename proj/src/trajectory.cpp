#include "bdlab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bdlab/errors.hpp"

namespace bdlab {

Trajectory::Trajectory(double horizon, std::vector<double> jump_times,
                       std::vector<std::int8_t> jump_signs, State initial_state)
    : horizon_(horizon),
      jump_times_(std::move(jump_times)),
      jump_signs_(std::move(jump_signs)),
      initial_state_(initial_state) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw PreconditionError("trajectory horizon must be positive and finite");
  if (jump_times_.size() != jump_signs_.size())
    throw PreconditionError("trajectory: jump_times and jump_signs differ in length");
  double prev = 0.0;
  for (std::size_t i = 0; i < jump_times_.size(); ++i) {
    const double t = jump_times_[i];
    if (!(t > prev) || !(t < horizon_))
      throw PreconditionError("trajectory: jump times must be strictly increasing in (0, T); "
                              "violated at index " + std::to_string(i));
    if (jump_signs_[i] != 1 && jump_signs_[i] != -1)
      throw PreconditionError("trajectory: jump signs must be +1 or -1");
    prev = t;
  }
}

std::vector<State> Trajectory::states() const {
  std::vector<State> out;
  out.reserve(jump_signs_.size() + 1);
  State x = initial_state_;
  out.push_back(x);
  for (auto s : jump_signs_) {
    x += s;
    out.push_back(x);
  }
  return out;
}

State Trajectory::final_state() const {
  State x = initial_state_;
  for (auto s : jump_signs_) x += s;
  return x;
}

State Trajectory::max_state() const {
  State x = initial_state_, best = x;
  for (auto s : jump_signs_) best = std::max(best, x += s);
  return best;
}

State Trajectory::min_state() const {
  State x = initial_state_, best = x;
  for (auto s : jump_signs_) best = std::min(best, x += s);
  return best;
}

State Trajectory::state_at(double t) const {
  const auto k = std::upper_bound(jump_times_.begin(), jump_times_.end(), t) - jump_times_.begin();
  State x = initial_state_;
  for (std::ptrdiff_t i = 0; i < k; ++i) x += jump_signs_[static_cast<std::size_t>(i)];
  return x;
}

bool in_path_space(const Trajectory& traj) {
  return traj.initial_state() == 0 && traj.min_state() >= 0;
}

std::pair<Trajectory, Trajectory> split_at(const Trajectory& traj, double s) {
  if (!(s > 0.0 && s < traj.horizon()))
    throw PreconditionError("split_at: split time must lie in (0, T)");
  const auto& times = traj.jump_times();
  const auto& signs = traj.jump_signs();
  const auto k = static_cast<std::size_t>(
      std::lower_bound(times.begin(), times.end(), s) - times.begin());
  if (k < times.size() && times[k] == s)
    throw PreconditionError("split_at: split time coincides with a jump");
  std::vector<double> t1(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::int8_t> s1(signs.begin(), signs.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<double> t2;
  for (std::size_t i = k; i < times.size(); ++i) t2.push_back(times[i] - s);
  std::vector<std::int8_t> s2(signs.begin() + static_cast<std::ptrdiff_t>(k), signs.end());
  Trajectory head(s, std::move(t1), std::move(s1), traj.initial_state());
  const State mid = head.final_state();
  return {std::move(head), Trajectory(traj.horizon() - s, std::move(t2), std::move(s2), mid)};
}

Trajectory concatenate(const Trajectory& head, const Trajectory& tail) {
  if (tail.initial_state() != head.final_state())
    throw PreconditionError("concatenate: tail does not start where head ends");
  std::vector<double> times = head.jump_times();
  std::vector<std::int8_t> signs = head.jump_signs();
  for (double t : tail.jump_times()) times.push_back(head.horizon() + t);
  signs.insert(signs.end(), tail.jump_signs().begin(), tail.jump_signs().end());
  return Trajectory(head.horizon() + tail.horizon(), std::move(times), std::move(signs),
                    head.initial_state());
}

}  // namespace bdlab
