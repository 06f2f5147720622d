#ifndef BDLAB_TRAJECTORY_HPP
#define BDLAB_TRAJECTORY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "bdlab/rate_model.hpp"

namespace bdlab {

// A finite-jump right-continuous path on [0, T] with unit jumps. Only jump
// times and signs are stored; states are derived from the initial state.
class Trajectory {
 public:
  // Validates: T > 0, times strictly increasing in (0, T), one sign (+1/-1)
  // per time.
  Trajectory(double horizon, std::vector<double> jump_times,
             std::vector<std::int8_t> jump_signs, State initial_state = 0);

  double horizon() const { return horizon_; }
  const std::vector<double>& jump_times() const { return jump_times_; }
  const std::vector<std::int8_t>& jump_signs() const { return jump_signs_; }
  State initial_state() const { return initial_state_; }
  std::size_t jump_count() const { return jump_times_.size(); }

  // states()[i] is the state on [t_i, t_{i+1}); states()[0] is the initial state.
  std::vector<State> states() const;
  State final_state() const;
  State max_state() const;
  State min_state() const;
  State state_at(double t) const;

 private:
  double horizon_;
  std::vector<double> jump_times_;
  std::vector<std::int8_t> jump_signs_;
  State initial_state_;
};

// Membership in X_T: starts at 0 and never leaves Z+.
bool in_path_space(const Trajectory& traj);

// Splits at time s in (0, T) that is not a jump time. The second piece starts
// in the state occupied at s and has horizon T - s.
std::pair<Trajectory, Trajectory> split_at(const Trajectory& traj, double s);

// Appends `tail` after `head`; tail.initial_state() must equal head.final_state().
Trajectory concatenate(const Trajectory& head, const Trajectory& tail);

}  // namespace bdlab

#endif  // BDLAB_TRAJECTORY_HPP
