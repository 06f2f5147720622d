#ifndef BDLAB_SIMULATE_HPP
#define BDLAB_SIMULATE_HPP

#include "bdlab/rate_model.hpp"
#include "bdlab/rng.hpp"
#include "bdlab/trajectory.hpp"

namespace bdlab {

// Exact (Gillespie) path of the birth-death process xi on [0, T], started at 0.
// Holding time at x is Exp(eta(x)); the jump is up with probability
// lambda(x)/eta(x). From 0 the jump is always up.
Trajectory simulate_xi(const RateModel& model, double T, RngStream& stream);

// Reference walk zeta: unit-rate Poisson jump times, fair +-1 signs, on Z.
Trajectory simulate_zeta(double T, RngStream& stream);

}  // namespace bdlab

#endif  // BDLAB_SIMULATE_HPP
