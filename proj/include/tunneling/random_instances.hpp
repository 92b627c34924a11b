#ifndef TUNNELING_RANDOM_INSTANCES_HPP
#define TUNNELING_RANDOM_INSTANCES_HPP

#include <cstdint>
#include <random>

#include "tunneling/potential.hpp"

namespace tunneling {

/// A tunneling problem: potential, clock region and an energy below the highest barrier.
struct RandomInstance {
  PiecewiseConstantPotential potential;
  ClockRegion region;
  double energy;
};

/// Draws 2-5 regions of width [0.5, 8] and height 0 or [0.005, 0.03] with at least
/// one barrier, an energy in (0.1, 0.95) of the tallest barrier kept at least 5% of E
/// away from every height, and a clock region that straddles an edge of the support,
/// sits inside a free gap, or lies anywhere in the support widened by 3.
/// Near-resonant draws (|R|^2 < 1e-8 or |T|^2 < 1e-10) are rejected.
RandomInstance random_instance(std::mt19937_64& rng);

}  // namespace tunneling

#endif  // TUNNELING_RANDOM_INSTANCES_HPP
