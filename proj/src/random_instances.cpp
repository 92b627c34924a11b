#include "tunneling/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tunneling/scattering.hpp"

namespace tunneling {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ClockRegion draw_region(std::mt19937_64& rng, const PiecewiseConstantPotential& pot) {
  const auto x = pot.breakpoints();
  const auto v = pot.heights();
  const double lo = x.front();
  const double hi = x.back();
  std::vector<std::size_t> gaps;
  for (std::size_t r = 0; r < v.size(); ++r)
    if (v[r] == 0.0) gaps.push_back(r);

  const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
  if (kind == 0) {  // straddles the left or right edge
    const double edge = std::bernoulli_distribution(0.5)(rng) ? lo : hi;
    return {edge - uniform(rng, 0.2, 3.0), edge + uniform(rng, 0.2, 3.0)};
  }
  if (kind == 1 && !gaps.empty()) {  // strictly inside a free gap
    const std::size_t r = gaps[std::uniform_int_distribution<std::size_t>(0, gaps.size() - 1)(rng)];
    const double w = x[r + 1] - x[r];
    const double a = x[r] + uniform(rng, 0.05, 0.45) * w;
    const double b = x[r + 1] - uniform(rng, 0.05, 0.45) * w;
    return {a, b};
  }
  double a = uniform(rng, lo - 3.0, hi + 3.0);
  double b = uniform(rng, lo - 3.0, hi + 3.0);
  if (a > b) std::swap(a, b);
  if (b - a < 0.2) b = a + 0.2;
  return {a, b};
}

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng) {
  for (;;) {
    const int regions = std::uniform_int_distribution<int>(2, 5)(rng);
    std::vector<double> bps{uniform(rng, -5.0, 5.0)};
    std::vector<double> heights;
    for (int r = 0; r < regions; ++r) {
      bps.push_back(bps.back() + uniform(rng, 0.5, 8.0));
      heights.push_back(std::bernoulli_distribution(0.3)(rng) ? 0.0 : uniform(rng, 0.005, 0.03));
    }
    const double vmax = *std::max_element(heights.begin(), heights.end());
    if (vmax == 0.0) continue;
    const double energy = uniform(rng, 0.1, 0.95) * vmax;
    const bool well_separated = std::all_of(heights.begin(), heights.end(), [&](double h) {
      return h == 0.0 || std::abs(h - energy) >= 0.05 * energy;
    });
    if (!well_separated) continue;

    PiecewiseConstantPotential pot(std::move(bps), std::move(heights));
    const auto sol = solve(pot, energy);
    if (sol.reflection_probability() < 1e-8 || sol.transmission_probability() < 1e-10) continue;
    ClockRegion region = draw_region(rng, pot);
    return {std::move(pot), region, energy};
  }
}

}  // namespace tunneling
