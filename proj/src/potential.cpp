#include "tunneling/potential.hpp"

#include <algorithm>
#include <cmath>

#include "tunneling/errors.hpp"

namespace tunneling {

ClockRegion::ClockRegion(double lo, double hi) : z1(lo), z2(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidParameter("clock region requires finite z1 < z2");
}

PiecewiseConstantPotential::PiecewiseConstantPotential(std::vector<double> breakpoints,
                                                       std::vector<double> heights)
    : breakpoints_(std::move(breakpoints)), heights_(std::move(heights)) {
  if (breakpoints_.empty() && heights_.empty()) return;
  if (breakpoints_.size() < 2 || heights_.size() + 1 != breakpoints_.size())
    throw InvalidParameter("need n+1 breakpoints for n regions");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]))
      throw InvalidParameter("breakpoints must be finite");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))
      throw InvalidParameter("breakpoints must be strictly increasing");
  }
  for (double h : heights_)
    if (!std::isfinite(h)) throw InvalidParameter("heights must be finite");
}

double PiecewiseConstantPotential::evaluate(double z) const {
  if (is_free() || z < breakpoints_.front() || z >= breakpoints_.back()) return 0.0;
  // first breakpoint strictly greater than z closes the region containing z
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), z);
  return heights_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

PiecewiseConstantPotential PiecewiseConstantPotential::mirrored() const {
  if (is_free()) return {};
  const double lo = breakpoints_.front();
  const double hi = breakpoints_.back();
  std::vector<double> bps(breakpoints_.rbegin(), breakpoints_.rend());
  for (double& x : bps) x = lo + hi - x;
  return {std::move(bps), std::vector<double>(heights_.rbegin(), heights_.rend())};
}

PiecewiseConstantPotential double_barrier(double v0, double a, double d) {
  if (!(v0 > 0.0) || !(a > 0.0) || !(d > 0.0))
    throw InvalidParameter("double barrier needs V0 > 0, a > 0, d > 0");
  return {{0.0, a, a + d, 2.0 * a + d}, {v0, 0.0, v0}};
}

PiecewiseConstantPotential perturb(const PiecewiseConstantPotential& potential,
                                   const ClockRegion& region, double strength) {
  std::vector<double> bps(potential.breakpoints().begin(), potential.breakpoints().end());
  bps.push_back(region.z1);
  bps.push_back(region.z2);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<double> heights;
  heights.reserve(bps.size() - 1);
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const bool inside = bps[i] >= region.z1 && bps[i + 1] <= region.z2;
    heights.push_back(potential.evaluate(bps[i]) + (inside ? strength : 0.0));
  }
  return {std::move(bps), std::move(heights)};
}

}  // namespace tunneling
