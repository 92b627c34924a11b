#ifndef TUNNELING_POTENTIAL_HPP
#define TUNNELING_POTENTIAL_HPP

#include <span>
#include <vector>

namespace tunneling {

/// Interval (z1, z2) in which the clock runs.
struct ClockRegion {
  double z1;
  double z2;

  ClockRegion(double lo, double hi);
  double width() const { return z2 - z1; }
};

/// One-dimensional potential that is constant on [x_i, x_{i+1}) and zero outside
/// [x_0, x_n]. An empty breakpoint list is the free (V = 0) potential.
class PiecewiseConstantPotential {
 public:
  PiecewiseConstantPotential() = default;
  PiecewiseConstantPotential(std::vector<double> breakpoints, std::vector<double> heights);

  static PiecewiseConstantPotential free() { return {}; }

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> heights() const { return heights_; }
  std::size_t region_count() const { return heights_.size(); }
  bool is_free() const { return heights_.empty(); }

  /// Height on [x_i, x_{i+1}); zero outside the support.
  double evaluate(double z) const;

  /// Same potential mirrored about the centre of its support.
  PiecewiseConstantPotential mirrored() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> heights_;
};

/// Two barriers of height v0 and width a separated by a gap d, starting at z = 0.
PiecewiseConstantPotential double_barrier(double v0, double a, double d);

/// V(z) + strength inside the region, V(z) outside.
PiecewiseConstantPotential perturb(const PiecewiseConstantPotential& potential,
                                   const ClockRegion& region, double strength);

inline double evaluate(const PiecewiseConstantPotential& potential, double z) {
  return potential.evaluate(z);
}

}  // namespace tunneling

#endif  // TUNNELING_POTENTIAL_HPP
