#ifndef TUNNELING_CLOCK_TIMES_HPP
#define TUNNELING_CLOCK_TIMES_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tunneling/errors.hpp"
#include "tunneling/potential.hpp"
#include "tunneling/units.hpp"

namespace tunneling {

/// Numerical realisation of the zero-coupling derivative of a channel phase.
struct DerivativeSettings {
  /// Initial perturbation step (energy). Empty: relative_step * coupling_energy_gap.
  std::optional<double> base_step;
  double relative_step = 1e-3;
  int levels = 3;                 ///< Richardson extrapolation levels over halved steps
  double relative_target = 1e-8;  ///< accept once the error estimate falls below this
  double failure_tolerance = 1e-5;
  int max_attempts = 4;           ///< each retry divides the base step by 16

  void validate() const;
};

/// Probability below which a channel is treated as closed and its time left undefined.
inline constexpr double kClosedChannel = 1e-12;

struct ClockTimes {
  std::optional<double> t_t;  ///< Peres transmission time
  std::optional<double> t_r;  ///< Peres reflection time
  double t_d;                 ///< dwell time from the density integral
  double prob_t;
  double prob_r;
  DerivativeDiagnostics diag_t;
  DerivativeDiagnostics diag_r;
};

/// -hbar d(phi)/dV at V = 0 for both channels, with V added over `region`.
ClockTimes clock_times(const PiecewiseConstantPotential& potential, const ClockRegion& region,
                       double energy, const UnitsConfig& units = {},
                       const DerivativeSettings& settings = {});

/// |t_D - (|T|^2 t_T + |R|^2 t_R)| / t_D. Closed channels contribute nothing.
double dwell_decomposition_residual(const ClockTimes& times);

double dwell_decomposition_check(const PiecewiseConstantPotential& potential,
                                 const ClockRegion& region, double energy,
                                 const UnitsConfig& units = {},
                                 const DerivativeSettings& settings = {});

struct ProfilePoint {
  double energy;
  std::optional<ClockTimes> times;  ///< empty when the point failed
  bool resonance = false;           ///< a channel closed or its phase was undefined
  std::string error;
};

/// clock_times over an energy grid; per-point failures are recorded, never thrown.
std::vector<ProfilePoint> time_vs_energy_profile(const PiecewiseConstantPotential& potential,
                                                 const ClockRegion& region,
                                                 std::span<const double> energies,
                                                 const UnitsConfig& units = {},
                                                 const DerivativeSettings& settings = {});

}  // namespace tunneling

#endif  // TUNNELING_CLOCK_TIMES_HPP
