#ifndef TUNNELING_SCATTERING_HPP
#define TUNNELING_SCATTERING_HPP

#include <complex>
#include <vector>

#include "tunneling/potential.hpp"
#include "tunneling/units.hpp"

namespace tunneling {

using Complex = std::complex<double>;

/// Stationary wave inside one region of constant height.
///
/// psi(z) = A exp(i kappa (z - ref_a)) + B exp(-i kappa (z - ref_b)).
/// kappa is taken with Im(kappa) >= 0, so in a classically forbidden region
/// (kappa = i q) the references are the left and right edges and both terms
/// stay bounded by |A|, |B| across the region. Exterior regions use the outer
/// breakpoint for both references.
struct RegionWave {
  double left;   ///< -inf for the incident side
  double right;  ///< +inf for the transmitted side
  double height;
  Complex kappa;
  Complex a;
  Complex b;
  double ref_a;
  double ref_b;

  Complex value(double z) const;
  Complex derivative(double z) const;
  /// Integral of |psi|^2 over [lo, hi], which must lie inside the region.
  double density_integral(double lo, double hi) const;
};

/// Transfer-matrix solution at a fixed energy for a wave of unit amplitude
/// incident from the left: psi = e^{ikz} + R e^{-ikz} on the left and
/// psi = T e^{ikz} on the right.
struct ScatteringSolution {
  double energy;
  double k;
  Complex transmission;
  Complex reflection;
  std::vector<RegionWave> regions;  ///< incident exterior, interior regions, transmitted exterior
  UnitsConfig units;

  double transmission_probability() const { return std::norm(transmission); }
  double reflection_probability() const { return std::norm(reflection); }
  const RegionWave& region_at(double z) const;
};

struct PhasePair {
  double phi_t;
  double phi_r;
};

ScatteringSolution solve(const PiecewiseConstantPotential& potential, double energy,
                         const UnitsConfig& units = {});

Complex wavefunction_at(const ScatteringSolution& solution, double z);

/// (mu / hbar k) * integral of |psi|^2 over the region.
double dwell_time(const ScatteringSolution& solution, const ClockRegion& region);

double transmission_phase(const ScatteringSolution& solution);
double reflection_phase(const ScatteringSolution& solution);
PhasePair phases(const ScatteringSolution& solution);

}  // namespace tunneling

#endif  // TUNNELING_SCATTERING_HPP
