#include <algorithm>
#include <cmath>
#include <vector>

#include "tunneling/clock_rotor.hpp"
#include "tunneling/parallel.hpp"
#include "tunneling/scattering.hpp"

namespace tunneling {

double coupling_energy_gap(const PiecewiseConstantPotential& potential, const ClockRegion& region,
                           double energy) {
  double gap = energy;
  const auto x = potential.breakpoints();
  const auto v = potential.heights();
  for (std::size_t r = 0; r < v.size(); ++r)
    if (x[r] < region.z2 && x[r + 1] > region.z1) gap = std::min(gap, std::abs(energy - v[r]));
  return gap;
}

MeasurementResult measurement_simulation(const PiecewiseConstantPotential& potential,
                                         const ClockRegion& region, double energy,
                                         const ClockRotor<double>& rotor,
                                         const UnitsConfig& units) {
  units.validate();
  const int n = rotor.dimension();
  const int j = rotor.j();
  const double coupling = rotor.eigenvalue(j, units.hbar);
  const double gap = coupling_energy_gap(potential, region, energy);
  if (!(coupling < gap))
    throw CouplingTooStrong("largest clock eigenvalue j hbar omega must stay below min(E, |V - E|)");

  std::vector<Complex> t_amp(static_cast<std::size_t>(n));
  std::vector<Complex> r_amp(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const int m = static_cast<int>(idx) - j;
    const auto sol = solve(perturb(potential, region, rotor.eigenvalue(m, units.hbar)), energy, units);
    t_amp[idx] = sol.transmission;
    r_amp[idx] = sol.reflection;
  });

  // initial clock state v_0 has c_m = 1 / sqrt(N)
  const double c0 = 1.0 / std::sqrt(static_cast<double>(n));
  ClockState<double> transmitted(n), reflected(n);
  for (int i = 0; i < n; ++i) {
    transmitted(i) = c0 * t_amp[static_cast<std::size_t>(i)];
    reflected(i) = c0 * r_amp[static_cast<std::size_t>(i)];
  }

  MeasurementResult out{};
  out.transmitted_weight = transmitted.squaredNorm();
  out.reflected_weight = reflected.squaredNorm();
  out.coupling = coupling;
  out.energy_gap = gap;
  out.weak_coupling_warning = coupling > 0.1 * gap;
  out.transmitted = rotor.read_pointer(transmitted / std::sqrt(out.transmitted_weight));
  if (out.reflected_weight > 0.0)
    out.reflected = rotor.read_pointer(reflected / std::sqrt(out.reflected_weight));
  return out;
}

}  // namespace tunneling
