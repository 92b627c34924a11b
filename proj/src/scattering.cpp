#include "tunneling/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "tunneling/errors.hpp"

namespace tunneling {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Complex kI{0.0, 1.0};

// integral of exp(c s) for s in [s1, s2], c real, without forming exp(|c| L)
double exp_integral(double c, double s1, double s2) {
  const double len = s2 - s1;
  if (len <= 0.0) return 0.0;
  if (c == 0.0) return len;
  if (c < 0.0) return std::exp(c * s1) * (std::expm1(c * len) / c);
  return std::exp(c * s2) * (-std::expm1(-c * len) / c);
}

// integral of exp(i beta s) for s in [0, len]
Complex oscillatory_integral(double beta, double len) {
  if (beta == 0.0) return {len, 0.0};
  const double x = beta * len;
  const double h = std::sin(0.5 * x);
  const Complex em1{-2.0 * h * h, std::sin(x)};  // exp(ix) - 1
  return em1 / (kI * beta);
}

Complex local_wavenumber(double energy, double height, const UnitsConfig& units) {
  return std::sqrt(2.0 * units.mass) * std::sqrt(Complex(energy - height, 0.0)) / units.hbar;
}

}  // namespace

Complex RegionWave::value(double z) const {
  return a * std::exp(kI * kappa * (z - ref_a)) + b * std::exp(-kI * kappa * (z - ref_b));
}

Complex RegionWave::derivative(double z) const {
  return kI * kappa *
         (a * std::exp(kI * kappa * (z - ref_a)) - b * std::exp(-kI * kappa * (z - ref_b)));
}

double RegionWave::density_integral(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  const double kr = kappa.real();
  const double ki = kappa.imag();
  const double forward = std::norm(a) * exp_integral(-2.0 * ki, lo - ref_a, hi - ref_a);
  const double backward = std::norm(b) * exp_integral(2.0 * ki, lo - ref_b, hi - ref_b);
  // u conj(v) = exp(2i kr (z - lo)) * exp(i kappa (lo - ref_a) + i conj(kappa) (lo - ref_b))
  const Complex anchor =
      std::exp(kI * kappa * (lo - ref_a) + kI * std::conj(kappa) * (lo - ref_b));
  const Complex cross = a * std::conj(b) * anchor * oscillatory_integral(2.0 * kr, hi - lo);
  return forward + backward + 2.0 * cross.real();
}

const RegionWave& ScatteringSolution::region_at(double z) const {
  // half-open convention: a breakpoint belongs to the region on its right
  auto it = std::find_if(regions.begin(), regions.end(),
                         [z](const RegionWave& r) { return z < r.right; });
  return it == regions.end() ? regions.back() : *it;
}

ScatteringSolution solve(const PiecewiseConstantPotential& potential, double energy,
                         const UnitsConfig& units) {
  units.validate();
  if (!std::isfinite(energy) || !(energy > 0.0))
    throw InvalidParameter("scattering energy must be positive and finite");

  const double k = local_wavenumber(energy, 0.0, units).real();
  ScatteringSolution sol{energy, k, {1.0, 0.0}, {0.0, 0.0}, {}, units};

  if (potential.is_free()) {
    sol.regions.push_back({-kInf, kInf, 0.0, Complex(k, 0.0), {1.0, 0.0}, {0.0, 0.0}, 0.0, 0.0});
    return sol;
  }

  const auto x = potential.breakpoints();
  const auto v = potential.heights();
  const std::size_t n = v.size();

  // regions[0] incident exterior, regions[1..n] interior, regions[n+1] transmitted exterior
  std::vector<RegionWave> regions(n + 2);
  regions[0] = {-kInf, x[0], 0.0, Complex(k, 0.0), {}, {}, x[0], x[0]};
  for (std::size_t r = 1; r <= n; ++r) {
    if (energy == v[r - 1])
      throw DegenerateEnergy("energy equals a region height; local wavenumber vanishes");
    regions[r] = {x[r - 1], x[r], v[r - 1], local_wavenumber(energy, v[r - 1], units),
                  {}, {}, x[r - 1], x[r]};
  }
  regions[n + 1] = {x[n], kInf, 0.0, Complex(k, 0.0), {1.0, 0.0}, {0.0, 0.0}, x[n], x[n]};

  // Propagate right to left. Coefficients are renormalised at every step and
  // the discarded magnitude is kept as a logarithm, so thick barriers never overflow.
  std::vector<double> log_scale(n + 2, 0.0);
  for (std::size_t i = n + 1; i-- > 0;) {
    const double xi = x[i];
    const RegionWave& right = regions[i + 1];
    RegionWave& left = regions[i];

    const Eigen::Vector2cd psi{right.value(xi), right.derivative(xi)};
    const Complex inv_ik = 1.0 / (kI * left.kappa);
    Eigen::Matrix2cd split;
    split << 0.5, 0.5 * inv_ik, 0.5, -0.5 * inv_ik;
    const Eigen::Vector2cd halves = split * psi;  // A e^{i kappa (xi - ref_a)}, B at xi

    // A = halves(0) * exp(-i kappa (xi - ref_a)); |exp(...)| = exp(Im(kappa) (xi - ref_a))
    const Complex phase_arg = -kI * left.kappa * (xi - left.ref_a);
    const double log_a = std::log(std::abs(halves(0))) + phase_arg.real();
    const double log_b = std::log(std::abs(halves(1)));
    const double scale = std::max(log_a, log_b);
    left.a = halves(0) * std::exp(phase_arg - scale);
    left.b = halves(1) * std::exp(-scale);
    log_scale[i] = log_scale[i + 1] + scale;
  }

  const Complex a0 = regions[0].a;
  const double l0 = log_scale[0];
  const Complex norm = std::exp(kI * k * x[0]) / a0;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const double rel = std::exp(log_scale[r] - l0);
    regions[r].a *= norm * rel;
    regions[r].b *= norm * rel;
  }
  sol.transmission = std::exp(kI * k * (x[0] - x[n]) - l0) / a0;
  sol.reflection = regions[0].b * std::exp(kI * k * x[0]);
  sol.regions = std::move(regions);
  return sol;
}

Complex wavefunction_at(const ScatteringSolution& solution, double z) {
  return solution.region_at(z).value(z);
}

double dwell_time(const ScatteringSolution& solution, const ClockRegion& region) {
  double integral = 0.0;
  for (const RegionWave& r : solution.regions) {
    const double lo = std::max(region.z1, r.left);
    const double hi = std::min(region.z2, r.right);
    integral += r.density_integral(lo, hi);
  }
  return solution.units.mass / (solution.units.hbar * solution.k) * integral;
}

double transmission_phase(const ScatteringSolution& solution) {
  if (solution.transmission == Complex(0.0, 0.0))
    throw UndefinedPhase(Channel::transmitted, "transmission amplitude is zero");
  return std::arg(solution.transmission);
}

double reflection_phase(const ScatteringSolution& solution) {
  if (solution.reflection == Complex(0.0, 0.0))
    throw UndefinedPhase(Channel::reflected, "reflection amplitude is zero");
  return std::arg(solution.reflection);
}

PhasePair phases(const ScatteringSolution& solution) {
  return {transmission_phase(solution), reflection_phase(solution)};
}

}  // namespace tunneling
