#include "tunneling/clock_times.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tunneling/clock_rotor.hpp"
#include "tunneling/parallel.hpp"
#include "tunneling/scattering.hpp"

namespace tunneling {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double channel_phase(const ScatteringSolution& sol, Channel channel) {
  const Complex amp = channel == Channel::transmitted ? sol.transmission : sol.reflection;
  if (amp == Complex(0.0, 0.0))
    throw ResonanceError(channel, std::string(to_string(channel)) +
                                      " amplitude vanishes under perturbation; phase undefined");
  return std::arg(amp);
}

struct PhaseSamples {
  double plus_t, minus_t, plus_r, minus_r;
};

class PhaseDifferencer {
 public:
  PhaseDifferencer(const PiecewiseConstantPotential& potential, const ClockRegion& region,
                   double energy, const UnitsConfig& units)
      : potential_(potential), region_(region), energy_(energy), units_(units) {}

  PhaseSamples sample(double step) const {
    const auto up = solve(perturb(potential_, region_, step), energy_, units_);
    const auto down = solve(perturb(potential_, region_, -step), energy_, units_);
    PhaseSamples s{};
    s.plus_t = channel_phase(up, Channel::transmitted);
    s.minus_t = channel_phase(down, Channel::transmitted);
    if (want_reflection) {
      s.plus_r = channel_phase(up, Channel::reflected);
      s.minus_r = channel_phase(down, Channel::reflected);
    }
    return s;
  }

  bool want_reflection = true;

 private:
  const PiecewiseConstantPotential& potential_;
  ClockRegion region_;
  double energy_;
  UnitsConfig units_;
};

// nearest-branch difference in (-pi, pi]
double wrapped(double diff) {
  double w = std::remainder(diff, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

struct Extrapolated {
  double t_t = 0, err_t = 0, t_r = 0, err_r = 0, noise_t = 0, noise_r = 0, finest = 0;
};

// Richardson table over steps h, h/2, ..., h/2^levels for both channels at once.
Extrapolated extrapolate(const PhaseDifferencer& diff, double step, int levels, double hbar) {
  const auto rows = static_cast<std::size_t>(levels + 1);
  std::vector<std::vector<double>> tab_t(rows), tab_r(rows);
  double h = step;
  for (std::size_t i = 0; i < rows; ++i, h *= 0.5) {
    const auto s = diff.sample(h);
    const double dt = wrapped(s.plus_t - s.minus_t);
    const double dr = diff.want_reflection ? wrapped(s.plus_r - s.minus_r) : 0.0;
    if (std::abs(dt) >= 0.5 * kPi || std::abs(dr) >= 0.5 * kPi) return {.finest = -1.0};
    tab_t[i].push_back(-hbar * dt / (2.0 * h));
    tab_r[i].push_back(-hbar * dr / (2.0 * h));
    double factor = 4.0;
    for (std::size_t m = 1; m <= i; ++m, factor *= 4.0) {
      tab_t[i].push_back(tab_t[i][m - 1] + (tab_t[i][m - 1] - tab_t[i - 1][m - 1]) / (factor - 1.0));
      tab_r[i].push_back(tab_r[i][m - 1] + (tab_r[i][m - 1] - tab_r[i - 1][m - 1]) / (factor - 1.0));
    }
  }
  const std::size_t last = rows - 1;
  const double finest = step / std::ldexp(1.0, levels);
  // rounding floor of one central difference: a few ulps of pi over 2h
  const double noise = 8.0 * kEps * kPi * hbar / (2.0 * finest);
  return {tab_t[last][last],
          std::abs(tab_t[last][last] - tab_t[last - 1][last - 1]),
          tab_r[last][last],
          std::abs(tab_r[last][last] - tab_r[last - 1][last - 1]),
          noise,
          noise,
          finest};
}

}  // namespace

void DerivativeSettings::validate() const {
  if (base_step && !(*base_step > 0.0)) throw InvalidParameter("base step must be positive");
  if (!(relative_step > 0.0 && relative_step < 1.0))
    throw InvalidParameter("relative step must lie in (0, 1)");
  if (levels < 1) throw InvalidParameter("at least one Richardson level is required");
  if (max_attempts < 1) throw InvalidParameter("at least one attempt is required");
}

ClockTimes clock_times(const PiecewiseConstantPotential& potential, const ClockRegion& region,
                       double energy, const UnitsConfig& units,
                       const DerivativeSettings& settings) {
  settings.validate();
  const auto base = solve(potential, energy, units);
  ClockTimes out{};
  out.prob_t = base.transmission_probability();
  out.prob_r = base.reflection_probability();
  out.t_d = dwell_time(base, region);

  const bool open_t = out.prob_t >= kClosedChannel;
  const bool open_r = out.prob_r >= kClosedChannel;
  if (!open_t && !open_r) return out;

  PhaseDifferencer diff(potential, region, energy, units);
  diff.want_reflection = open_r;

  double step = settings.base_step.value_or(settings.relative_step *
                                            coupling_energy_gap(potential, region, energy));
  std::optional<Extrapolated> best;
  auto score = [&](const Extrapolated& e) {
    double s = 0.0;
    if (open_t) s = std::max(s, e.err_t / std::max(std::abs(e.t_t), e.noise_t));
    if (open_r) s = std::max(s, e.err_r / std::max(std::abs(e.t_r), e.noise_r));
    return s;
  };
  int attempts = 0;
  for (int attempt = 0; attempt < settings.max_attempts; ++attempt, step /= 16.0) {
    ++attempts;
    Extrapolated e = extrapolate(diff, step, settings.levels, units.hbar);
    if (e.finest < 0.0) {  // phase moved by more than pi/2: step too coarse
      continue;
    }
    if (!best || score(e) < score(*best)) best = e;
    auto converged = [&](double value, double err, double noise) {
      return err <= std::max(settings.relative_target * std::abs(value), 10.0 * noise);
    };
    if ((!open_t || converged(e.t_t, e.err_t, e.noise_t)) &&
        (!open_r || converged(e.t_r, e.err_r, e.noise_r)))
      break;
  }

  if (!best)
    throw DerivativeFailure("phase changes by more than pi/2 at every trial step",
                            {0.0, std::numeric_limits<double>::infinity(), step, attempts});

  auto check = [&](double value, double err, double noise, const char* channel) {
    DerivativeDiagnostics d{value, err, best->finest, attempts};
    if (!(err <= std::max(settings.failure_tolerance * std::abs(value), 100.0 * noise)))
      throw DerivativeFailure(std::string("Richardson extrapolation did not converge for the ") +
                                  channel + " phase",
                              d);
    return d;
  };
  if (open_t) {
    out.diag_t = check(best->t_t, best->err_t, best->noise_t, "transmitted");
    out.t_t = best->t_t;
  }
  if (open_r) {
    out.diag_r = check(best->t_r, best->err_r, best->noise_r, "reflected");
    out.t_r = best->t_r;
  }
  return out;
}

double dwell_decomposition_residual(const ClockTimes& times) {
  double weighted = 0.0;
  if (times.t_t) weighted += times.prob_t * *times.t_t;
  if (times.t_r) weighted += times.prob_r * *times.t_r;
  return std::abs(times.t_d - weighted) / times.t_d;
}

double dwell_decomposition_check(const PiecewiseConstantPotential& potential,
                                 const ClockRegion& region, double energy,
                                 const UnitsConfig& units, const DerivativeSettings& settings) {
  return dwell_decomposition_residual(clock_times(potential, region, energy, units, settings));
}

std::vector<ProfilePoint> time_vs_energy_profile(const PiecewiseConstantPotential& potential,
                                                 const ClockRegion& region,
                                                 std::span<const double> energies,
                                                 const UnitsConfig& units,
                                                 const DerivativeSettings& settings) {
  std::vector<ProfilePoint> out(energies.size());
  parallel_for(energies.size(), [&](std::size_t i) {
    ProfilePoint& p = out[i];
    p.energy = energies[i];
    try {
      p.times = clock_times(potential, region, energies[i], units, settings);
      p.resonance = !p.times->t_t || !p.times->t_r;
    } catch (const ResonanceError& e) {
      p.resonance = true;
      p.error = e.what();
    } catch (const Error& e) {
      p.error = e.what();
    }
  });
  return out;
}

}  // namespace tunneling
