#ifndef TUNNELING_CLOCK_ROTOR_HPP
#define TUNNELING_CLOCK_ROTOR_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "tunneling/errors.hpp"
#include "tunneling/potential.hpp"
#include "tunneling/units.hpp"

namespace tunneling {

/// Amplitudes over the rotor energy eigenstates u_m, index m + j for m in [-j, j].
template <typename Scalar = double>
using ClockState = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
struct PointerReading {
  Scalar t_read;  ///< in [0, N tau)
  Scalar spread;  ///< circular standard deviation of the pointer, in time units
};

/// N-level quantum rotor with Hamiltonian omega J, omega = 2 pi / (N tau).
template <typename Scalar = double>
class ClockRotor {
 public:
  using State = ClockState<Scalar>;
  using C = std::complex<Scalar>;

  ClockRotor(int n, Scalar tau) : n_(n), tau_(tau) {
    if (n < 3 || n % 2 == 0) throw InvalidParameter("rotor dimension N must be odd and >= 3");
    if (!(tau > 0) || !std::isfinite(tau)) throw InvalidParameter("clock resolution tau must be positive");
    omega_ = 2 * std::numbers::pi_v<Scalar> / (static_cast<Scalar>(n) * tau);
  }

  int dimension() const { return n_; }
  int j() const { return (n_ - 1) / 2; }
  Scalar tau() const { return tau_; }
  Scalar omega() const { return omega_; }
  Scalar period() const { return static_cast<Scalar>(n_) * tau_; }

  /// Energy m hbar omega of the eigenstate u_m.
  Scalar eigenvalue(int m, Scalar hbar = 1) const { return static_cast<Scalar>(m) * hbar * omega_; }

  /// Pointer state v_k: c_m = exp(-i m omega k tau) / sqrt(N).
  State basis_state(int k) const {
    if (k < 0 || k >= n_) throw InvalidParameter("basis index k must lie in [0, N)");
    State s(n_);
    const Scalar norm = 1 / std::sqrt(static_cast<Scalar>(n_));
    for (int m = -j(); m <= j(); ++m)
      s(m + j()) = std::polar(norm, -static_cast<Scalar>(m) * omega_ * static_cast<Scalar>(k) * tau_);
    return s;
  }

  /// Free evolution exp(-i H_c t / hbar): c_m -> exp(-i m omega t) c_m.
  State evolve(const State& state, Scalar t) const {
    State out(state.size());
    for (int m = -j(); m <= j(); ++m)
      out(m + j()) = std::polar(Scalar(1), -static_cast<Scalar>(m) * omega_ * t) * state(m + j());
    return out;
  }

  /// Expectation of the time operator sum_k k tau P_k.
  Scalar time_expectation(const State& state) const {
    Scalar t = 0;
    for (int k = 0; k < n_; ++k) t += static_cast<Scalar>(k) * tau_ * std::norm(basis_state(k).dot(state));
    return t / state.squaredNorm();
  }

  /// Angular density |sum_m c_m e^{i m theta}|^2 / (2 pi).
  Scalar angular_density(const State& state, Scalar theta) const {
    // Horner in z = e^{i theta}; the overall z^{-j} has unit modulus
    const C z = std::polar(Scalar(1), theta);
    C acc{0, 0};
    for (int i = n_ - 1; i >= 0; --i) acc = acc * z + state(i);
    return std::norm(acc) / (2 * std::numbers::pi_v<Scalar>);
  }

  /// Circular mean of the angular density sampled on 16 N points, converted to time.
  PointerReading<Scalar> read_pointer(const State& state) const {
    if (!(state.squaredNorm() > 0)) throw UndefinedReading("pointer state has zero norm");
    const int samples = 16 * n_;
    const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
    C moment{0, 0};
    Scalar mass = 0;
    for (int i = 0; i < samples; ++i) {
      const Scalar theta = two_pi * static_cast<Scalar>(i) / static_cast<Scalar>(samples);
      const Scalar rho = angular_density(state, theta);
      moment += rho * std::polar(Scalar(1), theta);
      mass += rho;
    }
    const Scalar resultant = std::abs(moment) / mass;
    if (resultant < Scalar(1e-12)) throw UndefinedReading("uniform pointer density has no circular mean");
    Scalar angle = std::arg(moment);
    if (angle < 0) angle += two_pi;
    Scalar t = angle / omega_;
    if (t >= period()) t -= period();
    using std::log;
    using std::sqrt;
    return {t, sqrt(-2 * log(resultant)) / omega_};
  }

 private:
  int n_;
  Scalar tau_;
  Scalar omega_;
};

/// Magnitude of the inner product, so global phases are ignored.
template <typename Scalar>
Scalar overlap(const ClockState<Scalar>& x, const ClockState<Scalar>& y) {
  return std::abs(x.dot(y));
}

struct MeasurementResult {
  PointerReading<double> transmitted;
  std::optional<PointerReading<double>> reflected;  ///< empty when no reflection occurs
  double transmitted_weight;
  double reflected_weight;
  double coupling;    ///< j hbar omega, the largest clock eigenvalue
  double energy_gap;  ///< smallest |E - V| the coupling must stay below
  bool weak_coupling_warning;  ///< coupling above 10% of energy_gap
};

/// Couples a v_0 clock to the particle inside `region`: every rotor mode m scatters
/// off V + m hbar omega P(z). Transmitted and reflected conditional clock states
/// (amplitudes T^(m)/sqrt(N), R^(m)/sqrt(N)) are read with read_pointer.
MeasurementResult measurement_simulation(const PiecewiseConstantPotential& potential,
                                         const ClockRegion& region, double energy,
                                         const ClockRotor<double>& rotor,
                                         const UnitsConfig& units = {});

/// Smallest |E - V| over E itself and the regions the clock region overlaps.
double coupling_energy_gap(const PiecewiseConstantPotential& potential, const ClockRegion& region,
                           double energy);

}  // namespace tunneling

#endif  // TUNNELING_CLOCK_ROTOR_HPP
