#ifndef TUNNELING_DOUBLE_BARRIER_HPP
#define TUNNELING_DOUBLE_BARRIER_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "tunneling/errors.hpp"
#include "tunneling/units.hpp"

// Closed-form clock and dwell times of the symmetric double barrier
// V0 on (0, a) and (a + d, 2a + d), zero elsewhere, in the tunneling regime 0 < E < V0.
//
// Every quantity containing cosh(2qa) or sinh(2qa) is evaluated in a scaled
// form where the common factor exp(2qa) has been divided out:
//   cosh -> (1 + s^2) / 2,  sinh -> (1 - s^2) / 2,  1 -> s,  with s = exp(-2qa).
// alpha, beta and the gammas scale by s; h1, h2 and alpha^2 + beta^2 by s^2.
// All times are ratios of these, so they are unaffected and never overflow.

namespace tunneling::closed_form {

template <typename Scalar = double>
struct DoubleBarrierParams {
  Scalar v0;
  Scalar a;
  Scalar d;
  Scalar energy;
  UnitsConfig units{};

  Scalar mass() const { return static_cast<Scalar>(units.mass); }
  Scalar hbar() const { return static_cast<Scalar>(units.hbar); }
  Scalar k() const { using std::sqrt; return sqrt(2 * mass() * energy) / hbar(); }
  Scalar q() const { using std::sqrt; return sqrt(2 * mass() * (v0 - energy)) / hbar(); }

  void validate() const {
    using std::isfinite;
    units.validate();
    if (!isfinite(v0) || !isfinite(a) || !isfinite(d) || !isfinite(energy))
      throw InvalidParameter("double barrier parameters must be finite");
    if (!(a > 0) || !(d > 0)) throw InvalidParameter("barrier width and spacing must be positive");
    if (!(energy > 0) || !(energy < v0))
      throw InvalidParameter("tunneling regime requires 0 < E < V0");
  }
};

template <typename Scalar = double>
struct AuxiliaryValues {
  Scalar alpha0, beta0;
  Scalar gamma1, gamma2, gamma3, gamma4;
  Scalar h1, h2;
};

template <typename Scalar = double>
struct DoubleBarrierTimes {
  Scalar t_whole;
  Scalar t_between;
  Scalar t_barriers;
  Scalar t_opaque;
  /// Empty when the resonance denominator of the asymptotic form vanishes.
  std::optional<Scalar> t_between_asymptotic;
};

namespace detail {

template <typename Scalar>
struct Hyperbolics {
  Scalar s;   // exp(-2qa), stands in for 1
  Scalar ch;  // cosh(2qa) exp(-2qa)
  Scalar sh;  // sinh(2qa) exp(-2qa)
};

template <typename Scalar>
Hyperbolics<Scalar> scaled_hyperbolics(Scalar q, Scalar a) {
  using std::exp;
  const Scalar s = exp(-2 * q * a);
  return {s, (1 + s * s) / 2, (1 - s * s) / 2};
}

// alpha_m and beta_m for interior wavenumbers p (well) and q (barriers), exterior k.
template <typename Scalar>
std::pair<Scalar, Scalar> alpha_beta(Scalar k, Scalar p, Scalar q, Scalar a, Scalar d) {
  using std::cos;
  using std::sin;
  const auto hy = scaled_hyperbolics(q, a);
  const Scalar c = cos(p * d), sn = sin(p * d);
  const Scalar alpha = 2 * k * q * (2 * p * q * c * hy.ch + (q * q - p * p) * sn * hy.sh);
  const Scalar beta = -(k * k + q * q) * (p * p + q * q) * sn * hy.s +
                      2 * p * q * (q * q - k * k) * c * hy.sh +
                      (q * q - p * p) * (q * q - k * k) * sn * hy.ch;
  return {alpha, beta};
}

template <typename Scalar>
struct PerturbedWavenumbers {
  Scalar p;
  Scalar q;
};

template <typename Scalar>
PerturbedWavenumbers<Scalar> perturbed_wavenumbers(const DoubleBarrierParams<Scalar>& params,
                                                   Scalar vm) {
  using std::sqrt;
  const Scalar well = params.energy - vm;
  const Scalar barrier = params.v0 + vm - params.energy;
  if (!(well > 0) || !(barrier > 0))
    throw InvalidParameter("perturbation leaves the tunneling regime (need E - Vm > 0, V0 + Vm - E > 0)");
  const Scalar m2 = 2 * params.mass();
  return {sqrt(m2 * well) / params.hbar(), sqrt(m2 * barrier) / params.hbar()};
}

template <typename Scalar>
AuxiliaryValues<Scalar> scaled_auxiliaries(const DoubleBarrierParams<Scalar>& params) {
  using std::cos;
  using std::sin;
  const Scalar k = params.k(), q = params.q(), a = params.a, d = params.d;
  const auto hy = scaled_hyperbolics(q, a);
  const Scalar c = cos(k * d), sn = sin(k * d);
  const Scalar k2 = k * k, q2 = q * q;
  const Scalar sum = q2 + k2, diff = q2 - k2;

  const auto [alpha0, beta0] = alpha_beta(k, k, q, a, d);

  const Scalar gamma1 = -2 * k * sum * sn * hy.s - d * sum * sum * c * hy.s +
                        2 * q * diff * c * hy.sh - 2 * q * k * d * diff * sn * hy.sh -
                        2 * k * diff * sn * hy.ch + d * diff * diff * c * hy.ch;
  const Scalar gamma2 = 2 * k * q *
                        (2 * q * c * hy.ch - 2 * q * k * d * sn * hy.ch - 2 * k * sn * hy.sh +
                         d * diff * c * hy.sh);
  const Scalar gamma3 = -4 * q * sum * sn * hy.s + 2 * k * (3 * q2 - k2) * c * hy.sh +
                        4 * k * q * a * diff * c * hy.ch + 4 * q * diff * sn * hy.ch +
                        2 * a * diff * diff * sn * hy.sh;
  const Scalar gamma4 = 2 * k *
                        (4 * k * q * c * hy.ch + (3 * q2 - k2) * sn * hy.sh +
                         4 * k * q2 * a * c * hy.sh + 2 * q * a * diff * sn * hy.ch);

  // h1 expanded in powers of s: the s^0 terms cancel identically, so the
  // product form would leave only rounding noise once s is small.
  const Scalar kd = k2 - q2;
  const Scalar pre = 2 * k * q2;
  const Scalar c1 = -pre * sum * (2 * k * q * sn * sn + kd * c * sn + d * k * sum);
  const Scalar c2 = 2 * pre * kd * (sum * c * sn + d * k * kd);
  const Scalar c3 = -pre * sum * (-2 * k * q * sn * sn + kd * c * sn + d * k * sum);
  const Scalar h1 = hy.s * (c1 + hy.s * (c2 + hy.s * c3));

  return {alpha0, beta0, gamma1, gamma2, gamma3, gamma4, h1, alpha0 * gamma3 - beta0 * gamma4};
}

}  // namespace detail

/// Transmission amplitude when the whole region (0, 2a + d) is raised by vm.
template <typename Scalar>
std::complex<Scalar> perturbed_amplitude(const DoubleBarrierParams<Scalar>& params, Scalar vm) {
  using std::cos;
  using std::sin;
  using C = std::complex<Scalar>;
  params.validate();
  const auto [p, q] = detail::perturbed_wavenumbers(params, vm);
  const Scalar k = params.k(), a = params.a, d = params.d;
  const auto hy = detail::scaled_hyperbolics(q, a);
  const Scalar c = cos(p * d), sn = sin(p * d);
  const C i{0, 1};
  const C kq = C(k, 0) - i * q;
  const C qk = C(q, 0) - i * k;
  // denominator divided by exp(2qa)
  const C denom = Scalar(2) * sn * (k * k + q * q) * (p * p + q * q) * hy.s -
                  (kq * kq * (2 * p * q * c + (p * p - q * q) * sn) * (hy.s * hy.s) +
                   qk * qk * (2 * p * q * c - (p * p - q * q) * sn));
  return Scalar(8) * i * (k * p * q * q * hy.s) * std::exp(-i * ((2 * a + d) * k)) / denom;
}

/// Transmission phase -(2a + d) k - atan2(beta_m, alpha_m), continuous in vm through vm = 0.
template <typename Scalar>
Scalar perturbed_phase(const DoubleBarrierParams<Scalar>& params, Scalar vm) {
  using std::atan2;
  using std::remainder;
  params.validate();
  const Scalar k = params.k();
  const auto [p, q] = detail::perturbed_wavenumbers(params, vm);
  const auto [alpha, beta] = detail::alpha_beta(k, p, q, params.a, params.d);
  if (alpha == 0 && beta == 0) throw UndefinedPhase(Channel::transmitted, "alpha_m = beta_m = 0");
  const auto [alpha0, beta0] = detail::alpha_beta(k, k, params.q(), params.a, params.d);
  const Scalar theta0 = atan2(beta0, alpha0);
  const Scalar theta = theta0 + remainder(atan2(beta, alpha) - theta0, 2 * std::numbers::pi_v<Scalar>);
  return -(2 * params.a + params.d) * k - theta;
}

/// alpha0, beta0, gamma1..gamma4, h1, h2 at their true (unscaled) magnitude.
/// These overflow once 2qa approaches the exponent range; the times never use them.
template <typename Scalar>
AuxiliaryValues<Scalar> auxiliaries(const DoubleBarrierParams<Scalar>& params) {
  using std::exp;
  params.validate();
  auto v = detail::scaled_auxiliaries(params);
  const Scalar grow = exp(2 * params.q() * params.a);
  for (Scalar* x : {&v.alpha0, &v.beta0, &v.gamma1, &v.gamma2, &v.gamma3, &v.gamma4}) *x *= grow;
  v.h1 *= grow * grow;
  v.h2 *= grow * grow;
  return v;
}

/// |(k^2 - q^2) sin(kd) - 2kq cos(kd)| / (k^2 + q^2), in [0, 1]. Zero on the
/// resonances of the thick-barrier limit, one halfway between them.
template <typename Scalar>
Scalar resonance_proximity(const DoubleBarrierParams<Scalar>& params) {
  using std::abs;
  using std::cos;
  using std::sin;
  const Scalar k = params.k(), q = params.q(), d = params.d;
  return abs((k * k - q * q) * sin(k * d) - 2 * k * q * cos(k * d)) / (k * k + q * q);
}

template <typename Scalar>
DoubleBarrierTimes<Scalar> times(const DoubleBarrierParams<Scalar>& params) {
  using std::cos;
  using std::exp;
  using std::sin;
  params.validate();
  const Scalar mu = params.mass(), hbar = params.hbar();
  const Scalar k = params.k(), q = params.q(), a = params.a, d = params.d;
  const auto aux = detail::scaled_auxiliaries(params);
  const Scalar den = aux.alpha0 * aux.alpha0 + aux.beta0 * aux.beta0;

  DoubleBarrierTimes<Scalar> t{};
  t.t_whole = -(mu / (hbar * den)) * (aux.h1 / k - aux.h2 / q);
  t.t_between = -(mu / (hbar * k)) * aux.h1 / den;
  t.t_barriers = (mu / (hbar * q)) * aux.h2 / den;
  t.t_opaque = (mu / (hbar * q * q)) * (2 * k * q / (k * k + q * q));

  const Scalar sum = k * k + q * q;
  const Scalar res = (k * k - q * q) * sin(k * d) - 2 * k * q * cos(k * d);
  if (resonance_proximity(params) >= Scalar(1e-6)) {
    const Scalar sk = sin(k * d);
    const Scalar num = 2 * k * d * sum + 4 * k * q * sk * sk + (k * k - q * q) * sin(2 * k * d);
    t.t_between_asymptotic = (4 * mu * q * q / hbar) * exp(-2 * q * a) / sum * num / (res * res);
  }
  return t;
}

/// |t_whole - t_opaque| / t_opaque.
template <typename Scalar>
Scalar opaque_limit_gap(const DoubleBarrierParams<Scalar>& params) {
  using std::abs;
  const auto t = times(params);
  return abs(t.t_whole - t.t_opaque) / t.t_opaque;
}

/// |t_between - t_between_asymptotic| / t_between, for qa > 2.
template <typename Scalar>
Scalar asymptotic_agreement(const DoubleBarrierParams<Scalar>& params) {
  using std::abs;
  params.validate();
  if (!(params.q() * params.a > 2))
    throw InvalidParameter("asymptotic comparison needs qa > 2");
  const auto t = times(params);
  if (t.t_between < Scalar(1e-300))
    throw UnderflowError("t_between underflows; regime too opaque to compare");
  if (!t.t_between_asymptotic)
    throw InvalidParameter("asymptotic form is singular at this spacing (resonance)");
  return abs(t.t_between - *t.t_between_asymptotic) / t.t_between;
}

}  // namespace tunneling::closed_form

#endif  // TUNNELING_DOUBLE_BARRIER_HPP
