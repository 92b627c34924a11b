#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tunneling/double_barrier.hpp"
#include "tunneling/scattering.hpp"

using namespace tunneling;
using closed_form::DoubleBarrierParams;

namespace {

DoubleBarrierParams<double> params(double e, double a, double d) { return {0.018, a, d, e}; }

// 50-digit reference values, mu = hbar = 1, V0 = 0.018
struct Reference {
  double e, a, d;
  double t_whole, t_between, t_barriers, t2, arg_t;
};

const Reference kReference[] = {
    {0.01, 10, 10, 1043.8196903428592, 662.35808352072886, 381.4616068221303,
     0.86926095390020845, -2.9516442274451933},
    {0.005, 5, 50, 1899.6512427239352, 1758.2075585909234, 141.44368413301186,
     0.99176125377561637, -1.7038283942153908},
    {0.015, 30, 5, 5040.0888532852068, 1647.2273338694106, 3392.8615194157962,
     0.32608322068142737, -1.7210251775115811},
    {0.01, 60, 10, 62.168344010393166, 0.029653857326878844, 62.138690153066287,
     1.248052625870087e-10, 0.57613172873694752},
    {0.01, 60, 20, 62.112926922458135, 7.6070289894068274e-5, 62.112850852168241,
     2.6596718102527625e-13, 2.3034995563774863},
};

// alpha(p, q), beta(p, q) written out unscaled, exterior wavenumber k fixed
struct AlphaBeta {
  long double k, a, d;
  long double alpha(long double p, long double q) const {
    return 2 * k * q *
           (2 * p * q * std::cos(p * d) * std::cosh(2 * q * a) +
            (q * q - p * p) * std::sin(p * d) * std::sinh(2 * q * a));
  }
  long double beta(long double p, long double q) const {
    return -(k * k + q * q) * (p * p + q * q) * std::sin(p * d) +
           2 * p * q * (q * q - k * k) * std::cos(p * d) * std::sinh(2 * q * a) +
           (q * q - p * p) * (q * q - k * k) * std::sin(p * d) * std::cosh(2 * q * a);
  }
};

double resonant_spacing(double e, int n) {
  const auto p = params(e, 10, 1);
  const double k = p.k(), q = p.q();
  double phase = std::atan2(2 * k * q, k * k - q * q);
  if (phase < 0) phase += std::numbers::pi;
  return (phase + n * std::numbers::pi) / k;
}

}  // namespace

TEST_CASE("times against high-precision references") {
  for (const auto& r : kReference) {
    INFO("E = " << r.e << " a = " << r.a << " d = " << r.d);
    const auto p = params(r.e, r.a, r.d);
    const auto t = closed_form::times(p);
    CHECK(t.t_whole == doctest::Approx(r.t_whole).epsilon(1e-10));
    CHECK(t.t_between == doctest::Approx(r.t_between).epsilon(1e-9));
    CHECK(t.t_barriers == doctest::Approx(r.t_barriers).epsilon(1e-10));
    const auto amp = closed_form::perturbed_amplitude(p, 0.0);
    CHECK(std::norm(amp) == doctest::Approx(r.t2).epsilon(1e-11));
    CHECK(std::abs(std::remainder(std::arg(amp) - r.arg_t, 2 * std::numbers::pi)) < 1e-11);
    CHECK(std::abs(std::remainder(closed_form::perturbed_phase(p, 0.0) - r.arg_t,
                                  2 * std::numbers::pi)) < 1e-11);
  }
  CHECK(closed_form::times(params(0.01, 10, 10)).t_opaque ==
        doctest::Approx(62.112999374994158).epsilon(1e-14));
}

TEST_CASE("wholly transmitted amplitude matches the transfer matrix") {
  for (const auto& r : kReference) {
    const auto p = params(r.e, r.a, r.d);
    const auto v = double_barrier(0.018, r.a, r.d);
    const ClockRegion whole(0, 2 * r.a + r.d);
    for (double vm : {0.0, 1e-8, -3e-4}) {
      const Complex engine = solve(perturb(v, whole, vm), r.e).transmission;
      const Complex closed = closed_form::perturbed_amplitude(p, vm);
      CHECK(std::abs(closed - engine) <= 1e-11 * std::abs(engine));
    }
  }
}

TEST_CASE("gammas are the partial derivatives of alpha and beta") {
  for (double d : {3.0, 10.0, 37.0}) {
    const auto p = params(0.007, 2.0, d);
    const auto aux = closed_form::auxiliaries(p);
    const AlphaBeta ab{p.k(), p.a, p.d};
    const long double k = p.k(), q = p.q(), h = 1e-6L;
    const long double g1 = (ab.beta(k + h, q) - ab.beta(k - h, q)) / (2 * h);
    const long double g2 = (ab.alpha(k + h, q) - ab.alpha(k - h, q)) / (2 * h);
    const long double g3 = (ab.beta(k, q + h) - ab.beta(k, q - h)) / (2 * h);
    const long double g4 = (ab.alpha(k, q + h) - ab.alpha(k, q - h)) / (2 * h);
    const double scale = std::abs(static_cast<double>(ab.alpha(k, q))) / k;
    CHECK(aux.alpha0 == doctest::Approx(static_cast<double>(ab.alpha(k, q))).epsilon(1e-12));
    CHECK(aux.beta0 == doctest::Approx(static_cast<double>(ab.beta(k, q))).epsilon(1e-12));
    CHECK(std::abs(aux.gamma1 - g1) < 1e-7 * scale * d);
    CHECK(std::abs(aux.gamma2 - g2) < 1e-7 * scale * d);
    CHECK(std::abs(aux.gamma3 - g3) < 1e-7 * scale * d);
    CHECK(std::abs(aux.gamma4 - g4) < 1e-7 * scale * d);
    CHECK(aux.h1 == doctest::Approx(aux.alpha0 * aux.gamma1 - aux.beta0 * aux.gamma2));
    CHECK(aux.h2 == doctest::Approx(aux.alpha0 * aux.gamma3 - aux.beta0 * aux.gamma4));
  }
}

TEST_CASE("merged barriers approach a single barrier of width 2a") {
  const double e = 0.01, a = 7;
  const auto p = params(e, a, 1e-10);
  const double k = p.k(), q = p.q(), len = 2 * a;
  const std::complex<double> single =
      std::exp(std::complex<double>(0, -k * len)) /
      std::complex<double>(std::cosh(q * len), (q * q - k * k) / (2 * k * q) * std::sinh(q * len));
  CHECK(std::abs(std::remainder(closed_form::perturbed_phase(p, 0.0) - std::arg(single),
                                2 * std::numbers::pi)) < 1e-8);
  CHECK(std::norm(closed_form::perturbed_amplitude(p, 0.0)) ==
        doctest::Approx(std::norm(single)).epsilon(1e-8));
}

TEST_CASE("time identities") {
  for (double e : {0.002, 0.01, 0.016})
    for (double a : {1.0, 10.0, 45.0})
      for (double d : {0.5, 10.0, 77.0}) {
        const auto p = params(e, a, d);
        CHECK(p.k() * p.k() + p.q() * p.q() == doctest::Approx(2 * 0.018).epsilon(1e-14));
        const auto t = closed_form::times(p);
        CHECK(t.t_whole > 0);
        CHECK(t.t_between > 0);
        CHECK(t.t_barriers > 0);
        CHECK(std::abs(t.t_whole - t.t_between - t.t_barriers) <= 1e-12 * t.t_whole);

        const auto s = solve(double_barrier(0.018, a, d), e);
        CHECK(dwell_time(s, {a, a + d}) == doctest::Approx(t.t_between).epsilon(1e-10));
        CHECK(dwell_time(s, {0, a}) + dwell_time(s, {a + d, 2 * a + d}) ==
              doctest::Approx(t.t_barriers).epsilon(1e-10));
      }
}

TEST_CASE("scalar type is a template parameter") {
  const DoubleBarrierParams<long double> pl{0.018L, 10.0L, 10.0L, 0.01L};
  const auto tl = closed_form::times(pl);
  CHECK(static_cast<double>(tl.t_whole) == doctest::Approx(1043.8196903428592).epsilon(1e-13));
  const DoubleBarrierParams<float> pf{0.018f, 10.0f, 10.0f, 0.01f};
  CHECK(closed_form::times(pf).t_whole == doctest::Approx(1043.82).epsilon(1e-3));
}

TEST_CASE("opaque limit") {
  const double g10 = closed_form::opaque_limit_gap(params(0.01, 10, 20));
  const double g30 = closed_form::opaque_limit_gap(params(0.01, 30, 20));
  const double g60 = closed_form::opaque_limit_gap(params(0.01, 60, 20));
  CHECK(g10 == doctest::Approx(0.25256915362158528).epsilon(1e-8));
  CHECK(g30 == doctest::Approx(1.0626570632107885e-4).epsilon(1e-6));
  CHECK(g60 == doctest::Approx(1.1664633289651084e-6).epsilon(1e-4));
  CHECK(g10 > g30);
  CHECK(g30 > g60);
  CHECK(g60 < 1e-5);
  // near a resonance of the well the approach is much slower
  CHECK(closed_form::opaque_limit_gap(params(0.01, 60, 10)) ==
        doctest::Approx(8.9103144198328006e-4).epsilon(1e-6));
}

TEST_CASE("t_between is exponentially suppressed in a") {
  const double e = 0.01, d = 20;
  const double q = params(e, 1, d).q();
  double prev = closed_form::times(params(e, 20, d)).t_between;
  for (double a = 25; a <= 60; a += 5) {
    const double cur = closed_form::times(params(e, a, d)).t_between;
    CHECK(cur < prev);
    CHECK(std::log(cur / prev) / 5 == doctest::Approx(-2 * q).epsilon(0.01));
    prev = cur;
  }
  // far into the opaque regime t_between keeps following the asymptotic form
  for (double a : {200.0, 1000.0, 2500.0})
    CHECK(closed_form::asymptotic_agreement(params(e, a, d)) < 1e-12);
}

TEST_CASE("asymptotic t_between") {
  const double dev30 = closed_form::asymptotic_agreement(params(0.01, 30, 10));
  const double dev40 = closed_form::asymptotic_agreement(params(0.01, 40, 10));
  const double dev50 = closed_form::asymptotic_agreement(params(0.01, 50, 10));
  CHECK(dev30 == doctest::Approx(0.0054148224325088515).epsilon(1e-6));
  CHECK(dev40 == doctest::Approx(0.0003954144169917026).epsilon(1e-5));
  CHECK(dev50 == doctest::Approx(3.1275395399604329e-5).epsilon(1e-4));
  CHECK(dev30 > dev40);
  CHECK(dev40 > dev50);
  CHECK(dev30 < 0.01);

  CHECK_THROWS_AS(closed_form::asymptotic_agreement(params(0.01, 10, 10)), InvalidParameter);
  CHECK_THROWS_AS(closed_form::asymptotic_agreement(params(0.01, 4000, 10)), UnderflowError);
}

TEST_CASE("resonances") {
  for (int n : {0, 1, 4}) {
    const double d = resonant_spacing(0.01, n);
    const auto p = params(0.01, 40, d);
    CHECK(closed_form::resonance_proximity(p) < 1e-12);
    CHECK_FALSE(closed_form::times(p).t_between_asymptotic.has_value());
    CHECK_THROWS_AS(closed_form::asymptotic_agreement(p), InvalidParameter);
    // a thick symmetric double barrier is transparent there
    CHECK(std::norm(closed_form::perturbed_amplitude(p, 0.0)) > 0.95);
  }
  CHECK(closed_form::resonance_proximity(params(0.01, 40, 10)) ==
        doctest::Approx(0.045).epsilon(0.05));
}

TEST_CASE("no overflow for very thick barriers") {
  const auto t = closed_form::times(params(0.01, 3000, 15));
  CHECK(std::isfinite(t.t_whole));
  CHECK(t.t_whole == doctest::Approx(t.t_opaque).epsilon(1e-12));
}

TEST_CASE("regime and parameter errors") {
  CHECK_THROWS_AS(closed_form::times(params(0.018, 10, 10)), InvalidParameter);
  CHECK_THROWS_AS(closed_form::times(params(0.02, 10, 10)), InvalidParameter);
  CHECK_THROWS_AS(closed_form::times(params(0.0, 10, 10)), InvalidParameter);
  CHECK_THROWS_AS(closed_form::times(params(0.01, -1, 10)), InvalidParameter);
  CHECK_THROWS_AS(closed_form::times(params(0.01, 10, 0)), InvalidParameter);
  CHECK_THROWS_AS(closed_form::perturbed_amplitude(params(0.01, 10, 10), 0.011), InvalidParameter);
  CHECK_THROWS_AS(closed_form::asymptotic_agreement(params(0.01, 5, 10)), InvalidParameter);
  DoubleBarrierParams<double> bad{0.018, 10, 10, 0.01, {0.0, 1.0}};
  CHECK_THROWS_AS(closed_form::times(bad), InvalidParameter);
}
