// Acceptance report: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tunneling/clock_rotor.hpp"
#include "tunneling/clock_times.hpp"
#include "tunneling/double_barrier.hpp"
#include "tunneling/scattering.hpp"
#include "tunneling/sweeps.hpp"

using namespace tunneling;
using Params = closed_form::DoubleBarrierParams<double>;

namespace {

constexpr double kV0 = 0.018;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %2d  %-34s %s  %s\n", id, name, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

struct GridPoint {
  double e, a, d;
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> g;
  for (double e : {0.002, 0.005, 0.01, 0.015})
    for (double a : {5.0, 10.0, 30.0})
      for (double d : {1.0, 5.0, 10.0, 50.0}) g.push_back({e, a, d});
  return g;
}

double unitarity_defect = 0;

void cross_route() {
  double worst = 0;
  int used = 0, flagged = 0;
  for (const auto& g : grid()) {
    const Params p{kV0, g.a, g.d, g.e};
    const double closed = closed_form::times(p).t_whole;
    try {
      const auto t = clock_times(double_barrier(kV0, g.a, g.d), {0, 2 * g.a + g.d}, g.e);
      unitarity_defect = std::max(unitarity_defect, std::abs(t.prob_t + t.prob_r - 1));
      if (!t.t_t || !t.t_r) {
        ++flagged;
        continue;
      }
      worst = std::max({worst, rel(closed, t.t_d), rel(closed, *t.t_t), rel(t.t_d, *t.t_t)});
      ++used;
    } catch (const UndefinedPhase&) {
      ++flagged;
    }
  }
  report(1, "cross-route equality", used > 0 && worst <= 1e-6,
         fmt("max pairwise rel diff %.3g over %.0f points (%.0f flagged), tol 1e-6", worst, used, flagged));
}

void decomposition() {
  const auto s = sweeps::run_check(20240601, 500);
  unitarity_defect = std::max(unitarity_defect, s.max_unitarity_defect);
  report(2, "dwell decomposition", s.failures == 0 && s.max_residual <= 1e-6,
         fmt("max residual %.3g over 500 instances, %.0f failed, tol 1e-6", s.max_residual, s.failures));
}

void unitarity() {
  report(3, "unitarity", unitarity_defect <= 1e-12,
         fmt("max ||T|^2 + |R|^2 - 1| = %.3g, tol 1e-12", unitarity_defect));
}

void opaque() {
  const Params p{kV0, 60, 10, 0.01};
  const auto t = closed_form::times(p);
  const double gap = closed_form::opaque_limit_gap(p);
  report(4, "opaque saturation (a=60, d=10)", gap <= 1e-5,
         fmt("t_whole %.12g, t_opaque %.12g, rel gap %.3g, tol 1e-5", t.t_whole, t.t_opaque, gap));
}

void exact_split() {
  double worst = 0;
  for (const auto& g : grid()) {
    const auto t = closed_form::times(Params{kV0, g.a, g.d, g.e});
    worst = std::max(worst, std::abs(t.t_whole - (t.t_between + t.t_barriers)) / t.t_whole);
  }
  report(5, "whole = between + barriers", worst <= 1e-12, fmt("max rel residual %.3g, tol 1e-12", worst));
}

void figure() {
  // off resonance: at least halfway between the thick-barrier resonances of the well
  auto off_resonance = [](const Params& p) { return closed_form::resonance_proximity(p) >= 0.5; };

  const Params p8{kV0, 10, 8, 0.01}, p80{kV0, 10, 80, 0.01};
  const double t8 = closed_form::times(p8).t_between, t80 = closed_form::times(p80).t_between;
  const bool grows = t80 > t8;

  const auto pa = sweeps::run_sweep(sweeps::fig1_preset('a'));
  const auto pb = sweeps::run_sweep(sweeps::fig1_preset('b'));
  int above = 0;
  double first_above = 0;
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (*pb[i].t_between >= *pa[i].t_between && above++ == 0) first_above = pb[i].d;

  int band = 0, off = 0;
  double worst = 0;
  for (const auto& r : pb) {
    const Params p{kV0, r.a, r.d, r.energy};
    if (!off_resonance(p)) continue;
    ++off;
    const double gap = std::abs(*r.t_whole - *r.t_opaque) / *r.t_opaque;
    worst = std::max(worst, gap);
    if (gap > 0.01) ++band;
  }
  std::string detail = fmt("t_between(d=80)/t_between(d=8) = %.4g; ", t80 / t8);
  detail += above ? fmt("a=30 not below a=10 at %.0f of 200 d (first d=%.4g); ", above, first_above)
                  : std::string("a=30 below a=10 at all 200 d; ");
  detail += fmt("%.0f of %.0f off-resonance d outside the 1%% band (worst %.3g)", band, off, worst);
  report(6, "figure trends", grows && above == 0 && band == 0, detail);
}

void asymptotic() {
  const double d30 = closed_form::asymptotic_agreement(Params{kV0, 30, 10, 0.01});
  const double d40 = closed_form::asymptotic_agreement(Params{kV0, 40, 10, 0.01});
  const double d50 = closed_form::asymptotic_agreement(Params{kV0, 50, 10, 0.01});
  report(7, "asymptotic between-barrier time", d30 <= 1e-2 && d40 < d30 && d50 < d40,
         fmt("rel deviation a=30: %.3g, a=40: %.3g, a=50: %.3g", d30, d40, d50));
}

void suppression() {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double a = 30; a <= 60; a += 1) {
    const double y = std::log(closed_form::times(Params{kV0, a, 10, 0.01}).t_between);
    sx += a, sy += y, sxx += a * a, sxy += a * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double expect = -2 * Params{kV0, 30, 10, 0.01}.q();
  const double dev = std::abs(slope / expect - 1);
  report(8, "exponential suppression", dev <= 0.05,
         fmt("fitted slope %.6g vs -2q = %.6g (rel dev %.3g, tol 0.05)", slope, expect, dev));
}

void rotor() {
  const int n = 21;
  const double tau = 0.75;
  const ClockRotor<double> r(n, tau);
  Eigen::MatrixXcd v(n, n);
  for (int k = 0; k < n; ++k) v.col(k) = r.basis_state(k);
  const double gram = (v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();

  double rigid = 0;
  for (int k = 0; k < n; ++k)
    for (int m = 0; m <= 2 * n; ++m) {
      const auto moved = r.evolve(r.basis_state(k), m * tau);
      const auto target = r.basis_state((k + m) % n);
      const auto phase = target.dot(moved);  // <target|moved>
      rigid = std::max(rigid, (moved - target * (phase / std::abs(phase))).cwiseAbs().maxCoeff());
    }

  double expectation = 0;
  for (int k = 0; k < n; ++k) {
    const double t = r.time_expectation(r.basis_state(k));
    expectation = std::max(expectation, k == 0 ? std::abs(t) : std::abs(t / (k * tau) - 1));
  }
  report(9, "rotor exactness", gram <= 1e-12 && rigid <= 1e-12 && expectation <= 1e-13,
         fmt("gram dev %.3g, rigid evolution dev %.3g, time expectation rel dev %.3g", gram, rigid,
             expectation));
}

void convergence() {
  sweeps::ClockSimSpec spec;
  spec.potential = double_barrier(kV0, 10, 10);
  spec.region = {0, 30};
  spec.energy = 0.01;
  spec.n = 21;
  spec.rows = 4;
  spec.tau = sweeps::tau_for_coupling(spec, 0.1);
  const auto rows = sweeps::run_clock_sim(spec);
  bool ok = true;
  std::string detail = "errors";
  double min_ratio = 1e300;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].error) {
      ok = false;
      detail += " NA";
      continue;
    }
    detail += fmt(" %.3g", *rows[i].error);
    if (i > 0 && rows[i - 1].error) min_ratio = std::min(min_ratio, *rows[i - 1].error / *rows[i].error);
  }
  const double last = rows.back().error.value_or(1e300);
  ok = ok && min_ratio >= 1.8 && last <= 0.01;
  detail += fmt("; min ratio per halving %.3g (>= 1.8), final %.3g (<= 0.01)", min_ratio, last);
  report(10, "measurement convergence", ok, detail);
}

}  // namespace

int main() {
  cross_route();
  decomposition();
  unitarity();
  opaque();
  exact_split();
  figure();
  asymptotic();
  suppression();
  rotor();
  convergence();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
