#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>

#include "tunneling/clock_times.hpp"
#include "tunneling/sweeps.hpp"

namespace tunneling::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

const char* kPotentialHelp =
    "Potential file: one number per line, breakpoint / height alternating, starting and "
    "ending with a breakpoint ('#' starts a comment). Example for a single barrier of "
    "height 0.018 on [0, 10]:\n  0\n  0.018\n  10";

struct BarrierFlags {
  double energy = 0.01;
  double v0 = 0.018;
  double a = 10.0;
  double d = 10.0;
  double mass = 1.0;
  double hbar = 1.0;

  void add(CLI::App* app, bool with_geometry = true) {
    app->add_option("--E", energy, "particle energy")->capture_default_str();
    app->add_option("--V0", v0, "barrier height")->capture_default_str();
    if (with_geometry) {
      app->add_option("--a", a, "barrier width")->capture_default_str();
      app->add_option("--d", d, "barrier spacing")->capture_default_str();
    }
    app->add_option("--mass", mass, "particle mass (natural units by default)")->capture_default_str();
    app->add_option("--hbar", hbar, "reduced Planck constant")->capture_default_str();
  }

  sweeps::Params params() const { return {v0, a, d, energy, {mass, hbar}}; }
};

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidParameter("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

PiecewiseConstantPotential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read potential file " + path);
  return sweeps::parse_potential(in);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clock and dwell times for one-dimensional tunneling", "tunneling"};
  app.require_subcommand(1);
  app.footer(kPotentialHelp);

  std::string out_path;
  std::function<int()> action;

  // times --------------------------------------------------------------------
  BarrierFlags times_flags;
  std::string times_potential;
  std::optional<double> z1, z2;
  auto* times = app.add_subcommand("times", "closed-form double-barrier times at one point, or "
                                            "Peres times for a potential file with --potential");
  times_flags.add(times);
  times->add_option("--potential", times_potential, "generic potential file (see footer)");
  times->add_option("--z1", z1, "clock region start (with --potential)");
  times->add_option("--z2", z2, "clock region end (with --potential)");
  times->add_option("--out", out_path, "write CSV here instead of stdout");
  times->callback([&] {
    action = [&]() -> int {
      Sink sink(out_path, out);
      if (times_potential.empty()) {
        const auto p = times_flags.params();
        p.validate();
        const auto rec = sweeps::evaluate_point(p, 0.0);
        sweeps::write_comments(*sink, sweeps::describe(p, "single point"));
        sweeps::write_records(*sink, std::span(&rec, 1), "point");
        return kOk;
      }
      if (!z1 || !z2) throw InvalidParameter("--potential needs --z1 and --z2");
      const UnitsConfig units{times_flags.mass, times_flags.hbar};
      const auto pot = load_potential(times_potential);
      const ClockRegion region(*z1, *z2);
      std::ostream& o = *sink;
      o << "# Peres clock times for " << times_potential << ", clock on (z1, z2)\n";
      o << "# units: mass=" << sweeps::format_number(units.mass)
        << " hbar=" << sweeps::format_number(units.hbar) << "\n";
      o << "E,z1,z2,t_T,t_R,t_D,T2,R2,residual,flag\n";
      const auto t = clock_times(pot, region, times_flags.energy, units);
      auto opt = [](const std::optional<double>& v) { return v ? sweeps::format_number(*v) : "NA"; };
      o << sweeps::format_number(times_flags.energy) << ',' << sweeps::format_number(*z1) << ','
        << sweeps::format_number(*z2) << ',' << opt(t.t_t) << ',' << opt(t.t_r) << ','
        << sweeps::format_number(t.t_d) << ',' << sweeps::format_number(t.prob_t) << ','
        << sweeps::format_number(t.prob_r) << ','
        << sweeps::format_number(dwell_decomposition_residual(t)) << ','
        << ((t.t_t && t.t_r) ? "0" : "resonance") << '\n';
      return kOk;
    };
  });

  // sweep --------------------------------------------------------------------
  BarrierFlags sweep_flags;
  std::string axis = "d";
  sweeps::SweepSpec sweep_spec;
  auto* sweep = app.add_subcommand("sweep", "closed-form times along one parameter axis");
  sweep_flags.add(sweep);
  sweep->add_option("--axis", axis, "swept parameter")
      ->check(CLI::IsMember({"d", "a", "E", "V0"}))
      ->capture_default_str();
  sweep->add_option("--start", sweep_spec.start, "first grid value")->required();
  sweep->add_option("--stop", sweep_spec.stop, "last grid value")->required();
  sweep->add_option("--count", sweep_spec.count, "grid points (>= 2)")->capture_default_str();
  sweep->add_option("--out", out_path, "write CSV here instead of stdout");
  sweep->callback([&] {
    action = [&]() -> int {
      sweep_spec.axis = *sweeps::parse_axis(axis);
      sweep_spec.fixed = sweep_flags.params();
      sweep_spec.validate();
      const auto rows = sweeps::run_sweep(sweep_spec);
      Sink sink(out_path, out);
      sweeps::write_comments(*sink, sweeps::describe(sweep_spec.fixed,
                                                     std::string("sweep over ") + axis + " in [" +
                                                         sweeps::format_number(sweep_spec.start) + ", " +
                                                         sweeps::format_number(sweep_spec.stop) + "], " +
                                                         std::to_string(sweep_spec.count) + " points"));
      sweeps::write_records(*sink, rows, axis);
      return kOk;
    };
  });

  // fig1 ---------------------------------------------------------------------
  std::string panel = "a";
  int fig_count = 200;
  auto* fig1 = app.add_subcommand("fig1", "three clock times vs barrier spacing d "
                                          "(E=0.01, V0=0.018; panel a: a=10, panel b: a=30)");
  fig1->add_option("--panel", panel, "figure panel")->check(CLI::IsMember({"a", "b"}))->capture_default_str();
  fig1->add_option("--count", fig_count, "grid points over d in [1, 100]")->capture_default_str();
  fig1->add_option("--out", out_path, "write CSV here instead of stdout");
  fig1->callback([&] {
    action = [&]() -> int {
      const auto spec = sweeps::fig1_preset(panel[0], fig_count);
      spec.validate();
      const auto rows = sweeps::run_sweep(spec);
      Sink sink(out_path, out);
      sweeps::write_comments(*sink, sweeps::describe(spec.fixed, "figure panel " + panel +
                                                                     ": a=" + sweeps::format_number(spec.fixed.a) +
                                                                     ", d in [1, 100]"));
      sweeps::write_records(*sink, rows, "d");
      return kOk;
    };
  });

  // clock-sim ----------------------------------------------------------------
  BarrierFlags sim_flags;
  int rotor_n = 21;
  std::optional<double> sim_tau;
  double coupling_fraction = 0.1;
  int sim_rows = 4;
  std::optional<double> free_length;
  std::string sim_potential;
  std::optional<double> sim_z1, sim_z2;
  auto* sim = app.add_subcommand("clock-sim", "rotor measurement simulation at successively "
                                              "halved omega vs the phase-derivative time");
  sim_flags.add(sim);
  sim->add_option("--N", rotor_n, "rotor dimension (odd, >= 3)")->capture_default_str();
  sim->add_option("--tau", sim_tau, "clock resolution of the first row (default: from --coupling)");
  sim->add_option("--coupling", coupling_fraction,
                  "first-row j hbar omega as a fraction of min(E, |V - E|)")
      ->capture_default_str();
  sim->add_option("--rows", sim_rows, "number of omega values (each halves the previous)")
      ->capture_default_str();
  sim->add_option("--free-length", free_length, "free particle with clock on (0, L)");
  sim->add_option("--potential", sim_potential, "generic potential file (see footer)");
  sim->add_option("--z1", sim_z1, "clock region start (default: potential support)");
  sim->add_option("--z2", sim_z2, "clock region end (default: potential support)");
  sim->add_option("--out", out_path, "write CSV here instead of stdout");
  sim->callback([&] {
    action = [&]() -> int {
      sweeps::ClockSimSpec spec;
      spec.energy = sim_flags.energy;
      spec.units = {sim_flags.mass, sim_flags.hbar};
      spec.n = rotor_n;
      spec.rows = sim_rows;
      if (rotor_n < 3 || rotor_n % 2 == 0) throw InvalidParameter("--N must be odd and >= 3");
      if (free_length) {
        spec.potential = PiecewiseConstantPotential::free();
        spec.region = ClockRegion(0.0, *free_length);
      } else {
        spec.potential = sim_potential.empty()
                             ? double_barrier(sim_flags.v0, sim_flags.a, sim_flags.d)
                             : load_potential(sim_potential);
        const auto x = spec.potential.breakpoints();
        if (x.empty()) throw InvalidParameter("potential has no support; pass --z1 and --z2");
        spec.region = ClockRegion(sim_z1.value_or(x.front()), sim_z2.value_or(x.back()));
      }
      if (!(coupling_fraction > 0.0)) throw InvalidParameter("--coupling must be positive");
      spec.tau = sim_tau.value_or(sweeps::tau_for_coupling(spec, coupling_fraction));
      const auto rows = sweeps::run_clock_sim(spec);
      Sink sink(out_path, out);
      std::ostream& o = *sink;
      o << "# rotor measurement simulation: N=" << rotor_n << ", E=" << sweeps::format_number(spec.energy)
        << ", clock on (" << sweeps::format_number(spec.region.z1) << ", "
        << sweeps::format_number(spec.region.z2) << ")\n";
      o << "# units: mass=" << sweeps::format_number(spec.units.mass)
        << " hbar=" << sweeps::format_number(spec.units.hbar) << "\n";
      o << "# t_perturbative: -hbar dphi_T/dV at V=0; omega halves on every row\n";
      sweeps::write_clock_sim(o, rows);
      return kOk;
    };
  });

  // check --------------------------------------------------------------------
  std::uint64_t seed = 20240601;
  int check_count = 500;
  auto* check = app.add_subcommand("check", "randomized dwell-time decomposition suite; "
                                            "prints the max residual");
  check->add_option("--seed", seed, "random seed")->capture_default_str();
  check->add_option("--count", check_count, "number of random instances")->capture_default_str();
  check->add_option("--out", out_path, "write CSV here instead of stdout");
  check->callback([&] {
    action = [&]() -> int {
      const auto s = sweeps::run_check(seed, check_count);
      Sink sink(out_path, out);
      std::ostream& o = *sink;
      o << "# residual = |t_D - (|T|^2 t_T + |R|^2 t_R)| / t_D over random asymmetric instances\n";
      o << "seed,instances,failures,max_residual,max_unitarity_defect\n";
      o << seed << ',' << s.instances << ',' << s.failures << ','
        << sweeps::format_number(s.max_residual) << ','
        << sweeps::format_number(s.max_unitarity_defect) << '\n';
      return s.failures == 0 ? kOk : kNumerical;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    return action();
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace tunneling::cli
