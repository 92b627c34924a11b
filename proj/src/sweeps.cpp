#include "tunneling/sweeps.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "tunneling/parallel.hpp"
#include "tunneling/random_instances.hpp"
#include "tunneling/scattering.hpp"

namespace tunneling::sweeps {

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::d: return "d";
    case Axis::a: return "a";
    case Axis::energy: return "E";
    case Axis::v0: return "V0";
  }
  return "?";
}

std::optional<Axis> parse_axis(const std::string& name) {
  if (name == "d") return Axis::d;
  if (name == "a") return Axis::a;
  if (name == "E") return Axis::energy;
  if (name == "V0") return Axis::v0;
  return std::nullopt;
}

const char* flag_name(RowFlag flag) {
  switch (flag) {
    case RowFlag::none: return "0";
    case RowFlag::resonance: return "resonance";
    case RowFlag::out_of_regime: return "out_of_regime";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
    throw InvalidParameter("sweep requires finite start < stop");
  if (count < 2) throw InvalidParameter("sweep requires at least two points");
  fixed.units.validate();
}

double SweepSpec::value_at(int i) const {
  if (i == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Params SweepSpec::params_at(int i) const {
  Params p = fixed;
  const double v = value_at(i);
  switch (axis) {
    case Axis::d: p.d = v; break;
    case Axis::a: p.a = v; break;
    case Axis::energy: p.energy = v; break;
    case Axis::v0: p.v0 = v; break;
  }
  return p;
}

CsvRecord evaluate_point(const Params& params, double swept) {
  CsvRecord rec{swept, params.energy, params.v0, params.a, params.d, {}, {}, {}, {}, {}, RowFlag::none};
  try {
    params.validate();
  } catch (const InvalidParameter&) {
    rec.flag = RowFlag::out_of_regime;
    return rec;
  }
  const auto t = closed_form::times(params);
  const double prob_t = std::norm(closed_form::perturbed_amplitude(params, 0.0));
  rec.t_whole = t.t_whole;
  rec.t_between = t.t_between;
  rec.t_barriers = t.t_barriers;
  rec.t_opaque = t.t_opaque;
  rec.prob_t = prob_t;
  if (1.0 - prob_t < kClosedChannel) rec.flag = RowFlag::resonance;
  return rec;
}

std::vector<CsvRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<CsvRecord> rows(static_cast<std::size_t>(spec.count));
  parallel_for(rows.size(), [&](std::size_t i) {
    const int idx = static_cast<int>(i);
    rows[i] = evaluate_point(spec.params_at(idx), spec.value_at(idx));
  });
  return rows;
}

SweepSpec fig1_preset(char panel, int count) {
  if (panel != 'a' && panel != 'b') throw InvalidParameter("figure panel must be 'a' or 'b'");
  SweepSpec spec;
  spec.axis = Axis::d;
  spec.start = 1.0;
  spec.stop = 100.0;
  spec.count = count;
  spec.fixed = Params{0.018, panel == 'a' ? 10.0 : 30.0, 1.0, 0.01, {}};
  return spec;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_comments(std::ostream& out, std::span<const std::string> lines) {
  for (const auto& l : lines) out << "# " << l << '\n';
}

namespace {

std::string field(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

}  // namespace

void write_records(std::ostream& out, std::span<const CsvRecord> records,
                   const std::string& first_column) {
  out << first_column << ",E,V0,a,d,t_whole,t_between,t_barriers,t_opaque,T2,flag\n";
  for (const auto& r : records) {
    out << format_number(r.swept) << ',' << format_number(r.energy) << ',' << format_number(r.v0)
        << ',' << format_number(r.a) << ',' << format_number(r.d) << ',' << field(r.t_whole) << ','
        << field(r.t_between) << ',' << field(r.t_barriers) << ',' << field(r.t_opaque) << ','
        << field(r.prob_t) << ',' << flag_name(r.flag) << '\n';
  }
}

std::vector<std::string> describe(const Params& params, const std::string& what) {
  return {what,
          "units: mass=" + format_number(params.units.mass) + " hbar=" + format_number(params.units.hbar) +
              " (natural units mu=hbar=1: lengths and times in units of 1/mu)",
          "symmetric double barrier: V0 on (0,a) and (a+d,2a+d)",
          "t_whole = clock over (0,2a+d); t_between = (a,a+d); t_barriers = both barriers; "
          "t_opaque = thick-barrier saturation value",
          "flag: 0 | resonance (|R|^2 < 1e-12) | out_of_regime (NA fields)"};
}

// --- clock simulation ---------------------------------------------------------

double tau_for_coupling(const ClockSimSpec& spec, double fraction) {
  const double gap = coupling_energy_gap(spec.potential, spec.region, spec.energy);
  const double omega = fraction * gap / (static_cast<double>((spec.n - 1) / 2) * spec.units.hbar);
  return 2.0 * std::numbers::pi / (static_cast<double>(spec.n) * omega);
}

std::vector<ClockSimRow> run_clock_sim(const ClockSimSpec& spec) {
  if (spec.rows < 1) throw InvalidParameter("clock simulation needs at least one row");
  const auto reference = clock_times(spec.potential, spec.region, spec.energy, spec.units);
  if (!reference.t_t) throw ResonanceError(Channel::transmitted, "transmission channel is closed");
  const double t_ref = *reference.t_t;

  std::vector<ClockSimRow> rows(static_cast<std::size_t>(spec.rows));
  parallel_for(rows.size(), [&](std::size_t i) {
    const double tau = spec.tau * std::ldexp(1.0, static_cast<int>(i));
    const ClockRotor<double> rotor(spec.n, tau);
    ClockSimRow& row = rows[i];
    row.omega = rotor.omega();
    row.tau = tau;
    row.t_perturbative = t_ref;
    try {
      const auto m = measurement_simulation(spec.potential, spec.region, spec.energy, rotor, spec.units);
      row.reading = m.transmitted;
      row.error = std::abs(m.transmitted.t_read - t_ref) / std::abs(t_ref);
      row.weak_coupling_warning = m.weak_coupling_warning;
    } catch (const CouplingTooStrong&) {
      row.flag = "coupling_too_strong";
    } catch (const UndefinedReading&) {
      row.flag = "undefined_reading";
    }
  });
  return rows;
}

void write_clock_sim(std::ostream& out, std::span<const ClockSimRow> rows) {
  out << "omega,tau,t_read,spread,t_perturbative,rel_error,flag\n";
  for (const auto& r : rows) {
    out << format_number(r.omega) << ',' << format_number(r.tau) << ','
        << (r.reading ? format_number(r.reading->t_read) : "NA") << ','
        << (r.reading ? format_number(r.reading->spread) : "NA") << ','
        << format_number(r.t_perturbative) << ',' << (r.error ? format_number(*r.error) : "NA") << ','
        << (r.flag.empty() ? (r.weak_coupling_warning ? "weak_coupling_warning" : "0") : r.flag) << '\n';
  }
}

// --- randomized dwell decomposition suite -------------------------------------

CheckSummary run_check(std::uint64_t seed, int instances) {
  if (instances < 1) throw InvalidParameter("check needs at least one instance");
  std::mt19937_64 rng(seed);
  std::vector<RandomInstance> drawn;
  drawn.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) drawn.push_back(random_instance(rng));

  std::vector<std::optional<double>> residual(drawn.size());
  std::vector<double> unitarity(drawn.size());
  parallel_for(drawn.size(), [&](std::size_t i) {
    const auto& inst = drawn[i];
    try {
      const auto t = clock_times(inst.potential, inst.region, inst.energy);
      residual[i] = dwell_decomposition_residual(t);
      unitarity[i] = std::abs(t.prob_t + t.prob_r - 1.0);
    } catch (const Error&) {
      const auto sol = solve(inst.potential, inst.energy);
      unitarity[i] = std::abs(sol.transmission_probability() + sol.reflection_probability() - 1.0);
    }
  });

  CheckSummary s;
  s.instances = instances;
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    if (residual[i]) s.max_residual = std::max(s.max_residual, *residual[i]);
    else ++s.failures;
    s.max_unitarity_defect = std::max(s.max_unitarity_defect, unitarity[i]);
  }
  return s;
}

// --- generic potentials --------------------------------------------------------

PiecewiseConstantPotential parse_potential(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v;
    if (!(ss >> v)) {
      std::string rest;
      if (std::istringstream(line) >> rest)
        throw InvalidParameter("potential file line " + std::to_string(lineno) + ": not a number");
      continue;
    }
    std::string trailing;
    if (ss >> trailing)
      throw InvalidParameter("potential file line " + std::to_string(lineno) + ": one number per line");
    values.push_back(v);
  }
  if (values.size() < 3 || values.size() % 2 == 0)
    throw InvalidParameter("potential file needs breakpoint, height, breakpoint[, height, breakpoint...]");
  std::vector<double> bps, heights;
  for (std::size_t i = 0; i < values.size(); ++i) (i % 2 == 0 ? bps : heights).push_back(values[i]);
  return {std::move(bps), std::move(heights)};
}

}  // namespace tunneling::sweeps
