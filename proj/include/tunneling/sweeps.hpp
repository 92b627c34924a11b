#ifndef TUNNELING_SWEEPS_HPP
#define TUNNELING_SWEEPS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tunneling/clock_rotor.hpp"
#include "tunneling/clock_times.hpp"
#include "tunneling/double_barrier.hpp"
#include "tunneling/potential.hpp"

namespace tunneling::sweeps {

using Params = closed_form::DoubleBarrierParams<double>;

enum class Axis { d, a, energy, v0 };

const char* axis_name(Axis axis);
std::optional<Axis> parse_axis(const std::string& name);

struct SweepSpec {
  Axis axis = Axis::d;
  double start = 1.0;
  double stop = 100.0;
  int count = 200;
  Params fixed{};  ///< the swept field is overwritten per point

  void validate() const;
  double value_at(int i) const;
  Params params_at(int i) const;
};

enum class RowFlag { none, resonance, out_of_regime };

const char* flag_name(RowFlag flag);

/// One CSV row. Time fields are empty (printed as NA) when the point is out of regime.
struct CsvRecord {
  double swept;
  double energy, v0, a, d;
  std::optional<double> t_whole, t_between, t_barriers, t_opaque, prob_t;
  RowFlag flag = RowFlag::none;
};

/// Closed-form times at one point. Reflection below the closed-channel threshold
/// sets the resonance flag; parameters outside 0 < E < V0, a, d > 0 set out_of_regime.
CsvRecord evaluate_point(const Params& params, double swept);

std::vector<CsvRecord> run_sweep(const SweepSpec& spec);

/// Both panels use E = 0.01, V0 = 0.018, natural units and d in [1, 100];
/// panel 'a' has a = 10, panel 'b' a = 30.
SweepSpec fig1_preset(char panel, int count = 200);

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double value);

void write_comments(std::ostream& out, std::span<const std::string> lines);
void write_records(std::ostream& out, std::span<const CsvRecord> records, const std::string& first_column);

/// Header comment lines shared by the double-barrier commands.
std::vector<std::string> describe(const Params& params, const std::string& what);

// --- clock simulation ---------------------------------------------------------

struct ClockSimRow {
  double omega;
  double tau;
  std::optional<PointerReading<double>> reading;
  double t_perturbative;
  std::optional<double> error;  ///< |t_read - t_perturbative| / t_perturbative
  bool weak_coupling_warning = false;
  std::string flag;  ///< empty, or the reason the row has no reading
};

struct ClockSimSpec {
  PiecewiseConstantPotential potential;
  ClockRegion region{0.0, 1.0};
  double energy = 0.01;
  UnitsConfig units{};
  int n = 21;
  double tau = 1.0;  ///< clock resolution of the first row; each later row doubles it
  int rows = 4;
};

/// Runs measurement_simulation at omega, omega/2, ... against the phase-derivative time.
std::vector<ClockSimRow> run_clock_sim(const ClockSimSpec& spec);

/// tau whose rotor has j hbar omega equal to `fraction` of the coupling energy gap.
double tau_for_coupling(const ClockSimSpec& spec, double fraction);

void write_clock_sim(std::ostream& out, std::span<const ClockSimRow> rows);

// --- randomized dwell decomposition suite -------------------------------------

struct CheckSummary {
  int instances = 0;
  int failures = 0;  ///< instances whose clock times could not be computed
  double max_residual = 0.0;
  double max_unitarity_defect = 0.0;
};

CheckSummary run_check(std::uint64_t seed, int instances);

// --- generic potentials --------------------------------------------------------

/// Text format: one number per line, starting and ending with a breakpoint and
/// alternating breakpoint / height in between. Blank lines and '#' comments are ignored.
PiecewiseConstantPotential parse_potential(std::istream& in);

}  // namespace tunneling::sweeps

#endif  // TUNNELING_SWEEPS_HPP
