#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eit/diagnostics.hpp"
#include "eit/solver.hpp"

namespace eit {

/// Everything a run needs, parsed from a JSON scenario file.  Validation is
/// performed at load with key-path error messages; a scenario that loads is
/// safe to step.
struct Scenario {
  std::string name = "unnamed";

  Grid grid = Grid::make_1d(64, 1.0);
  SolverConfig solver;

  enum class ICKind { Uniform, GaussianPulseT, ShearLayer, Manufactured };
  ICKind ic = ICKind::Uniform;
  double rho0 = 1.0, T0 = 1.0;
  double pulse_amp = 0.0, pulse_width = 0.1;
  std::array<double, 2> pulse_center{0.5, 0.5};
  double shear_amp = 0.5, shear_width = 0.08, shear_perturb = 0.02;
  double manu_amp = 1e-3;
  int manu_modes = 2;
  enum class FluxInit { Zero, Slaved } flux_init = FluxInit::Zero;
  std::uint64_t seed = 1234;

  long max_steps = 0;  // when > 0 and t_end == 0: run exactly this many steps
  int record_every = 1;
  std::vector<double> snapshot_times;
  std::vector<std::array<double, 2>> probes;

  static Scenario from_json_text(const std::string& text);
  static Scenario from_file(const std::string& path);
  std::string to_canonical_json() const;
  /// FNV-1a over the canonical form; logged into every RunRecord.
  std::string hash() const;

  FieldSet initial_state() const;
  Solver make_solver() const;
};

struct RunOutput {
  RunRecord record;
  FieldSet final_state;
};

/// Deterministic run loop: fixed dt (auto-derived unless pinned), samples on
/// the configured cadence, snapshots at the requested times.
RunOutput run_scenario(const Scenario& sc,
                       const std::function<void(long, const FieldSet&)>& on_step = {});

struct SweepRow {
  double value = 0.0;
  long steps = 0;
  double energy_drift_rel = 0.0;
  double min_production = 0.0;
  double cit_l2_distance = -1.0;      // vs the CIT twin, when meaningful
  double second_sound = -1.0;         // when probes are configured
  bool diffusive = false;
};

/// One run per value of a dotted parameter path (e.g. "closure.tau1"),
/// executed concurrently; EIT runs also report the CIT-twin distance.
std::vector<SweepRow> run_sweep(const Scenario& base, const std::string& param,
                                const std::vector<double>& values);

/// Applies a dotted-path override to the scenario's canonical JSON and
/// reloads (validation included).
Scenario with_override(const Scenario& base, const std::string& param, double value);

/// The instantaneous-closure twin: mode CIT, all relaxation times zero, the
/// same transport coefficients, the equilibrium EOS.
Scenario cit_twin(const Scenario& base);

/// The scenarios shipped with the artifact, by name.
std::vector<std::string> bundled_scenario_names();
std::string bundled_scenario_text(const std::string& name);

}  // namespace eit
