#pragma once

#include <string>
#include <vector>

#include "eit/solver.hpp"

namespace eit {

struct Scenario;  // scenario.hpp

struct RunSample {
  long step = 0;
  double t = 0.0;
  double mass = 0.0, energy = 0.0, entropy = 0.0, varsigma = 0.0;
  double boundary_energy_flux = 0.0;
  double production_integral = 0.0, production_min = 0.0;
  std::vector<double> probes;  // temperature at the probe cells
};

struct Snapshot {
  double t = 0.0;
  long step = 0;
  FieldSet state;
};

/// Budget time series plus sampled field frames for one run.
struct RunRecord {
  std::vector<RunSample> samples;
  std::vector<Snapshot> snapshots;
  std::string scenario_hash;
  std::vector<std::string> header;  // coefficient log
  double dt = 0.0;
  long steps = 0;
  bool blew_up = false;
  std::string note;
};

// Audits --------------------------------------------------------------------

struct EnergyAuditResult {
  std::vector<double> t;
  std::vector<double> residual;  // d/dt int e_hat + boundary flux, per sample
  double drift_rel = 0.0;        // |E(end) - E(0)| / |E(0)|
  double max_residual = 0.0;
  double max_pointwise_residual = 0.0;  // balance-law residual on snapshots
};

EnergyAuditResult energy_audit(const RunRecord& rec, const Solver& solver);

/// Pointwise residual of  Dbar_t e + div[(p delta - tau - sigma).u + T j]
/// evaluated from one rhs assembly at a state.
ScalarField pointwise_energy_residual(const Solver& solver, const FieldSet& st);

struct EntropyAuditResult {
  double min_production = 0.0;       // min over cells and samples
  double ledger_residual = 0.0;      // |Delta varsigma - quadrature of production|
  double balance_residual = 0.0;     // midpoint residual of Dbar varsigma = Dbar s + div j_s
  bool entropy_nondecreasing = true; // integrated s trend (closed system)
};

EntropyAuditResult entropy_audit(const RunRecord& rec, const Solver& solver);

double mass_drift_rel(const RunRecord& rec);

// Studies -------------------------------------------------------------------

struct CitLimitRow {
  double tau = 0.0;
  double l2_distance = 0.0;
};

struct CitLimitStudy {
  std::vector<CitLimitRow> rows;
  double observed_order = 0.0;  // least-squares slope of log d vs log tau
};

/// EIT(tau) trajectories against the CIT twin of `base` at fixed t_end; tau
/// rescales every relaxation time of the base closure.
CitLimitStudy cit_limit_study(const Scenario& base, const std::vector<double>& taus);

struct SecondSoundResult {
  double speed = 0.0;
  double uncertainty = 0.0;
  bool diffusive = false;
  double predicted = 0.0;  // dispersion-relation value sqrt(kappa/(rho c_v tau1))
};

/// Peak-arrival estimate across two probe points with a diffusive-regime
/// detector (pulse second moment growing like t, not t^2).
SecondSoundResult second_sound_speed(const RunRecord& rec, const Scenario& sc);

/// Linearized telegrapher speed for the perfect-gas closure.
double second_sound_prediction(double kappa, double rho0, double c_v, double tau1);

}  // namespace eit
