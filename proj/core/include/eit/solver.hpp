#pragma once

#include <vector>

#include "eit/constitutive.hpp"

namespace eit {

/// The Eulerian state: densities, velocity, thermodynamic fluxes, and the
/// two ledger fields (thermal displacement gamma with D_t gamma = T, and the
/// internal-entropy accumulator varsigma with Dbar_t varsigma = production).
/// gamma and varsigma evolve by quadrature only and never feed back.
struct FieldSet {
  ScalarField rho;      // mass density
  ScalarField s;        // entropy density
  VectorField u;        // velocity
  SymTensorField sigma;  // viscous flux density
  VectorField q;         // heat flux density
  std::vector<HigherFluxField> q_higher;  // q^(k), k = 2..n
  ScalarField gamma_td;  // thermal displacement (scalar, not a density)
  ScalarField varsigma;  // internal entropy accumulator (density)

  static FieldSet zeros(const Grid& g, int n_order = 1);
  const Grid& grid() const { return rho.grid(); }

  void axpy(double a, const FieldSet& other);
  /// this = a*this + b*other
  void combine(double a, double b, const FieldSet& other);
  bool finite() const;
};

struct StepControl {
  double dt = 0.0;  // 0: derive from cfl at the initial state
  double cfl = 0.2;
  double t_end = 1.0;
  enum class Scheme { RK4, SSPRK3 } scheme = Scheme::RK4;
  double dt_scale = 1.0;  // refinement-study hook
};

/// Insulated no-slip wall policy: reflect u (odd), even-extend rho, s, T and
/// sigma, odd-extend the wall-normal q component so j_s.n vanishes at the
/// face.  Periodic axes ignore all of this.
struct BoundaryPolicy {
  FieldRules rules(const Grid& g) const;
};

enum class MomentumForm { A, B };

struct SolverConfig {
  ClosureSpec closure;
  NonEqEOS eos;
  MomentumForm form = MomentumForm::B;
  bool frozen_hydro = false;  // hold rho, u fixed (heat-only studies)
  double nu4 = 0.0;           // fourth-difference stabilization (off by default)
  StepControl ctrl;
  BoundaryPolicy bc;
};

/// One rhs evaluation: rates in FieldSet layout plus the diagnostics that
/// fall out of the assembly.
struct SystemRhs {
  FieldSet rate;
  ScalarField T, p, p_hat;
  ScalarField production;
  VectorField j_s;
  VectorField m_dot;  // momentum-density rate (the form-A/B object)
  // flux fields actually used (algebraic in CIT, state in EIT)
  SymTensorField sigma_eff;
  VectorField q_eff;
  EOSEvalFields ev;
};

class Solver {
 public:
  Solver(const Grid& g, SolverConfig cfg);

  const Grid& grid() const { return grid_; }
  const SolverConfig& config() const { return cfg_; }
  const FieldRules& rules() const { return rules_; }

  SystemRhs rhs(const FieldSet& st) const;

  /// One step of the configured scheme; throws BlowupError on NaN/Inf and
  /// AdmissibilityError/domain_error on inadmissible stage states.
  void step(FieldSet& st, double dt, long step_index = -1) const;

  /// dt from the StepControl invariant: cfl * min(h/(|u|+c_s+c_2),
  /// tau_min/4, explicit-diffusion limit in CIT regimes), times dt_scale.
  double auto_dt(const FieldSet& st) const;

  struct Budgets {
    double mass = 0.0, entropy = 0.0, varsigma = 0.0, energy = 0.0;
    double boundary_energy_flux = 0.0;  // surface integral of T j_s . n
    double production_integral = 0.0, production_min = 0.0;
  };
  Budgets budgets(const FieldSet& st) const;

  TotalEnergy energy(const FieldSet& st) const;

 private:
  Grid grid_;
  SolverConfig cfg_;
  FieldRules rules_;

  void stage_rates(const FieldSet& st, FieldSet& out) const;
};

// Spec-level operation surfaces (assembled from the same pieces as Solver).
ScalarField continuity_rhs(const FieldSet& st, const FieldRules& fr = {});
VectorField momentum_rhs(const FieldSet& st, const NonEqEOS& eos, const ClosureSpec& spec,
                         MomentumForm form, const FieldRules& fr = {});
ScalarField entropy_rhs(const FieldSet& st, const NonEqEOS& eos, const ClosureSpec& spec,
                        const FieldRules& fr = {});

/// Slave the flux fields to their instantaneous CIT values (used for
/// "slaved" initial conditions and the CIT assembly).
void slave_fluxes_to_cit(FieldSet& st, const NonEqEOS& eos, const ClosureSpec& spec,
                         const FieldRules& fr = {});

}  // namespace eit
