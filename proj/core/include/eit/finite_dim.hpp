#pragma once

#include <vector>

#include "eit/errors.hpp"

namespace eit {

/// Finite-dimensional thermodynamic network: N mass-spring subsystems with
/// friction and pairwise heat exchange.  Thermal internal energy
/// U_A = C_A exp(S_A/C_A), so T^A = exp(S_A/C_A) (constant heat capacity).
///
/// Phenomenology: F^A = -gamma_A qdot_A and the symmetric exchange flux
/// J_AB = -kappa_AB (T^A - T^B)^2/(T^A T^B), which makes every per-subsystem
/// internal production a manifest square and conserves total energy.
struct FiniteSystem {
  struct Subsystem {
    double mass = 1.0;
    double k_spring = 1.0;
    double gamma_fric = 0.0;
    double C_heat = 1.0;
  };
  std::vector<Subsystem> subs;
  std::vector<double> kappa;  // N x N, symmetric, nonnegative, zero diagonal

  int N() const { return static_cast<int>(subs.size()); }
  double kappa_at(int A, int B) const { return kappa[static_cast<size_t>(A) * N() + B]; }
  void set_kappa(int A, int B, double k);
  void validate() const;

  double temperature(int A, double S) const;
  double internal_energy(int A, double S) const;
  /// entropy-exchange flux J_AB (vanishes at equal temperatures)
  double exchange_flux(int A, int B, double TA, double TB) const;
};

/// Per-subsystem state: position, velocity, entropy, internal-entropy
/// accumulator, thermal displacement, and the accumulated exchange integral
/// int sum_B J_AB dt (audit bookkeeping).
struct FiniteState {
  std::vector<double> q, qdot, S, Sigma, Gamma, exch;

  static FiniteState zeros(int N);
  std::vector<double> pack() const;
  static FiniteState unpack(const std::vector<double>& y, int N);
};

/// Coupled mechanical/thermal rates; throws AdmissibilityError on
/// nonpositive or non-finite temperatures.
void finite_rhs(const FiniteSystem& sys, const std::vector<double>& y, std::vector<double>& dydt);

struct FiniteTrajectory {
  std::vector<double> t;
  std::vector<FiniteState> states;
  const FiniteState& back() const { return states.back(); }
};

/// Adaptive RKDP integration (boost::odeint), sampled at every accepted step.
FiniteTrajectory integrate(const FiniteSystem& sys, const FiniteState& init, double t_end,
                           double rel_tol = 1e-10, double abs_tol = 1e-12);

double total_energy(const FiniteSystem& sys, const FiniteState& st);

struct FiniteAudit {
  double max_energy_drift_rel = 0.0;
  double max_sigma_decrease = 0.0;   // largest backward move of any Sigma_A
  double max_exchange_residual = 0.0;  // |(S_A - Sigma_A) - (.)|_0 - exch_A|
  bool second_law_ok(double tol = 1e-12) const { return max_sigma_decrease <= tol; }
};

FiniteAudit audit(const FiniteSystem& sys, const FiniteTrajectory& traj);

}  // namespace eit
