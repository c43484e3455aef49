#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eit/field.hpp"
#include "eit/ops.hpp"

namespace eit {

/// Perfect-gas-type equilibrium internal energy density
///   eps(rho, s) = K rho^gamma_ad exp((s/rho - s_ref)/c_v),
/// strictly convex in s with T = d eps/d s = eps/(c_v rho) > 0.
struct EquilibriumEOS {
  double K = 1.0;
  double gamma_ad = 1.4;
  double c_v = 1.0;
  double s_ref = 0.0;
  double rho_ref = 1.0;

  double eps(double rho, double s) const;
  double deps_drho(double rho, double s) const;
  double deps_ds(double rho, double s) const;  // temperature
  double d2eps_ds2(double rho, double s) const;
  double pressure(double rho, double s) const { return (gamma_ad - 1.0) * eps(rho, s); }
  double sound_speed(double rho, double s) const;
  /// s such that deps_ds(rho, s) = T (closed form); IC helper.
  double entropy_from_T(double rho, double T) const;
};

/// Quadratic flux-energy closure
///   eps_hat = eps_eq + (alpha/2)|q|^2 + (beta/2) sigma:sigma
///             + sum_k (alpha_k/2)|q^(k)|^2,
/// constant coefficients by default; alpha_fn/beta_fn hooks accept
/// state-dependent coefficients (derivatives handled, production
/// bookkeeping for the state-dependent case not validated).
struct NonEqEOS {
  EquilibriumEOS eq;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> higher_alpha;  // index k-2 holds alpha_k, k = 2..n
  std::function<double(double rho, double s)> alpha_fn;  // optional
  std::function<double(double rho, double s)> beta_fn;   // optional

  double alpha_at(double rho, double s) const { return alpha_fn ? alpha_fn(rho, s) : alpha; }
  double beta_at(double rho, double s) const { return beta_fn ? beta_fn(rho, s) : beta; }
};

/// Pointwise evaluation record.
struct EOSEval {
  double eps_hat = 0.0;
  double T = 0.0;
  double p = 0.0;
  double p_hat = 0.0;
  std::array<double, 2> dq{0.0, 0.0};
  std::array<double, 3> dsig{0.0, 0.0, 0.0};
  std::vector<std::vector<double>> dqk;
};

struct EOSEvalFields {
  ScalarField eps_hat, T, p, p_hat;
  ScalarField de_drho;  // d eps_hat / d rho
  VectorField dq;       // d eps_hat / d q = alpha q
  SymTensorField dsig;  // d eps_hat / d sigma = beta sigma
  std::vector<HigherFluxField> dqk;
};

/// Field-level evaluation. sigma/q/q_higher may be null/empty (process off).
/// Throws AdmissibilityError with the offending cell on rho <= 0 or T <= 0.
EOSEvalFields eval(const NonEqEOS& eos, const ScalarField& rho, const ScalarField& s,
                   const SymTensorField* sigma, const VectorField* q,
                   std::span<const HigherFluxField> q_higher = {});

struct TotalEnergy {
  ScalarField e_hat;
  double integral = 0.0;
};

TotalEnergy total_energy(const NonEqEOS& eos, const VectorField& u, const ScalarField& rho,
                         const ScalarField& s, const SymTensorField* sigma, const VectorField* q,
                         std::span<const HigherFluxField> q_higher = {});

/// Central finite differences of eps_hat against the analytic EOSEval
/// entries at a single state point.
struct DerivativeReport {
  double max_rel_err = 0.0;
  std::string worst;
  bool ok(double tol = 1e-6) const { return max_rel_err <= tol; }
};

struct StatePoint {
  double rho = 1.0, s = 0.0;
  std::array<double, 2> q{0.0, 0.0};
  std::array<double, 3> sigma{0.0, 0.0, 0.0};
  std::vector<std::vector<double>> q_higher;  // per k, stored components
  int dim = 1;
  std::vector<int> higher_orders;
};

EOSEval eval_point(const NonEqEOS& eos, const StatePoint& st);
DerivativeReport check_derivatives(const NonEqEOS& eos, const StatePoint& st, double h);

/// Cattaneo relaxation coefficient tau1 = kappa T alpha.
inline double consistency_tau1(double kappa, double T, double alpha) { return kappa * T * alpha; }

}  // namespace eit
