#pragma once

#include <optional>
#include <span>
#include <vector>

#include "eit/ops.hpp"
#include "eit/thermo.hpp"

namespace eit {

enum class Mode { Euler, CIT, EIT, EIT_JS, EIT_Higher };

const char* to_string(Mode m);
std::optional<Mode> mode_from_string(const std::string& s);

/// Wall ghost rules for each physical field class used in assemblies.
/// Default-constructed rules are pure-calculus (Extrap2); the solver's
/// BoundaryPolicy provides the physics set.
struct FieldRules {
  WallRules scalar;        // rho, s, T, p, p_v, e_hat
  WallRules u;             // velocity
  WallRules q;             // heat flux
  WallRules sigma;         // viscous flux tensor
  WallRules higher;        // higher-order fluxes
  WallRules odd_flux;      // densities crossing the wall (rho u, s u, j_s, e u)
  WallRules momentum;      // momentum density rho u
};

/// Phenomenological coefficients and mode selector.
///
/// Relaxation times are quoted at the reference temperature T_ref; the
/// evolution laws use the pointwise coefficient tau * T/T_ref, i.e. the
/// paper's tau1 = kappa T alpha with constant alpha (and its chain analogue),
/// which keeps the entropy production an exact quadratic form.
struct ClosureSpec {
  Mode mode = Mode::EIT;
  double kappa = 0.0;
  double eta = 0.0;
  double zeta_v = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau0 = 0.0;
  double gamma_p = 0.0;  // gamma': isotropic p_v q entropy-flux coupling
  double gamma_s = 0.0;  // gamma'': deviatoric sigma0.q coupling
  int n_order = 1;
  std::vector<double> kappa_k;  // index k-2 holds kappa_k, k = 2..n
  std::vector<double> tau_k;    // index k-2 holds tau_k
  double T_ref = 1.0;

  // test/diagnostic switches, not exposed in scenarios
  bool omit_noneq_stresses = false;   // deletes tau_q, tau_sigma (energy-leak control)
  bool force_eit_assembly = false;    // run CIT physics through the EIT code path

  bool is_eit() const { return mode == Mode::EIT || mode == Mode::EIT_JS || mode == Mode::EIT_Higher; }
  bool heat_on() const { return kappa > 0.0; }
  bool visc_on() const { return eta > 0.0 || zeta_v > 0.0; }

  /// Mode/coefficient invariants; throws ConfigError with a message naming
  /// the offending key. `eos`, when given, is checked for the tau
  /// consistency relations at T_ref.
  void validate(int dim, const NonEqEOS* eos = nullptr) const;

  /// EOS flux-energy coefficients consistent with these relaxation times,
  /// tau1 = kappa T_ref alpha, tau2 = 2 eta beta, tau0 = d zeta_v beta.
  NonEqEOS derive_eos(int dim, const EquilibriumEOS& eq = {}) const;
};

/// Entropy-flux selector derived from the mode.
struct EntropyFluxSpec {
  enum class Kind { Classical, General, Chain };
  Kind kind = Kind::Classical;
  double gamma_p = 0.0, gamma_s = 0.0;

  static EntropyFluxSpec from(const ClosureSpec& spec);
};

// Instantaneous (classical irreversible) closures --------------------------

/// Newton-Stokes: sigma = 2 eta (Def u)^0 + zeta_v (div u) delta.
SymTensorField newton_stokes(const VectorField& u, const ClosureSpec& spec, const FieldRules& fr = {});
/// Fourier: q = -kappa grad T.
VectorField fourier(const ScalarField& T, const ClosureSpec& spec, const FieldRules& fr = {});

// Relaxation laws -----------------------------------------------------------

struct HeatFluxRates {
  VectorField q_dot;        // d_t q
  VectorField q_truesdell;  // D_t q = q_dot + Lie transport
};

struct ViscousRates {
  SymTensorField sigma_dot;
  SymTensorField sigma_truesdell;
};

struct ChainRates {
  HeatFluxRates q1;
  std::vector<HigherFluxField> qk_dot;        // k = 2..n
  std::vector<HigherFluxField> qk_truesdell;  // D_t q^(k)
};

/// Cattaneo-Christov: tau1 D_t q + q = -kappa grad T (+ JS force), returning
/// d_t q = (-kappa grad T - q)/tau1 - lie_transport_vector_density(u, q).
/// sigma_for_js supplies the isotropic M-coupling force in EIT_JS mode.
HeatFluxRates cattaneo_christov_rates(const VectorField& q, const ScalarField& T,
                                      const VectorField& u, const ClosureSpec& spec,
                                      const SymTensorField* sigma_for_js = nullptr,
                                      const FieldRules& fr = {});
VectorField cattaneo_christov_rhs(const VectorField& q, const ScalarField& T, const VectorField& u,
                                  const ClosureSpec& spec, const FieldRules& fr = {});

/// Compressible Maxwell model with Truesdell rate, decomposed into coupled
/// deviatoric/volumetric equations (the objective rate does not preserve the
/// split).  q_for_js/T supply the JS coupling when active.
ViscousRates maxwell_truesdell_rates(const SymTensorField& sigma, const VectorField& u,
                                     const ClosureSpec& spec, const ScalarField* T = nullptr,
                                     const VectorField* q_for_js = nullptr,
                                     const FieldRules& fr = {});
SymTensorField maxwell_truesdell_rhs(const SymTensorField& sigma, const VectorField& u,
                                     const ClosureSpec& spec, const FieldRules& fr = {});

/// Undecomposed form tau2 D_t sigma + sigma = 2 eta Def u, valid when
/// zeta_v = 2 eta/d and tau0 = tau2 (mode-equality check).
ViscousRates maxwell_truesdell_rates_undecomposed(const SymTensorField& sigma, const VectorField& u,
                                                  const ClosureSpec& spec, const FieldRules& fr = {});

/// Christov-Cattaneo hierarchy
///   tau_k (D_t q^(k) + div q^(k+1)) + q^(k) = -kappa_k grad q^(k-1),
/// with q^(0) = T and q^(n+1) absent; n = 1 reduces bit-for-bit to
/// cattaneo_christov_rates.
ChainRates higher_order_rates(const VectorField& q1, std::span<const HigherFluxField> qk,
                              const ScalarField& T, const VectorField& u, const ClosureSpec& spec,
                              const FieldRules& fr = {});

// Nonequilibrium stresses ----------------------------------------------------
// tau_q = -(de/dq . q) delta + de/dq (x) q, tau_sigma = -(de/dsigma : sigma)
// delta + 2 de/dsigma . sigma, and the rank-k analogue; they enter the
// momentum equation and compensate the Truesdell-vs-material rate mismatch
// in the energy balance.

SymTensorField noneq_stress_q(const VectorField& dq, const VectorField& q);
SymTensorField noneq_stress_sigma(const SymTensorField& dsig, const SymTensorField& sigma);
SymTensorField noneq_stress_higher(double alpha_k, const HigherFluxField& qk);

/// Primed variants of the regrouped momentum form: tau' = tau + (flux
/// energy conjugate contraction) delta, i.e. without the isotropic part.
SymTensorField noneq_stress_q_primed(const VectorField& dq, const VectorField& q);
SymTensorField noneq_stress_sigma_primed(const SymTensorField& dsig, const SymTensorField& sigma);
SymTensorField noneq_stress_higher_primed(double alpha_k, const HigherFluxField& qk);

// Entropy flux and production ----------------------------------------------

struct EntropyFluxResult {
  VectorField j_s;      // q/T + j'
  VectorField j_prime;  // extra part (zero for Classical)
};

EntropyFluxResult entropy_flux(const VectorField& q, const ScalarField& T,
                               const SymTensorField* sigma, std::span<const HigherFluxField> qk,
                               const NonEqEOS& eos, const EntropyFluxSpec& spec);

/// Everything the entropy balance needs, assembled once.
struct EntropySources {
  ScalarField bracket;      // (1/T)(sigma:grad u - j.grad T - dsig:Dsigma - dq.Dq - ...)
  ScalarField div_j;        // div(q/T)
  ScalarField div_j_prime;  // div j' (zero for Classical)
  VectorField j_s;
  ScalarField production;   // bracket + div_j_prime = internal entropy production rate
};

/// state pieces may be null when the corresponding process is off; rates
/// must carry the Truesdell rates produced by the laws above.
EntropySources entropy_sources(const VectorField& u, const SymTensorField* sigma,
                               const VectorField* q, std::span<const HigherFluxField> qk,
                               const EOSEvalFields& ev, const SymTensorField* sigma_truesdell,
                               const VectorField* q_truesdell,
                               std::span<const HigherFluxField> qk_truesdell, const NonEqEOS& eos,
                               const ClosureSpec& spec, const FieldRules& fr = {});

ScalarField entropy_production(const VectorField& u, const SymTensorField* sigma,
                               const VectorField* q, std::span<const HigherFluxField> qk,
                               const EOSEvalFields& ev, const SymTensorField* sigma_truesdell,
                               const VectorField* q_truesdell,
                               std::span<const HigherFluxField> qk_truesdell, const NonEqEOS& eos,
                               const ClosureSpec& spec, const FieldRules& fr = {});

}  // namespace eit
