#include "eit/constitutive.hpp"

#include <cmath>

#include "eit/errors.hpp"

namespace eit {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Euler: return "EULER";
    case Mode::CIT: return "CIT";
    case Mode::EIT: return "EIT";
    case Mode::EIT_JS: return "EIT_JS";
    case Mode::EIT_Higher: return "EIT_HIGHER";
  }
  return "?";
}

std::optional<Mode> mode_from_string(const std::string& s) {
  if (s == "EULER") return Mode::Euler;
  if (s == "CIT") return Mode::CIT;
  if (s == "EIT") return Mode::EIT;
  if (s == "EIT_JS") return Mode::EIT_JS;
  if (s == "EIT_HIGHER") return Mode::EIT_Higher;
  return std::nullopt;
}

void ClosureSpec::validate(int dim, const NonEqEOS* eos) const {
  auto fail = [](const std::string& msg) { throw ConfigError("closure: " + msg); };
  if (!(T_ref > 0.0)) fail("T_ref must be > 0");
  if (kappa < 0 || eta < 0 || zeta_v < 0) fail("transport coefficients must be >= 0");
  if (tau1 < 0 || tau2 < 0 || tau0 < 0) fail("relaxation times must be >= 0");
  switch (mode) {
    case Mode::Euler:
      if (kappa != 0 || eta != 0 || zeta_v != 0)
        fail("mode EULER forces kappa = eta = zeta_v = 0");
      [[fallthrough]];
    case Mode::CIT:
      if (tau1 != 0 || tau2 != 0 || tau0 != 0) fail("mode " + std::string(to_string(mode)) +
                                                    " forces all relaxation times to 0");
      if (gamma_p != 0 || gamma_s != 0) fail("entropy-flux couplings require mode EIT_JS");
      if (n_order != 1) fail("higher-order fluxes require mode EIT_HIGHER");
      break;
    case Mode::EIT:
    case Mode::EIT_JS:
    case Mode::EIT_Higher: {
      if (heat_on() && !(tau1 > 0)) fail("tau1 must be > 0 when kappa > 0 in EIT modes");
      if (!heat_on() && tau1 != 0) fail("tau1 must be 0 when kappa = 0");
      if (visc_on()) {
        if (!(zeta_v > 0) || !(tau0 > 0)) fail("viscosity requires zeta_v > 0 and tau0 > 0");
        if (dim == 2 && (!(eta > 0) || !(tau2 > 0)))
          fail("2D viscosity requires eta > 0 and tau2 > 0");
      } else if (tau2 != 0 || tau0 != 0) {
        fail("tau2/tau0 must be 0 when viscosity is off");
      }
      if (mode != Mode::EIT_JS && (gamma_p != 0 || gamma_s != 0))
        fail("gamma'/gamma'' require mode EIT_JS");
      if (mode == Mode::EIT_Higher) {
        if (n_order < 1) fail("n_order must be >= 1");
        if (!heat_on()) fail("EIT_HIGHER requires kappa > 0");
        if (static_cast<int>(kappa_k.size()) != n_order - 1 ||
            static_cast<int>(tau_k.size()) != n_order - 1)
          fail("kappa_k/tau_k must hold n_order - 1 entries (k = 2..n)");
        for (int m = 0; m < n_order - 1; ++m)
          if (!(kappa_k[m] > 0) || !(tau_k[m] > 0)) fail("chain coefficients must be > 0");
      } else if (n_order != 1 || !kappa_k.empty() || !tau_k.empty()) {
        fail("higher-order fluxes require mode EIT_HIGHER");
      }
      if (eos && is_eit()) {
        auto close = [](double a, double b) {
          return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1e-30});
        };
        if (heat_on() && !close(eos->alpha * kappa * T_ref, tau1))
          fail("tau1 != kappa * T_ref * alpha (EOS consistency)");
        if (visc_on()) {
          if (dim == 2 && eta > 0 && !close(2.0 * eta * eos->beta, tau2))
            fail("tau2 != 2 eta beta (EOS consistency)");
          if (!close(dim * zeta_v * eos->beta, tau0))
            fail("tau0 != d zeta_v beta (EOS consistency)");
        }
      }
      break;
    }
  }
}

NonEqEOS ClosureSpec::derive_eos(int dim, const EquilibriumEOS& eq) const {
  NonEqEOS eos;
  eos.eq = eq;
  if (is_eit()) {
    if (heat_on()) eos.alpha = tau1 / (kappa * T_ref);
    if (visc_on()) eos.beta = dim == 1 || eta == 0 ? tau0 / (dim * zeta_v) : tau2 / (2.0 * eta);
    if (mode == Mode::EIT_Higher) {
      double lk = kappa * T_ref;  // L^1 at T_ref
      double tau_prev = tau1;
      for (int m = 0; m < n_order - 1; ++m) {
        lk = lk * kappa_k[m] / tau_prev;  // L^k = L^{k-1} kappa_k / tau_{k-1}
        eos.higher_alpha.push_back(tau_k[m] / lk);
        tau_prev = tau_k[m];
      }
    }
  }
  return eos;
}

EntropyFluxSpec EntropyFluxSpec::from(const ClosureSpec& spec) {
  EntropyFluxSpec s;
  switch (spec.mode) {
    case Mode::EIT_JS:
      s.kind = Kind::General;
      s.gamma_p = spec.gamma_p;
      s.gamma_s = spec.gamma_s;
      break;
    case Mode::EIT_Higher:
      s.kind = spec.n_order > 1 ? Kind::Chain : Kind::Classical;
      break;
    default:
      s.kind = Kind::Classical;
  }
  return s;
}

SymTensorField newton_stokes(const VectorField& u, const ClosureSpec& spec, const FieldRules& fr) {
  const Grid& g = u.grid();
  SymTensorField out(g, 1);
  if (!spec.visc_on()) return out;
  SymTensorField def = deformation_rate(u, fr.u);
  auto [dev, divu_over_d] = dev_iso_split(def);
  const double d = g.dim;
  for (int c = 0; c < out.ncomp(); ++c)
    for (int i = 0; i < g.cells(); ++i) out(c, i) = 2.0 * spec.eta * dev(c, i);
  // isotropic part zeta_v (div u) delta
  for (int i = 0; i < g.cells(); ++i) {
    const double iso = spec.zeta_v * d * divu_over_d[i];
    out(0, i) += iso;
    if (g.dim == 2) out(2, i) += iso;
  }
  return out;
}

VectorField fourier(const ScalarField& T, const ClosureSpec& spec, const FieldRules& fr) {
  const Grid& g = T.grid();
  VectorField gT = grad_scalar(T, fr.scalar);
  VectorField q(g, 1);
  for (int c = 0; c < g.dim; ++c)
    for (int i = 0; i < g.cells(); ++i) q(c, i) = -spec.kappa * gT(c, i);
  return q;
}

namespace {

// JS isotropic M-coupling parameters: j' = gamma_p p_v q + gamma_s sigma0.q,
// i.e. M_{ijk}^l = a delta_ij delta_k^l + b (delta_ik delta_j^l + delta_jk delta_i^l)
struct JsCoef {
  double a, b;
};
JsCoef js_coef(const ClosureSpec& spec, int dim) {
  return {(spec.gamma_p - spec.gamma_s) / dim, 0.5 * spec.gamma_s};
}

// Heat-flux Truesdell rate, shared by the single-flux law and the chain:
// D_t q = (-kappa grad T - q)/tau_eff - div q2 (+ JS force), with the
// pointwise relaxation time tau_eff = tau1 T/T_ref = kappa T alpha.
VectorField heat_truesdell(const VectorField& q, const ScalarField& T, const ClosureSpec& spec,
                           const HigherFluxField* q2, const SymTensorField* sigma_js,
                           const FieldRules& fr) {
  const Grid& g = q.grid();
  if (!(spec.tau1 > 0))
    throw DegenerateRelaxationError(
        "tau1 = 0 in an EIT-mode heat-flux law; use mode CIT for the instantaneous limit");
  VectorField gT = grad_scalar(T, fr.scalar);
  const double c1 = spec.kappa * spec.T_ref / spec.tau1;
  const double c2 = spec.T_ref / spec.tau1;
  VectorField out(g, 1);
  for (int c = 0; c < g.dim; ++c)
    for (int i = 0; i < g.cells(); ++i) out(c, i) = (-c1 * gT(c, i) - c2 * q(c, i)) / T[i];
  if (q2) {
    VectorField d2 = div_higher_vec(*q2, fr.higher);
    out.axpy(-1.0, d2);
  }
  if (sigma_js && spec.mode == Mode::EIT_JS) {
    // q = K(-grad T/T - alpha D_t q + T grad sigma . M), K = kappa T delta;
    // dividing by tau_eff leaves (kappa T_ref/tau1) T (a grad tr sigma + 2b div sigma)
    const auto [a, b] = js_coef(spec, g.dim);
    ScalarField tr = trace(*sigma_js);
    VectorField gtr = grad_scalar(tr, fr.scalar);
    VectorField dsig = div_tensor(*sigma_js, fr.sigma);
    const double cf = spec.kappa * spec.T_ref / spec.tau1;  // = 1/alpha
    for (int c = 0; c < g.dim; ++c)
      for (int i = 0; i < g.cells(); ++i)
        out(c, i) += cf * T[i] * (a * gtr(c, i) + 2.0 * b * dsig(c, i));
  }
  return out;
}

}  // namespace

HeatFluxRates cattaneo_christov_rates(const VectorField& q, const ScalarField& T,
                                      const VectorField& u, const ClosureSpec& spec,
                                      const SymTensorField* sigma_for_js, const FieldRules& fr) {
  HeatFluxRates r;
  r.q_truesdell = heat_truesdell(q, T, spec, nullptr, sigma_for_js, fr);
  r.q_dot = r.q_truesdell;
  r.q_dot.axpy(-1.0, lie_transport_vector_density(u, q, fr.u, fr.q));
  return r;
}

VectorField cattaneo_christov_rhs(const VectorField& q, const ScalarField& T, const VectorField& u,
                                  const ClosureSpec& spec, const FieldRules& fr) {
  return cattaneo_christov_rates(q, T, u, spec, nullptr, fr).q_dot;
}

ViscousRates maxwell_truesdell_rates(const SymTensorField& sigma, const VectorField& u,
                                     const ClosureSpec& spec, const ScalarField* T,
                                     const VectorField* q_for_js, const FieldRules& fr) {
  const Grid& g = sigma.grid();
  const int d = g.dim;
  if (!(spec.tau0 > 0) || (d == 2 && !(spec.tau2 > 0)))
    throw DegenerateRelaxationError(
        "tau0/tau2 = 0 in an EIT-mode viscous law; use mode CIT for the instantaneous limit");

  GradTensorField gu = jacobian(u, fr.u);
  SymTensorField def = deformation_rate(gu);
  auto [sig0, pv] = dev_iso_split(sigma);
  auto [def0, defiso] = dev_iso_split(def);  // defiso = div u / d

  // source G = Def u (+ JS coupling T (a div q delta + 2 b Def q))
  SymTensorField G = def;
  if (q_for_js && T && spec.mode == Mode::EIT_JS) {
    const auto [a, b] = js_coef(spec, d);
    GradTensorField gq = jacobian(*q_for_js, fr.q);
    SymTensorField defq = deformation_rate(gq);
    for (int i = 0; i < g.cells(); ++i) {
      const double divq = gq.at(0, 0, i) + (d == 2 ? gq.at(1, 1, i) : 0.0);
      const double iso = (*T)[i] * a * divq;
      for (int c = 0; c < G.ncomp(); ++c) G(c, i) += (*T)[i] * 2.0 * b * defq(c, i);
      G(0, i) += iso;
      if (d == 2) G(2, i) += iso;
    }
  }
  auto [G0, Giso] = dev_iso_split(G);  // Giso = tr G / d

  ViscousRates r;
  r.sigma_dot = SymTensorField(g, 1);

  // volumetric: tau0 (D_t p_v + ((d-2)/d) p_v div u - (2/d) sigma0:Def0) + p_v = zeta_v tr G
  ScalarField pv_dot(g, 1);
  {
    VectorField gpv = grad_scalar(pv, fr.scalar);
    ScalarField s0d0 = contract(sig0, def0);
    const double cdd = static_cast<double>(d - 2) / d;
    for (int i = 0; i < g.cells(); ++i) {
      double adv = 0.0;
      for (int c = 0; c < d; ++c) adv += u(c, i) * gpv(c, i);
      const double divu = d * defiso[i];
      pv_dot[i] = -adv - cdd * pv[i] * divu + (2.0 / d) * s0d0[i] +
                  (spec.zeta_v * d * Giso[i] - pv[i]) / spec.tau0;
    }
  }
  if (d == 1) {
    for (int i = 0; i < g.cells(); ++i) r.sigma_dot(0, i) = pv_dot[i];
    r.sigma_truesdell = r.sigma_dot;
    r.sigma_truesdell.axpy(1.0, lie_transport_tensor_density(gu, u, sigma, fr.sigma));
    return r;
  }

  // deviatoric: tau2 (D_t sigma0 + (2/d)(sigma0:Def0) delta - 2 p_v Def0) + sigma0 = 2 eta G0
  {
    SymTensorField lt0 = lie_transport_tensor_density(gu, u, sig0, fr.sigma);
    ScalarField s0d0 = contract(sig0, def0);
    for (int i = 0; i < g.cells(); ++i) {
      const double iso = (2.0 / d) * s0d0[i];
      for (int c = 0; c < 3; ++c) {
        double v = -lt0(c, i) + 2.0 * pv[i] * def0(c, i) +
                   (2.0 * spec.eta * G0(c, i) - sig0(c, i)) / spec.tau2;
        if (c == 0 || c == 2) v -= iso;
        r.sigma_dot(c, i) = v;
      }
      r.sigma_dot(0, i) += pv_dot[i];
      r.sigma_dot(2, i) += pv_dot[i];
    }
  }
  r.sigma_truesdell = r.sigma_dot;
  r.sigma_truesdell.axpy(1.0, lie_transport_tensor_density(gu, u, sigma, fr.sigma));
  return r;
}

SymTensorField maxwell_truesdell_rhs(const SymTensorField& sigma, const VectorField& u,
                                     const ClosureSpec& spec, const FieldRules& fr) {
  return maxwell_truesdell_rates(sigma, u, spec, nullptr, nullptr, fr).sigma_dot;
}

ViscousRates maxwell_truesdell_rates_undecomposed(const SymTensorField& sigma, const VectorField& u,
                                                  const ClosureSpec& spec, const FieldRules& fr) {
  const Grid& g = sigma.grid();
  const double tau = g.dim == 1 ? spec.tau0 : spec.tau2;
  if (!(tau > 0)) throw DegenerateRelaxationError("tau = 0 in the undecomposed Maxwell law");
  const double etaeff = g.dim == 1 ? spec.zeta_v / 2.0 : spec.eta;  // 2 eta Def u = zeta_v du in 1D
  GradTensorField gu = jacobian(u, fr.u);
  SymTensorField def = deformation_rate(gu);
  ViscousRates r;
  r.sigma_truesdell = SymTensorField(g, 1);
  for (int c = 0; c < sigma.ncomp(); ++c)
    for (int i = 0; i < g.cells(); ++i)
      r.sigma_truesdell(c, i) = (2.0 * etaeff * def(c, i) - sigma(c, i)) / tau;
  r.sigma_dot = r.sigma_truesdell;
  r.sigma_dot.axpy(-1.0, lie_transport_tensor_density(gu, u, sigma, fr.sigma));
  return r;
}

ChainRates higher_order_rates(const VectorField& q1, std::span<const HigherFluxField> qk,
                              const ScalarField& T, const VectorField& u, const ClosureSpec& spec,
                              const FieldRules& fr) {
  const Grid& g = q1.grid();
  if (spec.n_order < 1) throw ConfigError("higher_order_rates: n_order must be >= 1");
  if (static_cast<int>(qk.size()) != spec.n_order - 1)
    throw ContractViolation("higher_order_rates: chain length != n_order - 1");

  ChainRates out;
  const HigherFluxField* q2 = qk.empty() ? nullptr : &qk[0];
  out.q1.q_truesdell = heat_truesdell(q1, T, spec, q2, nullptr, fr);
  out.q1.q_dot = out.q1.q_truesdell;
  out.q1.q_dot.axpy(-1.0, lie_transport_vector_density(u, q1, fr.u, fr.q));

  for (int m = 0; m < spec.n_order - 1; ++m) {
    const int k = m + 2;
    const double tau = spec.tau_k[m];
    const double ck = spec.kappa_k[m] / tau;  // kappa_eff/tau_eff; the T-scaling cancels
    const double cq = spec.T_ref / tau;       // 1/tau_eff = (T_ref/tau)/T
    HigherFluxField grad_lower =
        k == 2 ? sym_grad_higher(q1, fr.q) : sym_grad_higher(qk[m - 1], fr.higher);
    HigherFluxField dq(g, k);
    for (int c = 0; c < dq.ncomp(); ++c)
      for (int i = 0; i < g.cells(); ++i)
        dq(c, i) = -ck * grad_lower(c, i) - cq * qk[m](c, i) / T[i];
    if (m + 1 < static_cast<int>(qk.size())) {
      HigherFluxField dnext = div_higher(qk[m + 1], fr.higher);
      dq.axpy(-1.0, dnext);
    }
    out.qk_truesdell.push_back(dq);
    HigherFluxField qdot = dq;
    qdot.axpy(-1.0, lie_transport_higher_density(u, qk[m], fr.u, fr.higher));
    out.qk_dot.push_back(std::move(qdot));
  }
  return out;
}

namespace {
void subtract_iso(SymTensorField& t, const ScalarField& iso) {
  const Grid& g = t.grid();
  for (int i = 0; i < g.cells(); ++i) {
    t(0, i) -= iso[i];
    if (g.dim == 2) t(2, i) -= iso[i];
  }
}
}  // namespace

SymTensorField noneq_stress_q_primed(const VectorField& dq, const VectorField& q) {
  const Grid& g = q.grid();
  SymTensorField out(g, 1);
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = dq(0, i) * q(0, i);
    return out;
  }
  for (int i = 0; i < g.cells(); ++i) {
    out(0, i) = dq(0, i) * q(0, i);
    out(1, i) = 0.5 * (dq(0, i) * q(1, i) + dq(1, i) * q(0, i));
    out(2, i) = dq(1, i) * q(1, i);
  }
  return out;
}

SymTensorField noneq_stress_q(const VectorField& dq, const VectorField& q) {
  SymTensorField out = noneq_stress_q_primed(dq, q);
  subtract_iso(out, dot(dq, q));
  return out;
}

SymTensorField noneq_stress_sigma_primed(const SymTensorField& dsig, const SymTensorField& sigma) {
  const Grid& g = sigma.grid();
  SymTensorField out(g, 1);
  if (g.dim == 1) {
    for (int i = 0; i < g.cells(); ++i) out(0, i) = 2.0 * dsig(0, i) * sigma(0, i);
    return out;
  }
  for (int i = 0; i < g.cells(); ++i) {
    const double axx = dsig(0, i), axy = dsig(1, i), ayy = dsig(2, i);
    const double sxx = sigma(0, i), sxy = sigma(1, i), syy = sigma(2, i);
    out(0, i) = 2.0 * (axx * sxx + axy * sxy);
    out(1, i) = axx * sxy + axy * syy + axy * sxx + ayy * sxy;  // symmetrized
    out(2, i) = 2.0 * (axy * sxy + ayy * syy);
  }
  return out;
}

SymTensorField noneq_stress_sigma(const SymTensorField& dsig, const SymTensorField& sigma) {
  SymTensorField out = noneq_stress_sigma_primed(dsig, sigma);
  subtract_iso(out, contract(dsig, sigma));
  return out;
}

SymTensorField noneq_stress_higher_primed(double alpha_k, const HigherFluxField& qk) {
  SymTensorField m = higher_square_sym2(qk);
  m.scale(alpha_k * qk.order);
  return m;
}

SymTensorField noneq_stress_higher(double alpha_k, const HigherFluxField& qk) {
  SymTensorField out = noneq_stress_higher_primed(alpha_k, qk);
  ScalarField c = contract(qk, qk);
  c.scale(alpha_k);
  subtract_iso(out, c);
  return out;
}

EntropyFluxResult entropy_flux(const VectorField& q, const ScalarField& T,
                               const SymTensorField* sigma, std::span<const HigherFluxField> qk,
                               const NonEqEOS& eos, const EntropyFluxSpec& spec) {
  const Grid& g = q.grid();
  EntropyFluxResult out;
  out.j_prime = VectorField(g, 1);
  out.j_s = VectorField(g, 1);
  switch (spec.kind) {
    case EntropyFluxSpec::Kind::Classical:
      break;
    case EntropyFluxSpec::Kind::General: {
      if (sigma) {
        auto [sig0, pv] = dev_iso_split(*sigma);
        VectorField s0q = sym_dot_vec(sig0, q);
        for (int c = 0; c < g.dim; ++c)
          for (int i = 0; i < g.cells(); ++i)
            out.j_prime(c, i) = spec.gamma_p * pv[i] * q(c, i) + spec.gamma_s * s0q(c, i);
      }
      break;
    }
    case EntropyFluxSpec::Kind::Chain: {
      // j' = sum_k gamma_k q^(k+1).q^(k), gamma_k = -alpha_k / T
      if (!qk.empty()) {
        VectorField t = higher_dot_down(qk[0], q);
        for (int c = 0; c < g.dim; ++c)
          for (int i = 0; i < g.cells(); ++i) out.j_prime(c, i) -= eos.alpha * t(c, i) / T[i];
        for (size_t m = 0; m + 1 < qk.size(); ++m) {
          const double ak = eos.higher_alpha.size() > m ? eos.higher_alpha[m] : 0.0;
          VectorField tk = higher_dot_down(qk[m + 1], qk[m]);
          for (int c = 0; c < g.dim; ++c)
            for (int i = 0; i < g.cells(); ++i) out.j_prime(c, i) -= ak * tk(c, i) / T[i];
        }
      }
      break;
    }
  }
  for (int c = 0; c < g.dim; ++c)
    for (int i = 0; i < g.cells(); ++i) out.j_s(c, i) = q(c, i) / T[i] + out.j_prime(c, i);
  return out;
}

EntropySources entropy_sources(const VectorField& u, const SymTensorField* sigma,
                               const VectorField* q, std::span<const HigherFluxField> qk,
                               const EOSEvalFields& ev, const SymTensorField* sigma_truesdell,
                               const VectorField* q_truesdell,
                               std::span<const HigherFluxField> qk_truesdell, const NonEqEOS& eos,
                               const ClosureSpec& spec, const FieldRules& fr) {
  const Grid& g = u.grid();
  EntropySources out;
  out.bracket = ScalarField(g, 1);
  out.div_j = ScalarField(g, 0);
  out.div_j_prime = ScalarField(g, 0);
  out.j_s = VectorField(g, 1);

  ScalarField num(g, 1);  // numerator of the T-bracket
  if (sigma) {
    SymTensorField def = deformation_rate(u, fr.u);
    ScalarField sd = contract(*sigma, def);
    num.axpy(1.0, sd);
  }
  VectorField j(g, 1);
  if (q) {
    VectorField gT = grad_scalar(ev.T, fr.scalar);
    for (int c = 0; c < g.dim; ++c)
      for (int i = 0; i < g.cells(); ++i) {
        j(c, i) = (*q)(c, i) / ev.T[i];
        num[i] -= j(c, i) * gT(c, i);
      }
  }
  if (sigma && sigma_truesdell) {
    ScalarField t = contract(ev.dsig, *sigma_truesdell);
    num.axpy(-1.0, t);
  }
  if (q && q_truesdell) {
    ScalarField t = dot(ev.dq, *q_truesdell);
    num.axpy(-1.0, t);
  }
  for (size_t m = 0; m < qk_truesdell.size() && m < qk.size(); ++m) {
    ScalarField t = contract(ev.dqk[m], qk_truesdell[m]);
    num.axpy(-1.0, t);
  }
  for (int i = 0; i < g.cells(); ++i) out.bracket[i] = num[i] / ev.T[i];

  if (q) {
    out.div_j = div_vector(j, fr.odd_flux);
    EntropyFluxResult jf = entropy_flux(*q, ev.T, sigma, qk, eos, EntropyFluxSpec::from(spec));
    out.j_s = jf.j_s;
    if (jf.j_prime.max_abs() > 0.0) out.div_j_prime = div_vector(jf.j_prime, fr.odd_flux);
  }
  out.production = out.bracket;
  out.production.axpy(1.0, out.div_j_prime);
  return out;
}

ScalarField entropy_production(const VectorField& u, const SymTensorField* sigma,
                               const VectorField* q, std::span<const HigherFluxField> qk,
                               const EOSEvalFields& ev, const SymTensorField* sigma_truesdell,
                               const VectorField* q_truesdell,
                               std::span<const HigherFluxField> qk_truesdell, const NonEqEOS& eos,
                               const ClosureSpec& spec, const FieldRules& fr) {
  return entropy_sources(u, sigma, q, qk, ev, sigma_truesdell, q_truesdell, qk_truesdell, eos, spec,
                         fr)
      .production;
}

}  // namespace eit
