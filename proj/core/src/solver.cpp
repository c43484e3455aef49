#include "eit/solver.hpp"

#include <cmath>

#include "eit/errors.hpp"

namespace eit {

FieldSet FieldSet::zeros(const Grid& g, int n_order) {
  FieldSet st;
  st.rho = ScalarField(g, 1);
  st.s = ScalarField(g, 1);
  st.u = VectorField(g, 0);
  st.sigma = SymTensorField(g, 1);
  st.q = VectorField(g, 1);
  for (int k = 2; k <= n_order; ++k) st.q_higher.emplace_back(g, k);
  st.gamma_td = ScalarField(g, 0);
  st.varsigma = ScalarField(g, 1);
  return st;
}

void FieldSet::axpy(double a, const FieldSet& other) {
  rho.axpy(a, other.rho);
  s.axpy(a, other.s);
  u.axpy(a, other.u);
  sigma.axpy(a, other.sigma);
  q.axpy(a, other.q);
  for (size_t k = 0; k < q_higher.size(); ++k) q_higher[k].axpy(a, other.q_higher[k]);
  gamma_td.axpy(a, other.gamma_td);
  varsigma.axpy(a, other.varsigma);
}

void FieldSet::combine(double a, double b, const FieldSet& other) {
  auto mix = [&](FieldBase& x, const FieldBase& y) {
    for (size_t i = 0; i < x.raw().size(); ++i) x.raw()[i] = a * x.raw()[i] + b * y.raw()[i];
  };
  mix(rho, other.rho);
  mix(s, other.s);
  mix(u, other.u);
  mix(sigma, other.sigma);
  mix(q, other.q);
  for (size_t k = 0; k < q_higher.size(); ++k) mix(q_higher[k], other.q_higher[k]);
  mix(gamma_td, other.gamma_td);
  mix(varsigma, other.varsigma);
}

bool FieldSet::finite() const {
  auto ok = [](const FieldBase& f) {
    for (double v : f.raw())
      if (!std::isfinite(v)) return false;
    return true;
  };
  if (!ok(rho) || !ok(s) || !ok(u) || !ok(sigma) || !ok(q) || !ok(gamma_td) || !ok(varsigma))
    return false;
  for (const auto& qk : q_higher)
    if (!ok(qk)) return false;
  return true;
}

FieldRules BoundaryPolicy::rules(const Grid& g) const {
  FieldRules fr;
  fr.scalar = WallRules(GhostRule::Even);
  fr.u = WallRules(GhostRule::Odd);  // no-slip: every component vanishes
  fr.sigma = WallRules(GhostRule::Even);
  fr.higher = WallRules(GhostRule::Even);
  fr.momentum = WallRules(GhostRule::Odd);  // rho u, s u, varsigma u
  fr.q = WallRules(GhostRule::Even);
  fr.odd_flux = WallRules(GhostRule::Even);
  for (int a = 0; a < g.dim; ++a) {
    fr.q.set(a, a, GhostRule::Odd);         // normal heat flux vanishes (insulated)
    fr.odd_flux.set(a, a, GhostRule::Odd);  // normal j_s vanishes at the face
  }
  return fr;
}

namespace {

// -div(f u)
ScalarField scalar_density_transport(const ScalarField& f, const VectorField& u,
                                     const WallRules& wr) {
  const Grid& g = f.grid();
  VectorField fu(g, 1);
  for (int c = 0; c < g.dim; ++c)
    for (int i = 0; i < g.cells(); ++i) fu(c, i) = f[i] * u(c, i);
  ScalarField out = div_vector(fu, wr);
  out.scale(-1.0);
  return out;
}

ScalarField extract_comp(const FieldBase& f, int c) {
  ScalarField t(f.grid(), 0);
  for (int i = 0; i < f.grid().cells(); ++i) t[i] = f(c, i);
  return t;
}

struct AssemblyContext {
  const ClosureSpec& spec;
  const NonEqEOS& eos;
  const FieldRules& fr;
  MomentumForm form;
  bool frozen_hydro;
  double nu4;
};

SystemRhs assemble(const FieldSet& st, const AssemblyContext& cx) {
  const Grid& g = st.grid();
  const int d = g.dim;
  const ClosureSpec& spec = cx.spec;
  const bool eit_path = spec.is_eit() || spec.force_eit_assembly;
  const bool relaxing = spec.is_eit();
  const bool heat = spec.heat_on() && spec.mode != Mode::Euler;
  const bool visc = spec.visc_on() && spec.mode != Mode::Euler;
  const bool chain = spec.mode == Mode::EIT_Higher && spec.n_order > 1;

  SystemRhs out;
  out.rate = FieldSet::zeros(g, spec.n_order);

  // Effective fluxes: state fields under relaxation, instantaneous closures
  // in CIT (and in the forced-EIT CIT assembly).
  if (relaxing) {
    if (visc) out.sigma_eff = st.sigma;
    if (heat) out.q_eff = st.q;
  } else {
    if (heat) {
      EOSEvalFields pre = eval(cx.eos, st.rho, st.s, nullptr, nullptr);
      out.q_eff = fourier(pre.T, spec, cx.fr);
    }
    if (visc) out.sigma_eff = newton_stokes(st.u, spec, cx.fr);
  }
  const SymTensorField* sig = visc ? &out.sigma_eff : nullptr;
  const VectorField* q = heat ? &out.q_eff : nullptr;
  std::span<const HigherFluxField> qk = chain && relaxing
                                            ? std::span<const HigherFluxField>(st.q_higher)
                                            : std::span<const HigherFluxField>{};

  out.ev = eval(cx.eos, st.rho, st.s, sig, q, qk);
  out.T = out.ev.T;
  out.p = out.ev.p;
  out.p_hat = out.ev.p_hat;

  // Relaxation rates for the flux state (EIT only).
  const SymTensorField* sigma_truesdell = nullptr;
  const VectorField* q_truesdell = nullptr;
  ViscousRates vr;
  HeatFluxRates hr;
  ChainRates cr;
  std::span<const HigherFluxField> qk_truesdell{};
  if (relaxing && heat) {
    if (spec.mode == Mode::EIT_Higher) {
      cr = higher_order_rates(st.q, st.q_higher, out.T, st.u, spec, cx.fr);
      out.rate.q = cr.q1.q_dot;
      hr.q_truesdell = cr.q1.q_truesdell;
      for (size_t m = 0; m < cr.qk_dot.size(); ++m) out.rate.q_higher[m] = cr.qk_dot[m];
      qk_truesdell = cr.qk_truesdell;
    } else {
      hr = cattaneo_christov_rates(st.q, out.T, st.u, spec,
                                   spec.mode == Mode::EIT_JS && visc ? sig : nullptr, cx.fr);
      out.rate.q = hr.q_dot;
    }
    q_truesdell = &hr.q_truesdell;
  }
  if (relaxing && visc) {
    vr = maxwell_truesdell_rates(st.sigma, st.u, spec, &out.T,
                                 spec.mode == Mode::EIT_JS && heat ? q : nullptr, cx.fr);
    out.rate.sigma = vr.sigma_dot;
    sigma_truesdell = &vr.sigma_truesdell;
  }

  // Mass and entropy balances.
  out.rate.rho = scalar_density_transport(st.rho, st.u, cx.fr.momentum);
  EntropySources es = entropy_sources(st.u, sig, q, qk, out.ev, sigma_truesdell, q_truesdell,
                                      qk_truesdell, cx.eos, spec, cx.fr);
  out.production = es.production;
  out.j_s = es.j_s;
  out.rate.s = scalar_density_transport(st.s, st.u, cx.fr.momentum);
  if (heat || visc) {
    out.rate.s.axpy(-1.0, es.div_j);
    out.rate.s.axpy(1.0, es.bracket);
  }

  // Momentum.
  GradTensorField gu = jacobian(st.u, cx.fr.u);
  out.m_dot = VectorField(g, 1);
  SymTensorField stress(g, 1);
  bool have_stress = false;
  if (visc) {
    stress.axpy(1.0, out.sigma_eff);
    have_stress = true;
  }
  if (eit_path && !spec.omit_noneq_stresses) {
    const bool primed = cx.form == MomentumForm::B;
    if (heat) {
      stress.axpy(1.0,
                  primed ? noneq_stress_q_primed(out.ev.dq, *q) : noneq_stress_q(out.ev.dq, *q));
      have_stress = true;
    }
    if (visc) {
      stress.axpy(1.0, primed ? noneq_stress_sigma_primed(out.ev.dsig, *sig)
                              : noneq_stress_sigma(out.ev.dsig, *sig));
      have_stress = true;
    }
    for (size_t m = 0; m < qk.size(); ++m) {
      const double ak = cx.eos.higher_alpha.size() > m ? cx.eos.higher_alpha[m] : 0.0;
      stress.axpy(1.0,
                  primed ? noneq_stress_higher_primed(ak, qk[m]) : noneq_stress_higher(ak, qk[m]));
      have_stress = true;
    }
  }

  if (!cx.frozen_hydro) {
    if (cx.form == MomentumForm::B) {
      // rho (d_t u + u.grad u) = -grad p_hat + div(sigma + tau'); with the
      // nonequilibrium stresses deleted this degrades to -grad p + div sigma
      const bool with_tau = eit_path && !spec.omit_noneq_stresses;
      VectorField gp = grad_scalar(with_tau ? out.ev.p_hat : out.ev.p, cx.fr.scalar);
      VectorField dstress = have_stress ? div_tensor(stress, cx.fr.sigma) : VectorField(g, 1);
      for (int a = 0; a < d; ++a)
        for (int i = 0; i < g.cells(); ++i) {
          double adv = 0.0;
          for (int c = 0; c < d; ++c) adv += st.u(c, i) * gu.at(c, a, i);
          double f = -gp(a, i);
          if (have_stress) f += dstress(a, i);
          out.rate.u(a, i) = f / st.rho[i] - adv;
        }
      for (int a = 0; a < d; ++a)
        for (int i = 0; i < g.cells(); ++i)
          out.m_dot(a, i) = st.rho[i] * out.rate.u(a, i) + st.u(a, i) * out.rate.rho[i];
    } else {
      // Proposition form: d_t m = -L_u m + rho grad(dl/drho) + s grad(dl/ds)
      //   - dl/dsigma : grad sigma - dl/dq . grad q + div(sigma + tau),
      // with (L_u m)_a = u.grad m_a + m_c d_a u^c + m_a div u for the
      // momentum 1-form density m = rho u.
      VectorField m(g, 1);
      for (int a = 0; a < d; ++a)
        for (int i = 0; i < g.cells(); ++i) m(a, i) = st.rho[i] * st.u(a, i);
      VectorField gm_adv(g, 1);
      for (int a = 0; a < d; ++a) {
        VectorField gma = grad_scalar(extract_comp(m, a), cx.fr.momentum);
        for (int i = 0; i < g.cells(); ++i) {
          double adv = 0.0;
          for (int c = 0; c < d; ++c) adv += st.u(c, i) * gma(c, i);
          gm_adv(a, i) = adv;
        }
      }
      ScalarField dl_drho(g, 0);
      for (int i = 0; i < g.cells(); ++i) {
        double ke = 0.0;
        for (int c = 0; c < d; ++c) ke += st.u(c, i) * st.u(c, i);
        dl_drho[i] = 0.5 * ke - out.ev.de_drho[i];
      }
      VectorField g_dl_drho = grad_scalar(dl_drho, cx.fr.scalar);
      VectorField gT = grad_scalar(out.T, cx.fr.scalar);
      VectorField dstress = have_stress ? div_tensor(stress, cx.fr.sigma) : VectorField(g, 1);

      for (int a = 0; a < d; ++a)
        for (int i = 0; i < g.cells(); ++i) {
          double lie_m = gm_adv(a, i);
          double div_u = 0.0;
          for (int c = 0; c < d; ++c) {
            lie_m += m(c, i) * gu.at(a, c, i);
            div_u += gu.at(c, c, i);
          }
          lie_m += m(a, i) * div_u;
          double v = -lie_m + st.rho[i] * g_dl_drho(a, i) - st.s[i] * gT(a, i);
          if (have_stress) v += dstress(a, i);
          out.m_dot(a, i) = v;
        }
      // + dsig : grad sigma + dq . grad q + sum_k dqk : grad qk
      if (eit_path && visc) {
        for (int c = 0; c < sig->ncomp(); ++c) {
          const double w = (d == 2 && c == 1) ? 2.0 : 1.0;
          VectorField gs = grad_scalar(extract_comp(*sig, c), cx.fr.sigma);
          for (int a = 0; a < d; ++a)
            for (int i = 0; i < g.cells(); ++i)
              out.m_dot(a, i) += w * out.ev.dsig(c, i) * gs(a, i);
        }
      }
      if (eit_path && heat) {
        for (int c = 0; c < d; ++c) {
          WallRules wr_c;  // component c of q differentiated along every axis
          for (int ax = 0; ax < d; ++ax) wr_c.set(ax, 0, cx.fr.q(ax, c));
          VectorField gq = grad_scalar(extract_comp(*q, c), wr_c);
          for (int a = 0; a < d; ++a)
            for (int i = 0; i < g.cells(); ++i) out.m_dot(a, i) += out.ev.dq(c, i) * gq(a, i);
        }
      }
      for (size_t mi = 0; mi < qk.size(); ++mi) {
        for (int c = 0; c < qk[mi].ncomp(); ++c) {
          const double w = qk[mi].weight(c);
          VectorField gqk = grad_scalar(extract_comp(qk[mi], c), cx.fr.higher);
          for (int a = 0; a < d; ++a)
            for (int i = 0; i < g.cells(); ++i)
              out.m_dot(a, i) += w * out.ev.dqk[mi](c, i) * gqk(a, i);
        }
      }
      for (int a = 0; a < d; ++a)
        for (int i = 0; i < g.cells(); ++i)
          out.rate.u(a, i) = (out.m_dot(a, i) - st.u(a, i) * out.rate.rho[i]) / st.rho[i];
    }
  }

  // Ledger quadratures: D_t gamma = T, Dbar_t varsigma = production.
  {
    VectorField ggam = grad_scalar(st.gamma_td, cx.fr.scalar);
    for (int i = 0; i < g.cells(); ++i) {
      double adv = 0.0;
      for (int c = 0; c < d; ++c) adv += st.u(c, i) * ggam(c, i);
      out.rate.gamma_td[i] = out.T[i] - adv;
    }
    out.rate.varsigma = scalar_density_transport(st.varsigma, st.u, cx.fr.momentum);
    out.rate.varsigma.axpy(1.0, out.production);
  }

  if (cx.nu4 > 0.0) {
    add_hyperdiffusion(out.rate.rho, st.rho, cx.nu4, cx.fr.scalar);
    add_hyperdiffusion(out.rate.s, st.s, cx.nu4, cx.fr.scalar);
    if (!cx.frozen_hydro) add_hyperdiffusion(out.rate.u, st.u, cx.nu4, cx.fr.u);
    if (relaxing && visc) add_hyperdiffusion(out.rate.sigma, st.sigma, cx.nu4, cx.fr.sigma);
    if (relaxing && heat) add_hyperdiffusion(out.rate.q, st.q, cx.nu4, cx.fr.q);
  }
  if (cx.frozen_hydro) {
    out.rate.rho.fill(0.0);
    out.rate.u.fill(0.0);
  }
  return out;
}

}  // namespace

Solver::Solver(const Grid& g, SolverConfig cfg) : grid_(g), cfg_(std::move(cfg)) {
  cfg_.closure.validate(g.dim, &cfg_.eos);
  rules_ = cfg_.bc.rules(g);
}

SystemRhs Solver::rhs(const FieldSet& st) const {
  AssemblyContext cx{cfg_.closure, cfg_.eos, rules_, cfg_.form, cfg_.frozen_hydro, cfg_.nu4};
  return assemble(st, cx);
}

void Solver::step(FieldSet& st, double dt, long step_index) const {
  if (!st.finite())
    throw BlowupError("non-finite state entering step " + std::to_string(step_index), step_index);
  if (cfg_.ctrl.scheme == StepControl::Scheme::RK4) {
    SystemRhs k1 = rhs(st);
    FieldSet y2 = st;
    y2.axpy(0.5 * dt, k1.rate);
    SystemRhs k2 = rhs(y2);
    FieldSet y3 = st;
    y3.axpy(0.5 * dt, k2.rate);
    SystemRhs k3 = rhs(y3);
    FieldSet y4 = st;
    y4.axpy(dt, k3.rate);
    SystemRhs k4 = rhs(y4);
    st.axpy(dt / 6.0, k1.rate);
    st.axpy(2.0 * dt / 6.0, k2.rate);
    st.axpy(2.0 * dt / 6.0, k3.rate);
    st.axpy(dt / 6.0, k4.rate);
  } else {
    // SSP-RK3 (Shu-Osher)
    FieldSet u1 = st;
    u1.axpy(dt, rhs(st).rate);
    FieldSet u2 = u1;
    u2.axpy(dt, rhs(u1).rate);
    u2.combine(0.25, 0.75, st);
    FieldSet u3 = u2;
    u3.axpy(dt, rhs(u2).rate);
    u3.combine(2.0 / 3.0, 1.0 / 3.0, st);
    st = u3;
  }
  if (!st.finite())
    throw BlowupError("non-finite state after step " + std::to_string(step_index), step_index);
}

double Solver::auto_dt(const FieldSet& st) const {
  const ClosureSpec& spec = cfg_.closure;
  const Grid& g = grid_;
  double hmin = g.h[0];
  if (g.dim == 2) hmin = std::min(hmin, g.h[1]);

  double signal = 0.0;
  double rho_min = 1e300;
  for (int i = 0; i < g.cells(); ++i) {
    double uu = 0.0;
    for (int c = 0; c < g.dim; ++c) uu = std::max(uu, std::abs(st.u(c, i)));
    signal = std::max(signal, uu + cfg_.eos.eq.sound_speed(st.rho[i], st.s[i]));
    rho_min = std::min(rho_min, st.rho[i]);
  }
  if (spec.is_eit() && spec.heat_on() && spec.tau1 > 0) {
    // second-sound estimate sqrt(kappa T_s/(T tau1)) = sqrt(kappa/(rho c_v tau1))
    signal += std::sqrt(spec.kappa / (rho_min * cfg_.eos.eq.c_v * spec.tau1));
  }
  double dt = hmin / signal;

  if (spec.is_eit()) {
    double tau_min = 1e300;
    if (spec.heat_on()) tau_min = std::min(tau_min, spec.tau1);
    if (spec.visc_on()) {
      tau_min = std::min(tau_min, spec.tau0);
      if (g.dim == 2) tau_min = std::min(tau_min, spec.tau2);
    }
    for (double t : spec.tau_k) tau_min = std::min(tau_min, t);
    dt = std::min(dt, tau_min / 4.0);
  } else if (spec.mode == Mode::CIT) {
    // instantaneous closures make the system parabolic under explicit RK
    double D = 0.0;
    if (spec.heat_on()) D = std::max(D, spec.kappa / (rho_min * cfg_.eos.eq.c_v));
    if (spec.visc_on()) D = std::max(D, std::max(spec.eta, spec.zeta_v) / rho_min);
    if (D > 0) dt = std::min(dt, hmin * hmin / (2.0 * g.dim * D));
  }
  return cfg_.ctrl.cfl * dt * cfg_.ctrl.dt_scale;
}

Solver::Budgets Solver::budgets(const FieldSet& st) const {
  SystemRhs r = rhs(st);
  Budgets b;
  b.mass = integral(st.rho);
  b.entropy = integral(st.s);
  b.varsigma = integral(st.varsigma);
  b.energy = energy(st).integral;
  b.production_integral = integral(r.production);
  b.production_min = 1e300;
  for (int i = 0; i < grid_.cells(); ++i)
    b.production_min = std::min(b.production_min, r.production[i]);

  // surface integral of T j_s . n over wall faces (face values from ghosts)
  const Grid& g = grid_;
  for (int a = 0; a < g.dim; ++a) {
    if (g.periodic(a)) continue;
    const double dA = g.dim == 1 ? 1.0 : g.h[1 - a];
    VectorField w(g, 1);
    for (int c = 0; c < g.dim; ++c)
      for (int i = 0; i < g.cells(); ++i) w(c, i) = r.T[i] * r.j_s(c, i);
    const int n0 = g.n[0], n1 = g.n[1];
    const int nedge = a == 0 ? n1 : n0;
    for (int j = 0; j < nedge; ++j) {
      const int ix_lo = a == 0 ? 0 : j, iy_lo = a == 0 ? j : 0;
      const int ix_hi = a == 0 ? n0 - 1 : j, iy_hi = a == 0 ? j : n1 - 1;
      const double lo_in = w(a, g.idx(ix_lo, iy_lo));
      const double lo_gh = w.ext(a, a == 0 ? -1 : ix_lo, a == 0 ? iy_lo : -1, rules_.odd_flux);
      const double hi_in = w(a, g.idx(ix_hi, iy_hi));
      const double hi_gh = w.ext(a, a == 0 ? n0 : ix_hi, a == 0 ? iy_hi : n1, rules_.odd_flux);
      b.boundary_energy_flux += 0.5 * (hi_in + hi_gh) * dA;  // outward +a
      b.boundary_energy_flux -= 0.5 * (lo_in + lo_gh) * dA;  // outward -a
    }
  }
  return b;
}

TotalEnergy Solver::energy(const FieldSet& st) const {
  const bool relax = cfg_.closure.is_eit();
  const SymTensorField* sig = relax && cfg_.closure.visc_on() ? &st.sigma : nullptr;
  const VectorField* q = relax && cfg_.closure.heat_on() ? &st.q : nullptr;
  return total_energy(cfg_.eos, st.u, st.rho, st.s, sig, q, st.q_higher);
}

ScalarField continuity_rhs(const FieldSet& st, const FieldRules& fr) {
  return scalar_density_transport(st.rho, st.u, fr.momentum);
}

VectorField momentum_rhs(const FieldSet& st, const NonEqEOS& eos, const ClosureSpec& spec,
                         MomentumForm form, const FieldRules& fr) {
  AssemblyContext cx{spec, eos, fr, form, false, 0.0};
  return assemble(st, cx).m_dot;
}

ScalarField entropy_rhs(const FieldSet& st, const NonEqEOS& eos, const ClosureSpec& spec,
                        const FieldRules& fr) {
  AssemblyContext cx{spec, eos, fr, MomentumForm::B, false, 0.0};
  return assemble(st, cx).rate.s;
}

void slave_fluxes_to_cit(FieldSet& st, const NonEqEOS& eos, const ClosureSpec& spec,
                         const FieldRules& fr) {
  EOSEvalFields pre = eval(eos, st.rho, st.s, nullptr, nullptr);
  if (spec.heat_on()) st.q = fourier(pre.T, spec, fr);
  if (spec.visc_on()) st.sigma = newton_stokes(st.u, spec, fr);
}

}  // namespace eit
