#include "eit/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "eit/scenario.hpp"

namespace eit {

ScalarField pointwise_energy_residual(const Solver& solver, const FieldSet& st) {
  const Grid& g = solver.grid();
  const int d = g.dim;
  const SolverConfig& cfg = solver.config();
  const FieldRules& fr = solver.rules();
  SystemRhs r = solver.rhs(st);

  // d_t e_hat by the chain rule through the assembled rates
  ScalarField dte(g, 1);
  for (int i = 0; i < g.cells(); ++i) {
    double ke = 0.0, uudot = 0.0;
    for (int c = 0; c < d; ++c) {
      ke += st.u(c, i) * st.u(c, i);
      uudot += st.u(c, i) * r.rate.u(c, i);
    }
    dte[i] = 0.5 * ke * r.rate.rho[i] + st.rho[i] * uudot + r.ev.de_drho[i] * r.rate.rho[i] +
             r.T[i] * r.rate.s[i];
  }
  const bool heat = !r.q_eff.empty();
  const bool visc = !r.sigma_eff.empty();
  const bool relaxing = cfg.closure.is_eit();
  if (relaxing && visc) {
    ScalarField t = contract(r.ev.dsig, r.rate.sigma);
    dte.axpy(1.0, t);
  }
  if (relaxing && heat) {
    ScalarField t = dot(r.ev.dq, r.rate.q);
    dte.axpy(1.0, t);
  }
  for (size_t m = 0; m < r.ev.dqk.size() && m < st.q_higher.size(); ++m) {
    ScalarField t = contract(r.ev.dqk[m], r.rate.q_higher[m]);
    dte.axpy(1.0, t);
  }

  // e_hat u transport
  ScalarField e_hat(g, 1);
  for (int i = 0; i < g.cells(); ++i) {
    double ke = 0.0;
    for (int c = 0; c < d; ++c) ke += st.u(c, i) * st.u(c, i);
    e_hat[i] = 0.5 * st.rho[i] * ke + r.ev.eps_hat[i];
  }
  VectorField eu(g, 1);
  for (int c = 0; c < d; ++c)
    for (int i = 0; i < g.cells(); ++i) eu(c, i) = e_hat[i] * st.u(c, i);
  ScalarField div_eu = div_vector(eu, fr.momentum);

  // flux (-p delta + tau_q + tau_sigma + tau_qk + sigma) . u - T j; the
  // theory's stresses always enter here, whatever the solver assembled
  SymTensorField M(g, 1);
  if (visc) M.axpy(1.0, r.sigma_eff);
  if (relaxing && heat) M.axpy(1.0, noneq_stress_q(r.ev.dq, r.q_eff));
  if (relaxing && visc) M.axpy(1.0, noneq_stress_sigma(r.ev.dsig, r.sigma_eff));
  for (size_t m = 0; m < st.q_higher.size(); ++m) {
    const double ak = cfg.eos.higher_alpha.size() > m ? cfg.eos.higher_alpha[m] : 0.0;
    M.axpy(1.0, noneq_stress_higher(ak, st.q_higher[m]));
  }
  VectorField F(g, 1);
  for (int i = 0; i < g.cells(); ++i) {
    if (d == 1) {
      F(0, i) = (M(0, i) - r.p[i]) * st.u(0, i);
    } else {
      F(0, i) = (M(0, i) - r.p[i]) * st.u(0, i) + M(1, i) * st.u(1, i);
      F(1, i) = M(1, i) * st.u(0, i) + (M(2, i) - r.p[i]) * st.u(1, i);
    }
    if (heat)
      for (int c = 0; c < d; ++c) F(c, i) -= r.T[i] * (r.q_eff(c, i) / r.T[i]);
  }
  ScalarField div_F = div_vector(F, fr.odd_flux);

  ScalarField res = dte;
  res.axpy(1.0, div_eu);
  res.axpy(-1.0, div_F);
  return res;
}

EnergyAuditResult energy_audit(const RunRecord& rec, const Solver& solver) {
  EnergyAuditResult out;
  const auto& s = rec.samples;
  if (s.size() >= 2) {
    const double e0 = s.front().energy;
    out.drift_rel = std::abs(s.back().energy - e0) / std::max(1e-300, std::abs(e0));
    for (size_t k = 0; k < s.size(); ++k) {
      double dedt;
      if (k == 0)
        dedt = (s[1].energy - s[0].energy) / (s[1].t - s[0].t);
      else if (k + 1 == s.size())
        dedt = (s[k].energy - s[k - 1].energy) / (s[k].t - s[k - 1].t);
      else
        dedt = (s[k + 1].energy - s[k - 1].energy) / (s[k + 1].t - s[k - 1].t);
      const double r = dedt + s[k].boundary_energy_flux;
      out.t.push_back(s[k].t);
      out.residual.push_back(r);
      out.max_residual = std::max(out.max_residual, std::abs(r));
      out.drift_rel = std::max(out.drift_rel,
                               std::abs(s[k].energy - e0) / std::max(1e-300, std::abs(e0)));
    }
  }
  for (const Snapshot& snap : rec.snapshots) {
    ScalarField r = pointwise_energy_residual(solver, snap.state);
    out.max_pointwise_residual = std::max(out.max_pointwise_residual, r.max_abs());
  }
  return out;
}

EntropyAuditResult entropy_audit(const RunRecord& rec, const Solver& solver) {
  EntropyAuditResult out;
  const auto& s = rec.samples;
  out.min_production = 1e300;
  for (const auto& smp : s) out.min_production = std::min(out.min_production, smp.production_min);

  if (s.size() >= 2) {
    double quad = 0.0;
    for (size_t k = 1; k < s.size(); ++k)
      quad += 0.5 * (s[k].t - s[k - 1].t) * (s[k].production_integral + s[k - 1].production_integral);
    out.ledger_residual = std::abs((s.back().varsigma - s.front().varsigma) - quad);
    for (size_t k = 1; k < s.size(); ++k)
      if (s[k].entropy < s[k - 1].entropy - 1e-12 * std::max(1.0, std::abs(s[k].entropy)))
        out.entropy_nondecreasing = false;
  }

  // midpoint residual of Dbar varsigma = Dbar s + div j_s on the last frame
  if (!rec.snapshots.empty() && rec.dt > 0) {
    const FieldSet& y0 = rec.snapshots.back().state;
    const double dt = rec.dt;
    FieldSet half = y0, full = y0;
    solver.step(half, 0.5 * dt);
    solver.step(full, dt);
    SystemRhs rm = solver.rhs(half);
    const Grid& g = solver.grid();
    const FieldRules& fr = solver.rules();
    auto transport = [&](const ScalarField& f, const VectorField& u) {
      VectorField fu(g, 1);
      for (int c = 0; c < g.dim; ++c)
        for (int i = 0; i < g.cells(); ++i) fu(c, i) = f[i] * u(c, i);
      return div_vector(fu, fr.momentum);
    };
    ScalarField div_vs = transport(half.varsigma, half.u);
    ScalarField div_s = transport(half.s, half.u);
    ScalarField div_js =
        rm.q_eff.empty() ? ScalarField(g, 0) : div_vector(rm.j_s, fr.odd_flux);
    double worst = 0.0;
    for (int i = 0; i < g.cells(); ++i) {
      const double lhs = (full.varsigma[i] - y0.varsigma[i]) / dt + div_vs[i];
      const double rhs = (full.s[i] - y0.s[i]) / dt + div_s[i] + div_js[i];
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.balance_residual = worst;
  }
  return out;
}

double mass_drift_rel(const RunRecord& rec) {
  if (rec.samples.empty()) return 0.0;
  const double m0 = rec.samples.front().mass;
  double worst = 0.0;
  for (const auto& s : rec.samples)
    worst = std::max(worst, std::abs(s.mass - m0) / std::max(1e-300, std::abs(m0)));
  return worst;
}

CitLimitStudy cit_limit_study(const Scenario& base, const std::vector<double>& taus) {
  if (taus.empty()) throw ConfigError("cit_limit_study: empty tau list");
  if (!base.solver.closure.is_eit())
    throw ConfigError("cit_limit_study: base scenario must be an EIT mode");

  Scenario cit = cit_twin(base);
  RunOutput ref = run_scenario(cit);

  CitLimitStudy study;
  const double tau1_base = base.solver.closure.tau1;
  for (double tau : taus) {
    Scenario sc = base;
    const double scale = tau / tau1_base;
    auto& cl = sc.solver.closure;
    cl.tau1 *= scale;
    cl.tau2 *= scale;
    cl.tau0 *= scale;
    for (double& t : cl.tau_k) t *= scale;
    sc.solver.eos = cl.derive_eos(sc.grid.dim, sc.solver.eos.eq);
    RunOutput run = run_scenario(sc);

    const Grid& g = sc.grid;
    double acc = 0.0;
    auto add = [&](const FieldBase& a, const FieldBase& b) {
      for (size_t i = 0; i < a.raw().size(); ++i) {
        const double d = a.raw()[i] - b.raw()[i];
        acc += d * d;
      }
    };
    add(run.final_state.rho, ref.final_state.rho);
    add(run.final_state.s, ref.final_state.s);
    add(run.final_state.u, ref.final_state.u);
    study.rows.push_back({tau, std::sqrt(acc * g.cell_volume())});
  }

  // least-squares slope of log d against log tau
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& row : study.rows) {
    if (row.l2_distance <= 0) continue;
    const double x = std::log(row.tau), y = std::log(row.l2_distance);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2) study.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return study;
}

double second_sound_prediction(double kappa, double rho0, double c_v, double tau1) {
  return std::sqrt(kappa / (rho0 * c_v * tau1));
}

namespace {

// quadratic refinement of a discrete argmax
double refine_peak_time(const std::vector<double>& t, const std::vector<double>& v, size_t k) {
  if (k == 0 || k + 1 >= v.size()) return t[k];
  const double denom = v[k - 1] - 2.0 * v[k] + v[k + 1];
  if (std::abs(denom) < 1e-300) return t[k];
  const double delta = 0.5 * (v[k - 1] - v[k + 1]) / denom;
  const double dt = 0.5 * (t[k + 1] - t[k - 1]);
  return t[k] + delta * dt;
}

}  // namespace

SecondSoundResult second_sound_speed(const RunRecord& rec, const Scenario& sc) {
  SecondSoundResult out;
  const auto& cl = sc.solver.closure;
  if (cl.is_eit() && cl.tau1 > 0)
    out.predicted = second_sound_prediction(cl.kappa, sc.rho0, sc.solver.eos.eq.c_v, cl.tau1);

  // pulse-width growth exponent from snapshots: ballistic ~ t^2, diffusive ~ t
  std::vector<std::pair<double, double>> moments;  // (t, m2)
  Solver solver = sc.make_solver();
  for (const Snapshot& snap : rec.snapshots) {
    if (snap.t <= 0) continue;
    SystemRhs r = solver.rhs(snap.state);
    const Grid& g = sc.grid;
    double tmin = 1e300;
    for (int i = 0; i < g.cells(); ++i) tmin = std::min(tmin, r.T[i]);
    double w = 0.0, m2 = 0.0;
    for (int i = 0; i < g.cells(); ++i) {
      const double amp = r.T[i] - tmin;
      double dx = g.x(i % g.n[0]) - sc.pulse_center[0];
      dx -= g.length(0) * std::round(dx / g.length(0));
      m2 += amp * dx * dx;
      w += amp;
    }
    if (w > 0) moments.push_back({snap.t, m2 / w});
  }
  if (moments.size() >= 2) {
    const auto& a = moments.front();
    const auto& b = moments.back();
    if (b.first > a.first * 1.2 && a.second > 0 && b.second > 0) {
      const double p = std::log(b.second / a.second) / std::log(b.first / a.first);
      if (p < 1.5) out.diffusive = true;
    }
  }

  if (sc.probes.size() < 2 || rec.samples.size() < 8) {
    out.diffusive = out.diffusive || sc.probes.size() < 2;
    return out;
  }
  std::vector<double> t;
  std::vector<std::vector<double>> series(sc.probes.size());
  for (const auto& smp : rec.samples) {
    t.push_back(smp.t);
    for (size_t p = 0; p < sc.probes.size() && p < smp.probes.size(); ++p)
      series[p].push_back(smp.probes[p]);
  }
  std::vector<double> arrival(sc.probes.size());
  for (size_t p = 0; p < sc.probes.size(); ++p) {
    size_t k = std::max_element(series[p].begin(), series[p].end()) - series[p].begin();
    arrival[p] = refine_peak_time(t, series[p], k);
    // peak on the boundary of the record: no front passed
    if (k == 0 || k + 1 >= series[p].size()) out.diffusive = true;
  }
  const double dx0 = std::abs(sc.probes[1][0] - sc.probes[0][0]);
  const double dt_pk = arrival[1] - arrival[0];
  if (dt_pk <= 0) {
    out.diffusive = true;
    return out;
  }
  out.speed = dx0 / dt_pk;
  const double dt_sample = t.size() > 1 ? t[1] - t[0] : 0.0;
  out.uncertainty = dx0 / (dt_pk * dt_pk) * dt_sample;
  return out;
}

}  // namespace eit
