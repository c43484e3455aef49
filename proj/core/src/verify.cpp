#include "eit/verify.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "eit/constitutive.hpp"
#include "eit/diagnostics.hpp"
#include "eit/finite_dim.hpp"
#include "eit/material.hpp"
#include "eit/scenario.hpp"
#include "eit/solver.hpp"
#include "eit/synth.hpp"

namespace eit {

namespace {

Check check(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

double observed_order(const std::vector<double>& errs) {
  const int n = static_cast<int>(errs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = i, y = std::log2(std::max(errs[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double max_field_diff(const FieldBase& a, const FieldBase& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.raw().size(); ++i) m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}

bool states_identical(const FieldSet& a, const FieldSet& b) {
  auto eq = [](const FieldBase& x, const FieldBase& y) {
    for (size_t i = 0; i < x.raw().size(); ++i)
      if (x.raw()[i] != y.raw()[i]) return false;
    return true;
  };
  return eq(a.rho, b.rho) && eq(a.s, b.s) && eq(a.u, b.u) && eq(a.sigma, b.sigma) && eq(a.q, b.q);
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Check> verify_fields() {
  std::vector<Check> out;

  {  // summation by parts on a periodic grid
    const Grid g = Grid::make_2d(48, 32, 1.0, 2.0);
    Rng rng(7);
    ScalarField f = sample_scalar(random_trig(rng, g, 3, 1.0), g);
    VectorField q(g, 0);
    for (int c = 0; c < 2; ++c) {
      TrigSeries t = random_trig(rng, g, 3, 1.0);
      sample(t, g, q.comp(c));
    }
    ScalarField dq = div_vector(q);
    VectorField df = grad_scalar(f);
    double sum = 0.0, scale = 0.0;
    for (int i = 0; i < g.cells(); ++i) {
      double t = f[i] * dq[i];
      for (int c = 0; c < 2; ++c) t += df(c, i) * q(c, i);
      sum += t;
      scale += std::abs(f[i] * dq[i]);
    }
    out.push_back(check("fields: summation by parts (periodic)",
                        std::abs(sum) < 1e-12 * std::max(scale, 1.0),
                        "residual " + fmt(std::abs(sum) / std::max(scale, 1.0))));
  }

  {  // gradient refinement order
    std::vector<double> errs;
    for (int lvl = 0; lvl < 3; ++lvl) {
      const int n = 32 << lvl;
      const Grid g = Grid::make_1d(n, 1.0);
      ScalarField f(g);
      for (int i = 0; i < n; ++i) f[i] = std::sin(2.0 * M_PI * g.x(i));
      VectorField df = grad_scalar(f);
      double err = 0.0;
      for (int i = 0; i < n; ++i)
        err = std::max(err, std::abs(df(0, i) - 2.0 * M_PI * std::cos(2.0 * M_PI * g.x(i))));
      errs.push_back(err);
    }
    const double p = observed_order(errs);
    out.push_back(check("fields: gradient refinement order ~2", p > 1.9 && p < 2.1,
                        "observed order " + fmt(p)));
  }

  {  // deviatoric/isotropic split recomposition
    const Grid g = Grid::make_2d(32, 32, 1.0, 1.0);
    Rng rng(17);
    SymTensorField s(g, 1);
    for (int c = 0; c < 3; ++c) {
      TrigSeries t = random_trig(rng, g, 3, 2.0, 0.3);
      sample(t, g, s.comp(c));
    }
    auto [dev, pv] = dev_iso_split(s);
    SymTensorField back = recompose(dev, pv);
    double trmax = 0.0;
    for (int i = 0; i < g.cells(); ++i) trmax = std::max(trmax, std::abs(dev(0, i) + dev(2, i)));
    const bool pass =
        max_field_diff(back, s) < 1e-14 * std::max(1.0, s.max_abs()) && trmax < 1e-14 * s.max_abs();
    out.push_back(check("fields: dev/iso split recomposes exactly", pass,
                        "recomposition " + fmt(max_field_diff(back, s)) + ", trace " + fmt(trmax)));
  }

  {  // Lie transport against the pullback finite-difference oracle (h-order)
    Rng rng(5);
    std::vector<TrigSeries> u_fn, q_fn;
    {
      const Grid g0 = Grid::make_2d(32, 32, 1.0, 1.0);
      for (int c = 0; c < 2; ++c) u_fn.push_back(random_trig(rng, g0, 2, 0.25, 0.05));
      for (int c = 0; c < 2; ++c) q_fn.push_back(random_trig(rng, g0, 2, 1.0, 0.3));
    }
    const double eps = 1e-3;
    std::vector<double> errs;
    for (int lvl = 0; lvl < 3; ++lvl) {
      const int n = 24 << lvl;
      const Grid g = Grid::make_2d(n, n, 1.0, 1.0);
      VectorField u(g, 0), q(g, 1);
      for (int c = 0; c < 2; ++c) {
        sample(u_fn[c], g, u.comp(c));
        sample(q_fn[c], g, q.comp(c));
      }
      VectorField lt = lie_transport_vector_density(u, q);
      double err = 0.0;
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double x = g.x(ix), y = g.y(iy);
          const int i = g.idx(ix, iy);
          auto pull = [&](double e) {
            const double a00 = 1.0 + e * u_fn[0].deriv(0, x, y);
            const double a01 = e * u_fn[0].deriv(1, x, y);
            const double a10 = e * u_fn[1].deriv(0, x, y);
            const double a11 = 1.0 + e * u_fn[1].deriv(1, x, y);
            const double px = x + e * u_fn[0].value(x, y);
            const double py = y + e * u_fn[1].value(x, y);
            const double q0 = q_fn[0].value(px, py), q1 = q_fn[1].value(px, py);
            return std::array<double, 2>{a11 * q0 - a01 * q1, -a10 * q0 + a00 * q1};
          };
          const auto p = pull(eps), m = pull(-eps);
          err = std::max({err, std::abs((p[0] - m[0]) / (2 * eps) - lt(0, i)),
                          std::abs((p[1] - m[1]) / (2 * eps) - lt(1, i))});
        }
      errs.push_back(err);
    }
    const double p = observed_order(errs);
    out.push_back(check("fields: Lie transport matches pullback oracle at order >= 2 in h",
                        p >= 1.9, "observed order " + fmt(p)));
  }

  {  // linearity of the operators
    const Grid g = Grid::make_2d(24, 24, 1.0, 1.0);
    Rng rng(23);
    ScalarField f1 = sample_scalar(random_trig(rng, g, 3, 1.0), g);
    ScalarField f2 = sample_scalar(random_trig(rng, g, 3, 1.0), g);
    ScalarField mix(g);
    for (int i = 0; i < g.cells(); ++i) mix[i] = 1.7 * f1[i] - 0.4 * f2[i];
    VectorField gm = grad_scalar(mix), g1 = grad_scalar(f1), g2 = grad_scalar(f2);
    double err = 0.0;
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < g.cells(); ++i)
        err = std::max(err, std::abs(gm(c, i) - 1.7 * g1(c, i) + 0.4 * g2(c, i)));
    out.push_back(check("fields: operators are linear", err < 1e-12 * std::max(1.0, gm.max_abs()),
                        "deviation " + fmt(err)));
  }

  {  // constant density field under constant u is exactly stationary
    const Grid g = Grid::make_2d(16, 16, 1.0, 1.0);
    VectorField u(g, 0), q(g, 1);
    u.fill(0.7);
    q.fill(1.3);
    out.push_back(check("fields: Truesdell transport of constants is exactly zero",
                        lie_transport_vector_density(u, q).max_abs() == 0.0, "bitwise zero"));
  }
  return out;
}

std::vector<Check> verify_thermo() {
  std::vector<Check> out;
  NonEqEOS eos;
  eos.alpha = 0.8;
  eos.beta = 0.35;
  eos.higher_alpha = {0.2};

  {
    StatePoint st;
    st.dim = 2;
    st.rho = 1.4;
    st.s = 0.25;
    st.q = {0.3, -0.2};
    st.sigma = {0.5, -0.1, 0.2};
    st.q_higher = {{0.1, -0.05, 0.2}};
    st.higher_orders = {2};
    auto rep = check_derivatives(eos, st, 1e-5);
    out.push_back(check("thermo: finite differences match analytic conjugates",
                        rep.max_rel_err < 1e-8, "max rel err " + fmt(rep.max_rel_err) +
                        (rep.worst.empty() ? "" : " (" + rep.worst + ")")));
  }
  {  // Legendre sanity on a lattice
    bool convex = true;
    for (double rho : {0.5, 1.0, 2.0})
      for (double s : {-0.5, 0.0, 0.8}) {
        const double h = 1e-4;
        const double d2 = (eos.eq.eps(rho, s + h) - 2 * eos.eq.eps(rho, s) + eos.eq.eps(rho, s - h)) /
                          (h * h);
        if (!(d2 > 0)) convex = false;
      }
    out.push_back(check("thermo: eps_eq strictly convex in s on the sample lattice", convex, ""));
  }
  {  // argmin at zero fluxes
    StatePoint st;
    st.dim = 2;
    const double base = eval_point(eos, st).eps_hat;
    Rng rng(88);
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
      StatePoint p = st;
      for (int c = 0; c < 2; ++c) p.q[c] = rng.uniform(-1, 1);
      for (int c = 0; c < 3; ++c) p.sigma[c] = rng.uniform(-1, 1);
      if (eval_point(eos, p).eps_hat < base) ok = false;
    }
    out.push_back(check("thermo: eps_hat minimized at vanishing fluxes", ok, ""));
  }
  {  // relaxation-coefficient relations
    const bool ok = std::abs(consistency_tau1(1.0, 2.0, 0.5) - 1.0) < 1e-15;
    ClosureSpec cl;
    cl.mode = Mode::EIT;
    cl.kappa = 0.4;
    cl.tau1 = 0.2;
    cl.eta = 0.25;
    cl.zeta_v = 0.3;
    cl.tau2 = 0.1;
    cl.tau0 = 2.0 * 0.3 * (0.1 / 0.5);
    NonEqEOS derived = cl.derive_eos(2);
    bool consistent = true;
    try {
      cl.validate(2, &derived);
    } catch (...) {
      consistent = false;
    }
    out.push_back(check("thermo: tau1 = kappa T alpha, tau2 = 2 eta beta, tau0 = d zeta beta",
                        ok && consistent, ""));
  }
  return out;
}

std::vector<Check> verify_material() {
  std::vector<Check> out;

  {  // Truesdell identity, vector density, joint (h, eps_t) refinement
    std::vector<double> errs;
    double eps = 0.02;
    double term = 0.0;
    for (int n : {256, 512, 1024}) {
      auto r = truesdell_identity_check(2, false, n, eps, 21);
      errs.push_back(r.rel());
      term = r.rel();
      eps /= 2.0;
    }
    const double p = observed_order(errs);
    std::ostringstream os;
    os << "orders/errors:";
    for (double e : errs) os << " " << fmt(e);
    os << " -> order " << fmt(p);
    out.push_back(check("material: Truesdell identity (vector) order >= 1.9, terminal < 1e-5",
                        p >= 1.9 && term < 1e-5, os.str()));
  }
  {  // tensor density
    std::vector<double> errs;
    double eps = 0.02;
    double term = 0.0;
    for (int n : {256, 512, 1024}) {
      auto r = truesdell_identity_check(2, true, n, eps, 22);
      errs.push_back(r.rel());
      term = r.rel();
      eps /= 2.0;
    }
    const double p = observed_order(errs);
    std::ostringstream os;
    os << "orders/errors:";
    for (double e : errs) os << " " << fmt(e);
    os << " -> order " << fmt(p);
    out.push_back(check("material: Truesdell identity (tensor) order >= 1.9, terminal < 1e-5",
                        p >= 1.9 && term < 1e-5, os.str()));
  }
  {  // conjugate identity, vector + tensor
    std::vector<double> ev, et;
    for (int n : {64, 128, 256}) {
      ev.push_back(conjugate_identity_check(2, false, n, -1.0, 31).rel());
      et.push_back(conjugate_identity_check(2, true, n, -1.0, 32).rel());
    }
    const double pv = observed_order(ev), pt = observed_order(et);
    std::ostringstream os;
    os << "vector order " << fmt(pv) << " terminal " << fmt(ev.back()) << "; tensor order "
       << fmt(pt) << " terminal " << fmt(et.back());
    out.push_back(check("material: conjugate identity order >= 1.9, terminal < 1e-5",
                        pv >= 1.9 && pt >= 1.9 && ev.back() < 1e-5 && et.back() < 1e-5, os.str()));
  }
  return out;
}

std::vector<Check> verify_finite_dim() {
  std::vector<Check> out;
  FiniteSystem sys;
  sys.subs.push_back({1.0, 2.0, 0.3, 1.0});
  sys.subs.push_back({1.5, 1.0, 0.3, 1.3});
  sys.kappa.assign(4, 0.0);
  sys.set_kappa(0, 1, 0.4);

  FiniteState st = FiniteState::zeros(2);
  st.q = {1.0, -0.5};
  st.qdot = {0.0, 0.3};
  st.S = {0.8, 0.0};
  auto traj = integrate(sys, st, 30.0);
  auto rep = audit(sys, traj);
  out.push_back(check("finite-dim: total energy conserved to 1e-9 (adaptive RK)",
                      rep.max_energy_drift_rel < 1e-9, "drift " + fmt(rep.max_energy_drift_rel)));
  out.push_back(check("finite-dim: every Sigma_A nondecreasing", rep.second_law_ok(),
                      "max decrease " + fmt(rep.max_sigma_decrease)));
  out.push_back(check("finite-dim: Prigogine exchange split closes",
                      rep.max_exchange_residual < 1e-8,
                      "residual " + fmt(rep.max_exchange_residual)));
  {
    // pure exchange: heat flows hot -> cold, equilibrium at equal temperatures
    FiniteSystem heat = sys;
    heat.subs[0].gamma_fric = heat.subs[1].gamma_fric = 0.0;
    heat.subs[0].k_spring = heat.subs[1].k_spring = 0.0;
    FiniteState st2 = FiniteState::zeros(2);
    st2.S = {0.8, 0.0};
    auto tr2 = integrate(heat, st2, 40.0);
    bool monotone = true;
    double prev = 1e300;
    for (const auto& s : tr2.states) {
      const double dT = heat.temperature(0, s.S[0]) - heat.temperature(1, s.S[1]);
      if (dT < -1e-10 || dT > prev + 1e-12) monotone = false;
      prev = dT;
    }
    const auto& last = tr2.back();
    const double gap0 = std::exp(0.8) - 1.0;
    const double gap = heat.temperature(0, last.S[0]) - heat.temperature(1, last.S[1]);
    out.push_back(check("finite-dim: heat flows hot to cold toward equal temperatures",
                        monotone && gap < 0.2 * gap0, "final gap " + fmt(gap)));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct BundledRuns {
  std::map<std::string, Scenario> scenarios;
  std::map<std::string, RunOutput> runs;
};

BundledRuns run_bundle() {
  BundledRuns b;
  for (const std::string& name : bundled_scenario_names()) {
    Scenario sc = Scenario::from_json_text(bundled_scenario_text(name));
    b.runs.emplace(name, run_scenario(sc));
    b.scenarios.emplace(name, std::move(sc));
  }
  return b;
}

}  // namespace

std::vector<Check> verify_balances() {
  std::vector<Check> out;
  BundledRuns bundle = run_bundle();

  // 1. energy compensation on the smooth periodic 2D EIT run
  {
    const Scenario& sc = bundle.scenarios.at("eit_smooth_2d");
    const RunOutput& run = bundle.runs.at("eit_smooth_2d");
    Solver solver = sc.make_solver();
    EnergyAuditResult ea = energy_audit(run.record, solver);

    // refined twin: h/2, dt/2, same physical time
    Scenario fine = sc;
    fine.grid = Grid::make_2d(128, 128, 1.0, 1.0);
    fine.solver.ctrl.dt = run.record.dt / 2.0;
    fine.solver.ctrl.t_end = run.record.dt * static_cast<double>(run.record.steps);
    fine.max_steps = 0;
    RunOutput fine_run = run_scenario(fine);
    Solver fine_solver = fine.make_solver();
    EnergyAuditResult ef = energy_audit(fine_run.record, fine_solver);
    const double ratio = ea.max_pointwise_residual / std::max(ef.max_pointwise_residual, 1e-300);

    // control: nonequilibrium stresses deleted, rates kept
    Scenario control = sc;
    control.solver.closure.omit_noneq_stresses = true;
    RunOutput crun = run_scenario(control);
    Solver csolver = control.make_solver();
    EnergyAuditResult ec = energy_audit(crun.record, csolver);
    const double leak_ratio = ec.drift_rel / std::max(ea.drift_rel, 1e-300);

    std::ostringstream os;
    os << "drift " << fmt(ea.drift_rel) << ", residual contraction x" << fmt(ratio)
       << ", stress-deleted leak x" << fmt(leak_ratio);
    out.push_back(check("C1 energy compensation: drift < 1e-7, residual contracts >= 3.5x, "
                        "deleted stresses leak >= 100x",
                        ea.drift_rel < 1e-7 && ratio >= 3.5 && leak_ratio >= 100.0, os.str()));
  }

  // 2. second law across every bundled EIT scenario
  {
    double worst_min = 0.0, worst_ledger = 0.0;
    bool varsigma_monotone = true;
    std::string worst_name = "-";
    for (const auto& [name, run] : bundle.runs) {
      const Scenario& sc = bundle.scenarios.at(name);
      if (!sc.solver.closure.is_eit()) continue;
      Solver solver = sc.make_solver();
      EntropyAuditResult ent = entropy_audit(run.record, solver);
      if (ent.min_production < worst_min) {
        worst_min = ent.min_production;
        worst_name = name;
      }
      worst_ledger = std::max(worst_ledger, ent.ledger_residual);
      for (size_t k = 1; k < run.record.samples.size(); ++k)
        if (run.record.samples[k].varsigma <
            run.record.samples[k - 1].varsigma - 1e-12)
          varsigma_monotone = false;
    }
    std::ostringstream os;
    os << "min production " << fmt(worst_min) << " (" << worst_name << "), ledger residual "
       << fmt(worst_ledger);
    out.push_back(check("C2 second law: min production >= -1e-10, varsigma nondecreasing, "
                        "ledger |d varsigma - int production| < 1e-8",
                        worst_min >= -1e-10 && varsigma_monotone && worst_ledger < 1e-8,
                        os.str()));
  }

  // 3. CIT limit: tau sweep order 1.0 +- 0.3
  {
    CitLimitStudy study = cit_limit_study(bundle.scenarios.at("eit_smooth_1d"), {0.4, 0.2, 0.1});
    std::ostringstream os;
    os << "distances";
    for (const auto& r : study.rows) os << " " << fmt(r.l2_distance);
    os << " -> order " << fmt(study.observed_order);
    out.push_back(check("C3 CIT limit: observed order in tau = 1.0 +- 0.3",
                        std::abs(study.observed_order - 1.0) <= 0.3, os.str()));
  }

  // 4. second sound
  {
    const Scenario& sc = bundle.scenarios.at("cc_pulse_1d");
    const RunOutput& run = bundle.runs.at("cc_pulse_1d");
    SecondSoundResult base = second_sound_speed(run.record, sc);
    const double rel = std::abs(base.speed - base.predicted) / base.predicted;

    Scenario doubled = with_override(sc, "closure.tau1", sc.solver.closure.tau1 * 2.0);
    RunOutput drun = run_scenario(doubled);
    SecondSoundResult dres = second_sound_speed(drun.record, doubled);
    const double ratio = dres.speed / base.speed;
    const double ratio_err = std::abs(ratio - 1.0 / std::sqrt(2.0)) * std::sqrt(2.0);

    Scenario cit = cit_twin(sc);
    RunOutput citrun = run_scenario(cit);
    SecondSoundResult cres = second_sound_speed(citrun.record, cit);

    std::ostringstream os;
    os << "speed " << fmt(base.speed) << " vs predicted " << fmt(base.predicted) << " ("
       << fmt(100 * rel) << "%), tau-doubling ratio " << fmt(ratio) << ", CIT diffusive="
       << (cres.diffusive ? "yes" : "no");
    out.push_back(check("C4 second sound: speed within 5% of the dispersion value, "
                        "tau-doubling ratio 2^-1/2 +- 5%, CIT reports diffusive",
                        !base.diffusive && rel <= 0.05 && ratio_err <= 0.05 && cres.diffusive,
                        os.str()));
  }

  // 6. momentum-form equivalence under refinement
  {
    SolverConfig cfg;
    cfg.closure.mode = Mode::EIT;
    cfg.closure.kappa = 0.1;
    cfg.closure.tau1 = 0.1;
    cfg.closure.eta = 0.1;
    cfg.closure.zeta_v = 0.12;
    cfg.closure.tau2 = 0.08;
    cfg.closure.tau0 = 0.096;
    cfg.eos = cfg.closure.derive_eos(2);
    std::vector<double> errs;
    for (int n : {32, 64}) {
      const Grid g = Grid::make_2d(n, n, 1.0, 1.0);
      Rng rng(31);
      FieldSet st = FieldSet::zeros(g);
      st.rho.fill(1.0);
      st.s.fill(0.0);
      TrigSeries fr = random_trig(rng, g, 2, 0.1);
      TrigSeries fs = random_trig(rng, g, 2, 0.1);
      std::vector<TrigSeries> fu{random_trig(rng, g, 2, 0.1), random_trig(rng, g, 2, 0.1)};
      std::vector<TrigSeries> fq{random_trig(rng, g, 2, 0.05), random_trig(rng, g, 2, 0.05)};
      std::vector<TrigSeries> fsig{random_trig(rng, g, 2, 0.05), random_trig(rng, g, 2, 0.05),
                                   random_trig(rng, g, 2, 0.05)};
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const int i = g.idx(ix, iy);
          const double x = g.x(ix), y = g.y(iy);
          st.rho[i] *= 1.0 + fr.value(x, y);
          st.s[i] += fs.value(x, y);
          for (int c = 0; c < 2; ++c) {
            st.u(c, i) = fu[c].value(x, y);
            st.q(c, i) = fq[c].value(x, y);
          }
          for (int c = 0; c < 3; ++c) st.sigma(c, i) = fsig[c].value(x, y);
        }
      VectorField ma = momentum_rhs(st, cfg.eos, cfg.closure, MomentumForm::A);
      VectorField mb = momentum_rhs(st, cfg.eos, cfg.closure, MomentumForm::B);
      errs.push_back(max_field_diff(ma, mb));
    }
    const double ratio = errs[0] / errs[1];
    out.push_back(check("C6 momentum forms A and B agree at O(h^2): refinement ratio >= 3.5",
                        ratio >= 3.5, "ratio " + fmt(ratio)));
  }

  // 7. mode reductions, bit for bit
  {
    const Grid g = Grid::make_2d(24, 24, 1.0, 1.0);
    Rng rng(21);
    auto manufactured = [&](const EquilibriumEOS& eq) {
      FieldSet st = FieldSet::zeros(g);
      st.rho.fill(1.0);
      st.s.fill(eq.entropy_from_T(1.0, 1.0));
      TrigSeries fr = random_trig(rng, g, 2, 1e-2);
      TrigSeries fs = random_trig(rng, g, 2, 1e-2);
      std::vector<TrigSeries> fu{random_trig(rng, g, 2, 1e-2), random_trig(rng, g, 2, 1e-2)};
      for (int iy = 0; iy < g.n[1]; ++iy)
        for (int ix = 0; ix < g.n[0]; ++ix) {
          const int i = g.idx(ix, iy);
          st.rho[i] *= 1.0 + fr.value(g.x(ix), g.y(iy));
          st.s[i] += fs.value(g.x(ix), g.y(iy));
          for (int c = 0; c < 2; ++c) st.u(c, i) = fu[c].value(g.x(ix), g.y(iy));
        }
      return st;
    };

    SolverConfig euler;
    euler.closure.mode = Mode::Euler;
    euler.eos = euler.closure.derive_eos(2);
    SolverConfig cit0;
    cit0.closure.mode = Mode::CIT;
    cit0.eos = cit0.closure.derive_eos(2);
    FieldSet st = manufactured(euler.eos.eq);
    FieldSet a = st, b = st;
    Solver se(g, euler), sc0(g, cit0);
    for (int n = 0; n < 25; ++n) {
      se.step(a, 1e-3, n);
      sc0.step(b, 1e-3, n);
    }
    const bool euler_ok = states_identical(a, b);

    SolverConfig cit;
    cit.closure.mode = Mode::CIT;
    cit.closure.kappa = 0.05;
    cit.closure.eta = 0.04;
    cit.closure.zeta_v = 0.05;
    cit.eos = cit.closure.derive_eos(2);
    SolverConfig forced = cit;
    forced.closure.force_eit_assembly = true;
    FieldSet st2 = manufactured(cit.eos.eq);
    FieldSet c = st2, d = st2;
    Solver s1(g, cit), s2(g, forced);
    for (int n = 0; n < 25; ++n) {
      s1.step(c, 2e-4, n);
      s2.step(d, 2e-4, n);
    }
    const bool cit_ok = states_identical(c, d);
    out.push_back(check("C7 mode reductions: EIT assembly w/o flux dependence == CIT; "
                        "CIT w/o transport == Euler (bit for bit)",
                        euler_ok && cit_ok,
                        std::string("euler=") + (euler_ok ? "ok" : "FAIL") + " cit=" +
                            (cit_ok ? "ok" : "FAIL")));
  }

  // 8. Maxwell decomposition equals the undecomposed UCM form
  {
    const Grid g = Grid::make_2d(32, 32, 1.0, 1.0);
    ClosureSpec spec;
    spec.mode = Mode::EIT;
    spec.eta = 0.25;
    spec.zeta_v = 0.25;  // 2 eta / d
    spec.tau2 = 0.1;
    spec.tau0 = 0.1;
    spec.kappa = 0.0;
    Rng rng(7);
    VectorField u(g, 0);
    SymTensorField sigma(g, 1);
    for (int c = 0; c < 2; ++c) {
      TrigSeries t = random_trig(rng, g, 2, 0.5, 0.1);
      sample(t, g, u.comp(c));
    }
    for (int c = 0; c < 3; ++c) {
      TrigSeries t = random_trig(rng, g, 2, 0.4, 0.05);
      sample(t, g, sigma.comp(c));
    }
    auto rd = maxwell_truesdell_rates(sigma, u, spec);
    auto ru = maxwell_truesdell_rates_undecomposed(sigma, u, spec);
    const double rel =
        max_field_diff(rd.sigma_dot, ru.sigma_dot) / std::max(1.0, ru.sigma_dot.max_abs());
    out.push_back(check("C8 Maxwell decomposition: decomposed == undecomposed to 1e-13 "
                        "(zeta_v = 2 eta/d, tau0 = tau2)",
                        rel < 1e-13, "relative " + fmt(rel)));
  }

  // 9. higher-order hierarchy
  {
    const Grid g = Grid::make_1d(96, 1.0);
    ClosureSpec spec;
    spec.mode = Mode::EIT_Higher;
    spec.kappa = 0.4;
    spec.tau1 = 0.12;
    spec.n_order = 1;
    Rng rng(8);
    ScalarField T = sample_scalar(random_trig(rng, g, 2, 0.08, 1.0), g);
    VectorField q(g, 1);
    {
      TrigSeries fq = random_trig(rng, g, 2, 0.2);
      sample(fq, g, q.comp(0));
    }
    VectorField uz(g, 0);
    auto chain = higher_order_rates(q, {}, T, uz, spec);
    ClosureSpec cc = spec;
    cc.mode = Mode::EIT;
    cc.n_order = 1;
    auto base = cattaneo_christov_rates(q, T, uz, cc);
    bool n1_exact = true;
    for (int i = 0; i < g.cells(); ++i)
      if (chain.q1.q_dot(0, i) != base.q_dot(0, i)) n1_exact = false;

    // n = 2 frozen-field relaxation to the stationary chain
    spec.n_order = 2;
    spec.kappa_k = {0.25};
    spec.tau_k = {0.1};
    VectorField q1(g, 1);
    std::vector<HigherFluxField> qk;
    qk.emplace_back(g, 2);
    const double dt = spec.tau_k[0] / 50.0;
    const int nsteps = static_cast<int>(60.0 * spec.tau1 / dt);
    for (int n = 0; n < nsteps; ++n) {
      auto k1 = higher_order_rates(q1, qk, T, uz, spec);
      VectorField qa = q1;
      qa.axpy(0.5 * dt, k1.q1.q_dot);
      std::vector<HigherFluxField> qka = qk;
      qka[0].axpy(0.5 * dt, k1.qk_dot[0]);
      auto k2 = higher_order_rates(qa, qka, T, uz, spec);
      VectorField qb = q1;
      qb.axpy(0.5 * dt, k2.q1.q_dot);
      std::vector<HigherFluxField> qkb = qk;
      qkb[0].axpy(0.5 * dt, k2.qk_dot[0]);
      auto k3 = higher_order_rates(qb, qkb, T, uz, spec);
      VectorField qc = q1;
      qc.axpy(dt, k3.q1.q_dot);
      std::vector<HigherFluxField> qkc = qk;
      qkc[0].axpy(dt, k3.qk_dot[0]);
      auto k4 = higher_order_rates(qc, qkc, T, uz, spec);
      q1.axpy(dt / 6, k1.q1.q_dot);
      q1.axpy(2 * dt / 6, k2.q1.q_dot);
      q1.axpy(2 * dt / 6, k3.q1.q_dot);
      q1.axpy(dt / 6, k4.q1.q_dot);
      qk[0].axpy(dt / 6, k1.qk_dot[0]);
      qk[0].axpy(2 * dt / 6, k2.qk_dot[0]);
      qk[0].axpy(2 * dt / 6, k3.qk_dot[0]);
      qk[0].axpy(dt / 6, k4.qk_dot[0]);
    }
    VectorField gT = grad_scalar(T);
    VectorField d2 = div_higher_vec(qk[0]);
    HigherFluxField g1 = sym_grad_higher(q1);
    double res = 0.0;
    const double scale = std::max(q1.max_abs(), 1e-12);
    for (int i = 0; i < g.cells(); ++i) {
      const double ts = T[i] / spec.T_ref;
      res = std::max(res,
                     std::abs(q1(0, i) + spec.kappa * gT(0, i) + ts * spec.tau1 * d2(0, i)));
      res = std::max(res, std::abs(qk[0](0, i) + ts * spec.kappa_k[0] * g1(0, i)));
    }
    out.push_back(check("C9 higher-order hierarchy: n=1 == Cattaneo-Christov exactly; n=2 "
                        "stationary residual < 1e-6",
                        n1_exact && res / scale < 1e-6,
                        std::string("n1 ") + (n1_exact ? "exact" : "FAIL") + ", residual " +
                            fmt(res / scale)));
  }

  // mass audit across the bundle
  {
    double worst = 0.0;
    for (const auto& [name, run] : bundle.runs)
      worst = std::max(worst, mass_drift_rel(run.record));
    out.push_back(check("balances: mass drift < 1e-12 relative on every bundled run",
                        worst < 1e-12, "worst " + fmt(worst)));
  }

  // fault injection: an inconsistent (tampered) relaxation sign must trip
  // the positivity monitor
  {
    const Grid g = Grid::make_1d(64, 1.0);
    ClosureSpec spec;
    spec.mode = Mode::EIT;
    spec.kappa = 0.1;
    spec.tau1 = 0.1;
    spec.T_ref = 1.0;
    NonEqEOS eos = spec.derive_eos(1);
    NonEqEOS tampered = eos;
    tampered.alpha = -eos.alpha;  // tau1 = kappa T alpha flipped
    Rng rng(3);
    ScalarField rho(g, 1), s(g, 1);
    rho.fill(1.0);
    s = sample_scalar(random_trig(rng, g, 2, 0.05, 0.2), g, 1);
    VectorField u(g, 0);
    VectorField q(g, 1);
    TrigSeries fq = random_trig(rng, g, 2, 0.05);
    sample(fq, g, q.comp(0));
    auto ev = eval(tampered, rho, s, nullptr, &q);
    auto qr = cattaneo_christov_rates(q, ev.T, u, spec);
    ScalarField prod =
        entropy_production(u, nullptr, &q, {}, ev, nullptr, &qr.q_truesdell, {}, tampered, spec);
    double pmin = 1e300;
    for (int i = 0; i < g.cells(); ++i) pmin = std::min(pmin, prod[i]);
    out.push_back(check("balances: positivity monitor trips on a tampered relaxation sign",
                        pmin < -1e-10, "min production " + fmt(pmin)));
  }

  return out;
}

std::vector<Check> verify_suite(const std::string& suite) {
  if (suite == "fields") return verify_fields();
  if (suite == "thermo") return verify_thermo();
  if (suite == "material") return verify_material();
  if (suite == "finite-dim") return verify_finite_dim();
  if (suite == "balances") return verify_balances();
  if (suite == "all") {
    std::vector<Check> out;
    for (const char* s : {"fields", "thermo", "material", "finite-dim", "balances"}) {
      auto part = verify_suite(s);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw ConfigError("unknown verify suite '" + suite +
                    "' (fields|thermo|material|finite-dim|balances|all)");
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace eit
