#include "eit/scenario.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "eit/synth.hpp"

namespace eit {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("scenario." + path + ": " + msg);
}

double need_num(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) fail(path + "." + key, "missing");
  if (!j[key].is_number()) fail(path + "." + key, "must be a number");
  return j[key].get<double>();
}

double opt_num(const json& j, const std::string& path, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) fail(path + "." + key, "must be a number");
  return j[key].get<double>();
}

std::string opt_str(const json& j, const std::string& path, const std::string& key,
                    const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_string()) fail(path + "." + key, "must be a string");
  return j[key].get<std::string>();
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) fail(path, "unknown key '" + it.key() + "'");
  }
}

AxisKind axis_kind(const std::string& s, const std::string& path) {
  if (s == "periodic") return AxisKind::Periodic;
  if (s == "wall") return AxisKind::Wall;
  fail(path, "axis kind must be 'periodic' or 'wall'");
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: JSON parse error: ") + e.what());
  }
  check_keys(j, "", {"name", "grid", "mode", "eos", "closure", "ic", "step", "momentum_form",
                     "frozen_hydro", "hyperdiffusion", "output"});
  Scenario sc;
  sc.name = opt_str(j, "", "name", "unnamed");

  // grid
  {
    if (!j.contains("grid")) fail("grid", "missing");
    const json& g = j["grid"];
    check_keys(g, "grid", {"dim", "n", "length", "axes"});
    const int dim = static_cast<int>(need_num(g, "grid", "dim"));
    if (dim != 1 && dim != 2) fail("grid.dim", "must be 1 or 2");
    if (!g.contains("n") || !g["n"].is_array() || g["n"].size() != static_cast<size_t>(dim))
      fail("grid.n", "must be an array of dim extents");
    std::array<int, 2> n{4, 4};
    std::array<double, 2> len{1.0, 1.0};
    for (int a = 0; a < dim; ++a) n[a] = g["n"][a].get<int>();
    if (g.contains("length")) {
      if (!g["length"].is_array() || g["length"].size() != static_cast<size_t>(dim))
        fail("grid.length", "must be an array of dim lengths");
      for (int a = 0; a < dim; ++a) len[a] = g["length"][a].get<double>();
    }
    std::array<AxisKind, 2> kinds{AxisKind::Periodic, AxisKind::Periodic};
    if (g.contains("axes")) {
      if (!g["axes"].is_array() || g["axes"].size() != static_cast<size_t>(dim))
        fail("grid.axes", "must be an array of dim axis kinds");
      for (int a = 0; a < dim; ++a)
        kinds[a] = axis_kind(g["axes"][a].get<std::string>(), "grid.axes");
    }
    try {
      sc.grid = dim == 1 ? Grid::make_1d(n[0], len[0], kinds[0])
                         : Grid::make_2d(n[0], n[1], len[0], len[1], kinds[0], kinds[1]);
    } catch (const StencilError& e) {
      fail("grid", e.what());
    }
  }

  // mode
  {
    const std::string m = opt_str(j, "", "mode", "EIT");
    auto mode = mode_from_string(m);
    if (!mode) fail("mode", "unknown mode '" + m + "'");
    sc.solver.closure.mode = *mode;
  }

  // eos
  EquilibriumEOS eq;
  if (j.contains("eos")) {
    const json& e = j["eos"];
    check_keys(e, "eos", {"K", "gamma_ad", "c_v", "s_ref", "rho_ref"});
    eq.K = opt_num(e, "eos", "K", 1.0);
    eq.gamma_ad = opt_num(e, "eos", "gamma_ad", 1.4);
    eq.c_v = opt_num(e, "eos", "c_v", 1.0);
    eq.s_ref = opt_num(e, "eos", "s_ref", 0.0);
    eq.rho_ref = opt_num(e, "eos", "rho_ref", 1.0);
    if (eq.K <= 0 || eq.gamma_ad <= 1.0 || eq.c_v <= 0) fail("eos", "K > 0, gamma_ad > 1, c_v > 0 required");
  }

  // closure
  {
    ClosureSpec& cl = sc.solver.closure;
    if (j.contains("closure")) {
      const json& c = j["closure"];
      check_keys(c, "closure", {"kappa", "eta", "zeta_v", "tau1", "tau2", "tau0", "gamma_p",
                                "gamma_s", "n_order", "kappa_k", "tau_k", "T_ref"});
      cl.kappa = opt_num(c, "closure", "kappa", 0.0);
      cl.eta = opt_num(c, "closure", "eta", 0.0);
      cl.zeta_v = opt_num(c, "closure", "zeta_v", 0.0);
      cl.tau1 = opt_num(c, "closure", "tau1", 0.0);
      cl.tau2 = opt_num(c, "closure", "tau2", 0.0);
      cl.tau0 = opt_num(c, "closure", "tau0", 0.0);
      cl.gamma_p = opt_num(c, "closure", "gamma_p", 0.0);
      cl.gamma_s = opt_num(c, "closure", "gamma_s", 0.0);
      cl.n_order = static_cast<int>(opt_num(c, "closure", "n_order", 1.0));
      cl.T_ref = opt_num(c, "closure", "T_ref", 1.0);
      for (const char* key : {"kappa_k", "tau_k"}) {
        if (!c.contains(key)) continue;
        if (!c[key].is_array()) fail(std::string("closure.") + key, "must be an array");
        auto& dst = std::string(key) == "kappa_k" ? cl.kappa_k : cl.tau_k;
        for (const auto& v : c[key]) dst.push_back(v.get<double>());
      }
    }
    sc.solver.eos = cl.derive_eos(sc.grid.dim, eq);
    try {
      cl.validate(sc.grid.dim, &sc.solver.eos);
    } catch (const ConfigError& e) {
      fail("closure", e.what());
    }
  }

  // ic
  if (j.contains("ic")) {
    const json& ic = j["ic"];
    check_keys(ic, "ic", {"type", "rho0", "T0", "amp", "width", "center", "perturb", "modes",
                          "fluxes", "seed"});
    const std::string type = opt_str(ic, "ic", "type", "uniform");
    if (type == "uniform")
      sc.ic = Scenario::ICKind::Uniform;
    else if (type == "gaussian-pulse-T")
      sc.ic = Scenario::ICKind::GaussianPulseT;
    else if (type == "shear-layer")
      sc.ic = Scenario::ICKind::ShearLayer;
    else if (type == "manufactured")
      sc.ic = Scenario::ICKind::Manufactured;
    else
      fail("ic.type", "unknown initial condition '" + type + "'");
    sc.rho0 = opt_num(ic, "ic", "rho0", 1.0);
    sc.T0 = opt_num(ic, "ic", "T0", 1.0);
    if (sc.rho0 <= 0 || sc.T0 <= 0) fail("ic", "rho0 and T0 must be > 0");
    sc.pulse_amp = opt_num(ic, "ic", "amp", sc.ic == Scenario::ICKind::Manufactured ? 1e-3 : 0.0);
    sc.pulse_width = opt_num(ic, "ic", "width", 0.1);
    sc.shear_perturb = opt_num(ic, "ic", "perturb", 0.02);
    sc.manu_modes = static_cast<int>(opt_num(ic, "ic", "modes", 2.0));
    sc.manu_amp = sc.pulse_amp;
    sc.shear_amp = sc.pulse_amp;
    sc.shear_width = sc.pulse_width;
    if (ic.contains("center")) {
      if (!ic["center"].is_array()) fail("ic.center", "must be an array");
      for (size_t a = 0; a < ic["center"].size() && a < 2; ++a)
        sc.pulse_center[a] = ic["center"][a].get<double>();
    }
    const std::string fl = opt_str(ic, "ic", "fluxes", "zero");
    if (fl == "zero")
      sc.flux_init = Scenario::FluxInit::Zero;
    else if (fl == "slaved")
      sc.flux_init = Scenario::FluxInit::Slaved;
    else
      fail("ic.fluxes", "must be 'zero' or 'slaved'");
    sc.seed = static_cast<std::uint64_t>(opt_num(ic, "ic", "seed", 1234.0));
    if (sc.ic == Scenario::ICKind::GaussianPulseT && sc.pulse_amp <= -1.0)
      fail("ic.amp", "pulse amplitude must keep T positive");
    if (sc.ic == Scenario::ICKind::ShearLayer && sc.grid.dim != 2)
      fail("ic.type", "shear-layer requires a 2D grid");
  }

  // step control
  {
    StepControl& ctrl = sc.solver.ctrl;
    if (j.contains("step")) {
      const json& st = j["step"];
      check_keys(st, "step", {"cfl", "dt", "t_end", "steps", "scheme", "dt_scale"});
      ctrl.cfl = opt_num(st, "step", "cfl", 0.2);
      ctrl.dt = opt_num(st, "step", "dt", 0.0);
      ctrl.t_end = opt_num(st, "step", "t_end", 0.0);
      ctrl.dt_scale = opt_num(st, "step", "dt_scale", 1.0);
      sc.max_steps = static_cast<long>(opt_num(st, "step", "steps", 0.0));
      const std::string scheme = opt_str(st, "step", "scheme", "rk4");
      if (scheme == "rk4")
        ctrl.scheme = StepControl::Scheme::RK4;
      else if (scheme == "ssprk3")
        ctrl.scheme = StepControl::Scheme::SSPRK3;
      else
        fail("step.scheme", "must be 'rk4' or 'ssprk3'");
      if (ctrl.cfl <= 0 || ctrl.cfl > 1.0) fail("step.cfl", "must be in (0, 1]");
      if (ctrl.t_end < 0) fail("step.t_end", "must be >= 0");
      if (ctrl.t_end == 0 && sc.max_steps <= 0) fail("step", "needs t_end > 0 or steps > 0");
    } else {
      fail("step", "missing");
    }
  }

  {
    const std::string form = opt_str(j, "", "momentum_form", "B");
    if (form == "A")
      sc.solver.form = MomentumForm::A;
    else if (form == "B")
      sc.solver.form = MomentumForm::B;
    else
      fail("momentum_form", "must be 'A' or 'B'");
  }
  if (j.contains("frozen_hydro")) {
    if (!j["frozen_hydro"].is_boolean()) fail("frozen_hydro", "must be a boolean");
    sc.solver.frozen_hydro = j["frozen_hydro"].get<bool>();
  }
  sc.solver.nu4 = opt_num(j, "", "hyperdiffusion", 0.0);
  if (sc.solver.nu4 < 0) fail("hyperdiffusion", "must be >= 0");

  // output
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"record_every", "snapshot_times", "probes"});
    sc.record_every = static_cast<int>(opt_num(o, "output", "record_every", 1.0));
    if (sc.record_every < 1) fail("output.record_every", "must be >= 1");
    if (o.contains("snapshot_times"))
      for (const auto& v : o["snapshot_times"]) sc.snapshot_times.push_back(v.get<double>());
    if (o.contains("probes"))
      for (const auto& p : o["probes"]) {
        if (!p.is_array() || p.size() < static_cast<size_t>(sc.grid.dim))
          fail("output.probes", "each probe needs one coordinate per axis");
        std::array<double, 2> pt{0.5, 0.5};
        for (size_t a = 0; a < p.size() && a < 2; ++a) pt[a] = p[a].get<double>();
        sc.probes.push_back(pt);
      }
  }
  return sc;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string Scenario::to_canonical_json() const {
  json j;
  j["name"] = name;
  j["grid"]["dim"] = grid.dim;
  j["grid"]["n"] = grid.dim == 1 ? json::array({grid.n[0]}) : json::array({grid.n[0], grid.n[1]});
  j["grid"]["length"] = grid.dim == 1 ? json::array({grid.length(0)})
                                      : json::array({grid.length(0), grid.length(1)});
  json axes = json::array();
  for (int a = 0; a < grid.dim; ++a) axes.push_back(grid.periodic(a) ? "periodic" : "wall");
  j["grid"]["axes"] = axes;
  j["mode"] = to_string(solver.closure.mode);
  j["eos"] = {{"K", solver.eos.eq.K},
              {"gamma_ad", solver.eos.eq.gamma_ad},
              {"c_v", solver.eos.eq.c_v},
              {"s_ref", solver.eos.eq.s_ref},
              {"rho_ref", solver.eos.eq.rho_ref}};
  const ClosureSpec& cl = solver.closure;
  j["closure"] = {{"kappa", cl.kappa}, {"eta", cl.eta},     {"zeta_v", cl.zeta_v},
                  {"tau1", cl.tau1},   {"tau2", cl.tau2},   {"tau0", cl.tau0},
                  {"gamma_p", cl.gamma_p}, {"gamma_s", cl.gamma_s}, {"n_order", cl.n_order},
                  {"kappa_k", cl.kappa_k}, {"tau_k", cl.tau_k}, {"T_ref", cl.T_ref}};
  const char* ic_name = ic == ICKind::Uniform          ? "uniform"
                        : ic == ICKind::GaussianPulseT ? "gaussian-pulse-T"
                        : ic == ICKind::ShearLayer     ? "shear-layer"
                                                       : "manufactured";
  j["ic"] = {{"type", ic_name},
             {"rho0", rho0},
             {"T0", T0},
             {"amp", pulse_amp},
             {"width", pulse_width},
             {"center", json::array({pulse_center[0], pulse_center[1]})},
             {"perturb", shear_perturb},
             {"modes", manu_modes},
             {"fluxes", flux_init == FluxInit::Zero ? "zero" : "slaved"},
             {"seed", seed}};
  j["step"] = {{"cfl", solver.ctrl.cfl},
               {"dt", solver.ctrl.dt},
               {"t_end", solver.ctrl.t_end},
               {"steps", max_steps},
               {"scheme", solver.ctrl.scheme == StepControl::Scheme::RK4 ? "rk4" : "ssprk3"},
               {"dt_scale", solver.ctrl.dt_scale}};
  j["momentum_form"] = solver.form == MomentumForm::A ? "A" : "B";
  j["frozen_hydro"] = solver.frozen_hydro;
  j["hyperdiffusion"] = solver.nu4;
  j["output"]["record_every"] = record_every;
  j["output"]["snapshot_times"] = snapshot_times;
  json probes_j = json::array();
  for (const auto& p : probes)
    probes_j.push_back(grid.dim == 1 ? json::array({p[0]}) : json::array({p[0], p[1]}));
  j["output"]["probes"] = probes_j;
  return j.dump(2);
}

std::string Scenario::hash() const {
  const std::string s = to_canonical_json();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FieldSet Scenario::initial_state() const {
  const Grid& g = grid;
  FieldSet st = FieldSet::zeros(g, solver.closure.n_order);
  const EquilibriumEOS& eq = solver.eos.eq;
  st.rho.fill(rho0);
  const double s0 = eq.entropy_from_T(rho0, T0);
  st.s.fill(s0);

  switch (ic) {
    case ICKind::Uniform:
      break;
    case ICKind::GaussianPulseT: {
      for (int iy = 0; iy < g.n[1]; ++iy)
        for (int ix = 0; ix < g.n[0]; ++ix) {
          double r2 = std::pow(g.x(ix) - pulse_center[0], 2);
          if (g.dim == 2) r2 += std::pow(g.y(iy) - pulse_center[1], 2);
          const double T = T0 * (1.0 + pulse_amp * std::exp(-r2 / (pulse_width * pulse_width)));
          st.s[g.idx(ix, iy)] = eq.entropy_from_T(rho0, T);
        }
      break;
    }
    case ICKind::ShearLayer: {
      for (int iy = 0; iy < g.n[1]; ++iy)
        for (int ix = 0; ix < g.n[0]; ++ix) {
          const int i = g.idx(ix, iy);
          const double y = g.y(iy) / g.length(1);
          const double x = g.x(ix) / g.length(0);
          const double prof = y < 0.5 ? std::tanh((y - 0.25) / shear_width)
                                      : std::tanh((0.75 - y) / shear_width);
          st.u(0, i) = shear_amp * prof;
          st.u(1, i) = shear_perturb * std::sin(2.0 * M_PI * x);
        }
      break;
    }
    case ICKind::Manufactured: {
      Rng rng(seed);
      TrigSeries fr = random_trig(rng, g, manu_modes, manu_amp);
      TrigSeries fs = random_trig(rng, g, manu_modes, manu_amp);
      std::vector<TrigSeries> fu;
      for (int c = 0; c < g.dim; ++c) fu.push_back(random_trig(rng, g, manu_modes, manu_amp));
      for (int iy = 0; iy < g.n[1]; ++iy)
        for (int ix = 0; ix < g.n[0]; ++ix) {
          const int i = g.idx(ix, iy);
          const double x = g.x(ix), y = g.dim == 2 ? g.y(iy) : 0.0;
          st.rho[i] = rho0 * (1.0 + fr.value(x, y));
          st.s[i] = s0 + fs.value(x, y);
          for (int c = 0; c < g.dim; ++c) st.u(c, i) = fu[c].value(x, y);
        }
      break;
    }
  }
  if (flux_init == FluxInit::Slaved && solver.closure.is_eit())
    slave_fluxes_to_cit(st, solver.eos, solver.closure, solver.bc.rules(g));
  return st;
}

Solver Scenario::make_solver() const { return Solver(grid, solver); }

RunOutput run_scenario(const Scenario& sc, const std::function<void(long, const FieldSet&)>& on_step) {
  Solver solver = sc.make_solver();
  FieldSet st = sc.initial_state();

  double dt = sc.solver.ctrl.dt > 0 ? sc.solver.ctrl.dt * sc.solver.ctrl.dt_scale
                                    : solver.auto_dt(st);
  long nsteps;
  if (sc.solver.ctrl.t_end > 0) {
    nsteps = std::max<long>(1, std::lround(sc.solver.ctrl.t_end / dt));
    dt = sc.solver.ctrl.t_end / static_cast<double>(nsteps);
  } else {
    nsteps = sc.max_steps;
  }

  RunOutput out;
  out.record.scenario_hash = sc.hash();
  out.record.dt = dt;
  out.record.steps = nsteps;
  out.record.header.push_back("scenario=" + sc.name);
  out.record.header.push_back(std::string("mode=") + to_string(sc.solver.closure.mode));
  {
    std::ostringstream os;
    const ClosureSpec& cl = sc.solver.closure;
    os << "kappa=" << cl.kappa << " eta=" << cl.eta << " zeta_v=" << cl.zeta_v
       << " tau1=" << cl.tau1 << " tau2=" << cl.tau2 << " tau0=" << cl.tau0
       << " gamma_p=" << cl.gamma_p << " gamma_s=" << cl.gamma_s << " n_order=" << cl.n_order
       << " T_ref=" << cl.T_ref << " alpha=" << sc.solver.eos.alpha
       << " beta=" << sc.solver.eos.beta << " nu4=" << sc.solver.nu4;
    out.record.header.push_back(os.str());
  }

  std::vector<int> probe_cells;
  for (const auto& p : sc.probes) {
    int ix = std::clamp(static_cast<int>(p[0] / sc.grid.h[0]), 0, sc.grid.n[0] - 1);
    int iy = sc.grid.dim == 2 ? std::clamp(static_cast<int>(p[1] / sc.grid.h[1]), 0, sc.grid.n[1] - 1)
                              : 0;
    probe_cells.push_back(sc.grid.idx(ix, iy));
  }

  auto record_sample = [&](long step, double t) {
    SystemRhs r = solver.rhs(st);
    Solver::Budgets b = solver.budgets(st);
    RunSample smp;
    smp.step = step;
    smp.t = t;
    smp.mass = b.mass;
    smp.energy = b.energy;
    smp.entropy = b.entropy;
    smp.varsigma = b.varsigma;
    smp.boundary_energy_flux = b.boundary_energy_flux;
    smp.production_integral = b.production_integral;
    smp.production_min = b.production_min;
    for (int ci : probe_cells) smp.probes.push_back(r.T[ci]);
    out.record.samples.push_back(std::move(smp));
  };

  std::vector<double> snaps = sc.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  size_t next_snap = 0;
  auto take_snapshot = [&](long step, double t) {
    out.record.snapshots.push_back({t, step, st});
  };

  take_snapshot(0, 0.0);
  record_sample(0, 0.0);
  try {
    for (long n = 0; n < nsteps; ++n) {
      solver.step(st, dt, n);
      const double t = dt * static_cast<double>(n + 1);
      if ((n + 1) % sc.record_every == 0 || n + 1 == nsteps) record_sample(n + 1, t);
      while (next_snap < snaps.size() && t >= snaps[next_snap] - 0.5 * dt) {
        take_snapshot(n + 1, t);
        ++next_snap;
      }
      if (on_step) on_step(n + 1, st);
    }
  } catch (const BlowupError& e) {
    out.record.blew_up = true;
    out.record.note = e.what();
  }
  if (out.record.snapshots.empty() || out.record.snapshots.back().step != nsteps)
    take_snapshot(nsteps, dt * static_cast<double>(nsteps));
  out.final_state = st;
  return out;
}

Scenario with_override(const Scenario& base, const std::string& param, double value) {
  json j = json::parse(base.to_canonical_json());
  json* node = &j;
  std::string rest = param;
  std::string last;
  while (true) {
    const auto dot = rest.find('.');
    const std::string key = rest.substr(0, dot);
    if (dot == std::string::npos) {
      last = key;
      break;
    }
    if (!node->contains(key)) throw ConfigError("sweep: unknown parameter path '" + param + "'");
    node = &(*node)[key];
    rest = rest.substr(dot + 1);
  }
  if (!node->contains(last)) throw ConfigError("sweep: unknown parameter path '" + param + "'");
  (*node)[last] = value;
  return Scenario::from_json_text(j.dump());
}

Scenario cit_twin(const Scenario& base) {
  Scenario twin = base;
  ClosureSpec& cl = twin.solver.closure;
  cl.mode = Mode::CIT;
  cl.tau1 = cl.tau2 = cl.tau0 = 0.0;
  cl.gamma_p = cl.gamma_s = 0.0;
  cl.n_order = 1;
  cl.kappa_k.clear();
  cl.tau_k.clear();
  twin.solver.eos = cl.derive_eos(twin.grid.dim, twin.solver.eos.eq);
  twin.name = base.name + "_cit";
  return twin;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const std::string& param,
                                const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("sweep: empty value list");
  std::vector<std::future<SweepRow>> futures;
  for (double v : values) {
    futures.push_back(std::async(std::launch::async, [&base, &param, v]() {
      Scenario sc = with_override(base, param, v);
      RunOutput run = run_scenario(sc);
      SweepRow row;
      row.value = v;
      row.steps = run.record.steps;
      if (!run.record.samples.empty()) {
        const double e0 = run.record.samples.front().energy;
        row.energy_drift_rel =
            std::abs(run.record.samples.back().energy - e0) / std::max(1e-300, std::abs(e0));
        row.min_production = 1e300;
        for (const auto& s : run.record.samples)
          row.min_production = std::min(row.min_production, s.production_min);
      }
      if (sc.solver.closure.is_eit()) {
        // distance to the CIT twin at t_end
        Scenario twin = cit_twin(sc);
        RunOutput ref = run_scenario(twin);
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
        row.cit_l2_distance = std::sqrt(acc * sc.grid.cell_volume());
      }
      if (sc.probes.size() >= 2) {
        SecondSoundResult ss = second_sound_speed(run.record, sc);
        row.second_sound = ss.speed;
        row.diffusive = ss.diffusive;
      }
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

}  // namespace eit

namespace eit {

namespace {

// Bundled desk-scale scenarios. tau0 always satisfies tau0 = d zeta_v beta
// with beta = tau2/(2 eta) in 2D (single-beta closure).
const char* kEitSmooth2d = R"json({
  "name": "eit_smooth_2d",
  "grid": {"dim": 2, "n": [64, 64], "length": [1.0, 1.0], "axes": ["periodic", "periodic"]},
  "mode": "EIT",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.1, "tau1": 0.1, "eta": 0.1, "zeta_v": 0.12, "tau2": 0.08, "tau0": 0.096, "T_ref": 1.0},
  "ic": {"type": "manufactured", "rho0": 1.0, "T0": 1.0, "amp": 0.001, "modes": 2, "fluxes": "slaved", "seed": 2024},
  "step": {"cfl": 0.2, "steps": 500},
  "output": {"record_every": 1}
})json";

const char* kEitSmooth1d = R"json({
  "name": "eit_smooth_1d",
  "grid": {"dim": 1, "n": [128], "length": [1.0]},
  "mode": "EIT",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.15, "tau1": 0.4, "zeta_v": 0.15, "tau0": 0.2, "T_ref": 1.0},
  "ic": {"type": "manufactured", "rho0": 1.0, "T0": 1.0, "amp": 0.002, "modes": 2, "fluxes": "slaved", "seed": 7},
  "step": {"cfl": 0.2, "t_end": 0.4},
  "output": {"record_every": 4}
})json";

const char* kCcPulse1d = R"json({
  "name": "cc_pulse_1d",
  "grid": {"dim": 1, "n": [256], "length": [1.0]},
  "mode": "EIT",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.08, "tau1": 0.2, "T_ref": 1.0},
  "ic": {"type": "gaussian-pulse-T", "rho0": 1.0, "T0": 1.0, "amp": 0.02, "width": 0.04, "center": [0.35], "fluxes": "zero"},
  "step": {"cfl": 0.2, "t_end": 1.1},
  "frozen_hydro": true,
  "output": {"record_every": 1, "probes": [[0.55], [0.75]], "snapshot_times": [0.25, 0.5]}
})json";

const char* kEitJs2d = R"json({
  "name": "eit_js_2d",
  "grid": {"dim": 2, "n": [48, 48], "length": [1.0, 1.0], "axes": ["periodic", "periodic"]},
  "mode": "EIT_JS",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.1, "tau1": 0.1, "eta": 0.1, "zeta_v": 0.12, "tau2": 0.08, "tau0": 0.096, "gamma_p": 0.05, "gamma_s": 0.05, "T_ref": 1.0},
  "ic": {"type": "manufactured", "rho0": 1.0, "T0": 1.0, "amp": 0.0005, "modes": 2, "fluxes": "slaved", "seed": 99},
  "step": {"cfl": 0.2, "t_end": 0.25},
  "output": {"record_every": 2}
})json";

const char* kEitHigher1d = R"json({
  "name": "eit_higher_1d",
  "grid": {"dim": 1, "n": [128], "length": [1.0]},
  "mode": "EIT_HIGHER",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.1, "tau1": 0.1, "n_order": 2, "kappa_k": [0.08], "tau_k": [0.08], "T_ref": 1.0},
  "ic": {"type": "manufactured", "rho0": 1.0, "T0": 1.0, "amp": 0.001, "modes": 2, "fluxes": "zero", "seed": 41},
  "step": {"cfl": 0.2, "t_end": 0.3},
  "output": {"record_every": 2}
})json";

const char* kWallPulse1d = R"json({
  "name": "wall_pulse_1d",
  "grid": {"dim": 1, "n": [96], "length": [1.0], "axes": ["wall"]},
  "mode": "EIT",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.08, "tau1": 0.15, "zeta_v": 0.1, "tau0": 0.075, "T_ref": 1.0},
  "ic": {"type": "gaussian-pulse-T", "rho0": 1.0, "T0": 1.0, "amp": 0.03, "width": 0.1, "center": [0.45], "fluxes": "zero"},
  "step": {"cfl": 0.2, "t_end": 0.3},
  "output": {"record_every": 1, "snapshot_times": [0.15]}
})json";

const char* kUniformEq2d = R"json({
  "name": "uniform_eq_2d",
  "grid": {"dim": 2, "n": [16, 16], "length": [1.0, 1.0], "axes": ["periodic", "periodic"]},
  "mode": "EIT",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.1, "tau1": 0.1, "eta": 0.1, "zeta_v": 0.12, "tau2": 0.08, "tau0": 0.096, "T_ref": 1.0},
  "ic": {"type": "uniform", "rho0": 1.2, "T0": 0.9},
  "step": {"cfl": 0.2, "steps": 50},
  "output": {"record_every": 1}
})json";

const char* kShearLayer2d = R"json({
  "name": "shear_layer_2d",
  "grid": {"dim": 2, "n": [64, 64], "length": [1.0, 1.0], "axes": ["periodic", "periodic"]},
  "mode": "EIT",
  "eos": {"K": 1.0, "gamma_ad": 1.4, "c_v": 1.0},
  "closure": {"kappa": 0.05, "tau1": 0.08, "eta": 0.08, "zeta_v": 0.1, "tau2": 0.06, "tau0": 0.075, "T_ref": 1.0},
  "ic": {"type": "shear-layer", "rho0": 1.0, "T0": 1.0, "amp": 0.25, "width": 0.08, "perturb": 0.01, "fluxes": "slaved"},
  "step": {"cfl": 0.2, "t_end": 0.5},
  "hyperdiffusion": 0.02,
  "output": {"record_every": 5}
})json";

struct Bundled {
  const char* name;
  const char* text;
};

const Bundled kBundled[] = {
    {"eit_smooth_2d", kEitSmooth2d}, {"eit_smooth_1d", kEitSmooth1d},
    {"cc_pulse_1d", kCcPulse1d},     {"eit_js_2d", kEitJs2d},
    {"eit_higher_1d", kEitHigher1d}, {"wall_pulse_1d", kWallPulse1d},
    {"uniform_eq_2d", kUniformEq2d}, {"shear_layer_2d", kShearLayer2d},
};

}  // namespace

std::vector<std::string> bundled_scenario_names() {
  std::vector<std::string> names;
  for (const auto& b : kBundled) names.push_back(b.name);
  return names;
}

std::string bundled_scenario_text(const std::string& name) {
  for (const auto& b : kBundled)
    if (name == b.name) return b.text;
  throw ConfigError("unknown bundled scenario '" + name + "'");
}

}  // namespace eit
