#include "eit/finite_dim.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace eit {

void FiniteSystem::set_kappa(int A, int B, double k) {
  kappa.resize(static_cast<size_t>(N()) * N(), 0.0);
  kappa[static_cast<size_t>(A) * N() + B] = k;
  kappa[static_cast<size_t>(B) * N() + A] = k;
}

void FiniteSystem::validate() const {
  const int n = N();
  if (kappa.size() != static_cast<size_t>(n) * n)
    throw ConfigError("finite system: kappa must be N x N");
  for (int a = 0; a < n; ++a) {
    if (subs[a].mass <= 0 || subs[a].C_heat <= 0)
      throw ConfigError("finite system: masses and heat capacities must be > 0");
    if (subs[a].gamma_fric < 0) throw ConfigError("finite system: friction must be >= 0");
    for (int b = 0; b < n; ++b) {
      if (kappa_at(a, b) < 0) throw ConfigError("finite system: kappa must be >= 0");
      if (std::abs(kappa_at(a, b) - kappa_at(b, a)) > 0)
        throw ConfigError("finite system: kappa must be symmetric");
    }
  }
}

double FiniteSystem::temperature(int A, double S) const {
  const double x = S / subs[A].C_heat;
  if (x > 700.0) throw AdmissibilityError("finite system: temperature overflow");
  return std::exp(x);
}

double FiniteSystem::internal_energy(int A, double S) const {
  return subs[A].C_heat * temperature(A, S);
}

double FiniteSystem::exchange_flux(int A, int B, double TA, double TB) const {
  const double dT = TA - TB;
  return -kappa_at(A, B) * dT * dT / (TA * TB);
}

FiniteState FiniteState::zeros(int N) {
  FiniteState st;
  st.q.assign(N, 0.0);
  st.qdot.assign(N, 0.0);
  st.S.assign(N, 0.0);
  st.Sigma.assign(N, 0.0);
  st.Gamma.assign(N, 0.0);
  st.exch.assign(N, 0.0);
  return st;
}

std::vector<double> FiniteState::pack() const {
  std::vector<double> y;
  y.reserve(6 * q.size());
  for (const auto* v : {&q, &qdot, &S, &Sigma, &Gamma, &exch})
    y.insert(y.end(), v->begin(), v->end());
  return y;
}

FiniteState FiniteState::unpack(const std::vector<double>& y, int N) {
  FiniteState st = zeros(N);
  auto it = y.begin();
  for (auto* v : {&st.q, &st.qdot, &st.S, &st.Sigma, &st.Gamma, &st.exch}) {
    std::copy(it, it + N, v->begin());
    it += N;
  }
  return st;
}

void finite_rhs(const FiniteSystem& sys, const std::vector<double>& y, std::vector<double>& dydt) {
  const int n = sys.N();
  FiniteState st = FiniteState::unpack(y, n);
  FiniteState dt = FiniteState::zeros(n);

  std::vector<double> T(n);
  for (int a = 0; a < n; ++a) {
    T[a] = sys.temperature(a, st.S[a]);
    if (!(T[a] > 0.0) || !std::isfinite(T[a]))
      throw AdmissibilityError("finite system: nonpositive temperature");
  }
  for (int a = 0; a < n; ++a) {
    const auto& sub = sys.subs[a];
    const double F = -sub.gamma_fric * st.qdot[a];  // friction force
    dt.q[a] = st.qdot[a];
    dt.qdot[a] = (-sub.k_spring * st.q[a] + F) / sub.mass;
    const double fric_power = -F * st.qdot[a];  // = gamma |qdot|^2 >= 0
    double dS = fric_power / T[a];
    double dSigma = fric_power / T[a];
    double dExch = 0.0;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      const double J = sys.exchange_flux(a, b, T[a], T[b]);
      dS += J * (T[a] - T[b]) / T[a];
      dSigma -= J * T[b] / T[a];
      dExch += J;
    }
    dt.S[a] = dS;
    dt.Sigma[a] = dSigma;
    dt.Gamma[a] = T[a];
    dt.exch[a] = dExch;
  }
  dydt = dt.pack();
}

FiniteTrajectory integrate(const FiniteSystem& sys, const FiniteState& init, double t_end,
                           double rel_tol, double abs_tol) {
  sys.validate();
  namespace ode = boost::numeric::odeint;
  using state_type = std::vector<double>;
  state_type y = init.pack();
  FiniteTrajectory traj;
  auto rhs = [&sys](const state_type& yy, state_type& dydt, double) { finite_rhs(sys, yy, dydt); };
  auto obs = [&](const state_type& yy, double t) {
    traj.t.push_back(t);
    traj.states.push_back(FiniteState::unpack(yy, sys.N()));
  };
  auto stepper = ode::make_controlled(abs_tol, rel_tol, ode::runge_kutta_dopri5<state_type>());
  ode::integrate_adaptive(stepper, rhs, y, 0.0, t_end, 1e-4, obs);
  return traj;
}

double total_energy(const FiniteSystem& sys, const FiniteState& st) {
  double e = 0.0;
  for (int a = 0; a < sys.N(); ++a) {
    const auto& sub = sys.subs[a];
    e += 0.5 * sub.mass * st.qdot[a] * st.qdot[a] + 0.5 * sub.k_spring * st.q[a] * st.q[a] +
         sys.internal_energy(a, st.S[a]);
  }
  return e;
}

FiniteAudit audit(const FiniteSystem& sys, const FiniteTrajectory& traj) {
  FiniteAudit rep;
  if (traj.states.empty()) return rep;
  const double e0 = total_energy(sys, traj.states.front());
  const int n = sys.N();
  std::vector<double> base(n);
  for (int a = 0; a < n; ++a)
    base[a] = traj.states.front().S[a] - traj.states.front().Sigma[a];
  std::vector<double> sig_prev = traj.states.front().Sigma;
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const FiniteState& st = traj.states[k];
    const double e = total_energy(sys, st);
    rep.max_energy_drift_rel =
        std::max(rep.max_energy_drift_rel, std::abs(e - e0) / std::max(1e-300, std::abs(e0)));
    for (int a = 0; a < n; ++a) {
      rep.max_sigma_decrease = std::max(rep.max_sigma_decrease, sig_prev[a] - st.Sigma[a]);
      // Prigogine split: d(S - Sigma) = d_e S = exchange integral
      const double res = (st.S[a] - st.Sigma[a]) - base[a] - st.exch[a];
      rep.max_exchange_residual = std::max(rep.max_exchange_residual, std::abs(res));
    }
    sig_prev = st.Sigma;
  }
  return rep;
}

}  // namespace eit
