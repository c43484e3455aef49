#include "eit/thermo.hpp"

#include <cmath>
#include <sstream>

#include "eit/errors.hpp"

namespace eit {

double EquilibriumEOS::eps(double rho, double s) const {
  return K * std::pow(rho, gamma_ad) * std::exp((s / rho - s_ref) / c_v);
}

double EquilibriumEOS::deps_drho(double rho, double s) const {
  return eps(rho, s) * (gamma_ad / rho - s / (c_v * rho * rho));
}

double EquilibriumEOS::deps_ds(double rho, double s) const { return eps(rho, s) / (c_v * rho); }

double EquilibriumEOS::d2eps_ds2(double rho, double s) const {
  const double cr = c_v * rho;
  return eps(rho, s) / (cr * cr);
}

double EquilibriumEOS::sound_speed(double rho, double s) const {
  return std::sqrt(gamma_ad * (gamma_ad - 1.0) * eps(rho, s) / rho);
}

double EquilibriumEOS::entropy_from_T(double rho, double T) const {
  return rho * (s_ref + c_v * std::log(c_v * T * std::pow(rho, 1.0 - gamma_ad) / K));
}

namespace {

std::string cell_str(const Grid& g, int i) {
  std::ostringstream os;
  os << "cell (" << i % g.n[0];
  if (g.dim == 2) os << ", " << i / g.n[0];
  os << ")";
  return os.str();
}

// {value, d/drho, d/ds} of a possibly state-dependent coefficient.
struct Coef {
  double v, dr, ds;
};

Coef coef_at(const std::function<double(double, double)>& fn, double cval, double rho, double s) {
  if (!fn) return {cval, 0.0, 0.0};
  const double hr = 1e-6 * (std::abs(rho) + 1.0);
  const double hs = 1e-6 * (std::abs(s) + 1.0);
  return {fn(rho, s), (fn(rho + hr, s) - fn(rho - hr, s)) / (2.0 * hr),
          (fn(rho, s + hs) - fn(rho, s - hs)) / (2.0 * hs)};
}

}  // namespace

EOSEvalFields eval(const NonEqEOS& eos, const ScalarField& rho, const ScalarField& s,
                   const SymTensorField* sigma, const VectorField* q,
                   std::span<const HigherFluxField> q_higher) {
  const Grid& g = rho.grid();
  EOSEvalFields out;
  out.eps_hat = ScalarField(g, 1);
  out.T = ScalarField(g, 0);
  out.p = ScalarField(g, 0);
  out.p_hat = ScalarField(g, 0);
  out.de_drho = ScalarField(g, 0);
  if (q) out.dq = VectorField(g, 0);
  if (sigma) out.dsig = SymTensorField(g, 0);
  for (const auto& qk : q_higher) out.dqk.emplace_back(g, qk.order);

  const int n = g.cells();
  for (int i = 0; i < n; ++i) {
    const double r = rho[i];
    if (!(r > 0.0)) throw std::domain_error("eos eval: rho <= 0 at " + cell_str(g, i));
    const double sv = s[i];
    const double e_eq = eos.eq.eps(r, sv);
    const Coef a = coef_at(eos.alpha_fn, eos.alpha, r, sv);
    const Coef b = coef_at(eos.beta_fn, eos.beta, r, sv);

    double q2 = 0.0;
    if (q)
      for (int c = 0; c < g.dim; ++c) q2 += (*q)(c, i) * (*q)(c, i);
    double s2 = 0.0;
    if (sigma)
      for (int c = 0; c < sigma->ncomp(); ++c) s2 += sigma->weight(c) * (*sigma)(c, i) * (*sigma)(c, i);
    double qk2_sum = 0.0;
    for (size_t m = 0; m < q_higher.size(); ++m) {
      const auto& qk = q_higher[m];
      const double ak = eos.higher_alpha.size() > m ? eos.higher_alpha[m] : 0.0;
      double qk2 = 0.0;
      for (int c = 0; c < qk.ncomp(); ++c) qk2 += qk.weight(c) * qk(c, i) * qk(c, i);
      qk2_sum += ak * qk2;
      for (int c = 0; c < qk.ncomp(); ++c) out.dqk[m](c, i) = ak * qk(c, i);
    }

    const double e_flux = 0.5 * (a.v * q2 + b.v * s2 + qk2_sum);
    const double e_hat = e_eq + e_flux;
    const double T = eos.eq.deps_ds(r, sv) + 0.5 * (a.ds * q2 + b.ds * s2);
    if (!(T > 0.0)) throw AdmissibilityError("eos eval: T <= 0 at " + cell_str(g, i));
    const double de_drho = eos.eq.deps_drho(r, sv) + 0.5 * (a.dr * q2 + b.dr * s2);
    const double p = r * de_drho + sv * T - e_hat;

    out.eps_hat[i] = e_hat;
    out.T[i] = T;
    out.p[i] = p;
    out.p_hat[i] = p + a.v * q2 + b.v * s2 + qk2_sum;
    out.de_drho[i] = de_drho;
    if (q)
      for (int c = 0; c < g.dim; ++c) out.dq(c, i) = a.v * (*q)(c, i);
    if (sigma)
      for (int c = 0; c < sigma->ncomp(); ++c) out.dsig(c, i) = b.v * (*sigma)(c, i);
  }
  return out;
}

TotalEnergy total_energy(const NonEqEOS& eos, const VectorField& u, const ScalarField& rho,
                         const ScalarField& s, const SymTensorField* sigma, const VectorField* q,
                         std::span<const HigherFluxField> q_higher) {
  // No temperature admissibility gate here: the energy only needs eps_hat.
  const Grid& g = rho.grid();
  TotalEnergy out{ScalarField(g, 1), 0.0};
  for (int i = 0; i < g.cells(); ++i) {
    const double r = rho[i];
    if (!(r > 0.0)) throw std::domain_error("total_energy: rho <= 0 at " + cell_str(g, i));
    const double sv = s[i];
    const double a = eos.alpha_at(r, sv), b = eos.beta_at(r, sv);
    double q2 = 0.0;
    if (q)
      for (int c = 0; c < g.dim; ++c) q2 += (*q)(c, i) * (*q)(c, i);
    double s2 = 0.0;
    if (sigma)
      for (int c = 0; c < sigma->ncomp(); ++c) s2 += sigma->weight(c) * (*sigma)(c, i) * (*sigma)(c, i);
    double qk2_sum = 0.0;
    for (size_t m = 0; m < q_higher.size(); ++m) {
      const auto& qk = q_higher[m];
      const double ak = eos.higher_alpha.size() > m ? eos.higher_alpha[m] : 0.0;
      double qk2 = 0.0;
      for (int c = 0; c < qk.ncomp(); ++c) qk2 += qk.weight(c) * qk(c, i) * qk(c, i);
      qk2_sum += ak * qk2;
    }
    double ke = 0.0;
    for (int c = 0; c < g.dim; ++c) ke += u(c, i) * u(c, i);
    out.e_hat[i] = 0.5 * r * ke + eos.eq.eps(r, sv) + 0.5 * (a * q2 + b * s2 + qk2_sum);
  }
  out.integral = integral(out.e_hat);
  return out;
}

EOSEval eval_point(const NonEqEOS& eos, const StatePoint& st) {
  const int dim = st.dim;
  EOSEval out;
  const double e_eq = eos.eq.eps(st.rho, st.s);
  const Coef a = coef_at(eos.alpha_fn, eos.alpha, st.rho, st.s);
  const Coef b = coef_at(eos.beta_fn, eos.beta, st.rho, st.s);
  double q2 = 0.0;
  for (int c = 0; c < dim; ++c) q2 += st.q[c] * st.q[c];
  const int nsym = dim == 1 ? 1 : 3;
  double s2 = 0.0;
  for (int c = 0; c < nsym; ++c) {
    const double w = (dim == 2 && c == 1) ? 2.0 : 1.0;
    s2 += w * st.sigma[c] * st.sigma[c];
  }
  double qk2_sum = 0.0;
  out.dqk.resize(st.q_higher.size());
  for (size_t m = 0; m < st.q_higher.size(); ++m) {
    const double ak = eos.higher_alpha.size() > m ? eos.higher_alpha[m] : 0.0;
    const int k = st.higher_orders.size() > m ? st.higher_orders[m] : 2;
    double qk2 = 0.0;
    out.dqk[m].resize(st.q_higher[m].size());
    for (size_t c = 0; c < st.q_higher[m].size(); ++c) {
      const double w = dim == 1 ? 1.0 : binomial(k, static_cast<int>(c));
      qk2 += w * st.q_higher[m][c] * st.q_higher[m][c];
      out.dqk[m][c] = ak * st.q_higher[m][c];
    }
    qk2_sum += ak * qk2;
  }
  out.eps_hat = e_eq + 0.5 * (a.v * q2 + b.v * s2 + qk2_sum);
  out.T = eos.eq.deps_ds(st.rho, st.s) + 0.5 * (a.ds * q2 + b.ds * s2);
  const double de_drho = eos.eq.deps_drho(st.rho, st.s) + 0.5 * (a.dr * q2 + b.dr * s2);
  out.p = st.rho * de_drho + st.s * out.T - out.eps_hat;
  out.p_hat = out.p + a.v * q2 + b.v * s2 + qk2_sum;
  for (int c = 0; c < dim; ++c) out.dq[c] = a.v * st.q[c];
  for (int c = 0; c < nsym; ++c) out.dsig[c] = b.v * st.sigma[c];
  return out;
}

DerivativeReport check_derivatives(const NonEqEOS& eos, const StatePoint& st, double h) {
  DerivativeReport rep;
  const EOSEval ev = eval_point(eos, st);
  auto eps_of = [&](const StatePoint& p) { return eval_point(eos, p).eps_hat; };
  auto record = [&](double fd, double analytic, const std::string& name) {
    const double scale = std::max({std::abs(fd), std::abs(analytic), 1e-12});
    const double rel = std::abs(fd - analytic) / scale;
    if (rel > rep.max_rel_err) {
      rep.max_rel_err = rel;
      rep.worst = name;
    }
  };

  {
    StatePoint p = st, m = st;
    p.s += h;
    m.s -= h;
    record((eps_of(p) - eps_of(m)) / (2 * h), ev.T, "d eps/d s (T)");
  }
  {
    StatePoint p = st, m = st;
    const double hr = h * std::max(1.0, std::abs(st.rho));
    p.rho += hr;
    m.rho -= hr;
    const double de_drho = (ev.p - st.s * ev.T + ev.eps_hat) / st.rho;  // invert p formula
    record((eps_of(p) - eps_of(m)) / (2 * hr), de_drho, "d eps/d rho");
  }
  for (int c = 0; c < st.dim; ++c) {
    StatePoint p = st, m = st;
    p.q[c] += h;
    m.q[c] -= h;
    record((eps_of(p) - eps_of(m)) / (2 * h), ev.dq[c], "d eps/d q[" + std::to_string(c) + "]");
  }
  const int nsym = st.dim == 1 ? 1 : 3;
  for (int c = 0; c < nsym; ++c) {
    StatePoint p = st, m = st;
    p.sigma[c] += h;
    m.sigma[c] -= h;
    const double w = (st.dim == 2 && c == 1) ? 2.0 : 1.0;
    // stored off-diagonals appear twice in the contraction
    record((eps_of(p) - eps_of(m)) / (2 * h), w * ev.dsig[c],
           "d eps/d sigma[" + std::to_string(c) + "]");
  }
  for (size_t m0 = 0; m0 < st.q_higher.size(); ++m0)
    for (size_t c = 0; c < st.q_higher[m0].size(); ++c) {
      StatePoint p = st, mm = st;
      p.q_higher[m0][c] += h;
      mm.q_higher[m0][c] -= h;
      const int k = st.higher_orders.size() > m0 ? st.higher_orders[m0] : 2;
      const double w = st.dim == 1 ? 1.0 : binomial(k, static_cast<int>(c));
      record((eps_of(p) - eps_of(mm)) / (2 * h), w * ev.dqk[m0][c],
             "d eps/d q" + std::to_string(k) + "[" + std::to_string(c) + "]");
    }
  return rep;
}

}  // namespace eit
