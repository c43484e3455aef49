#include <gtest/gtest.h>

#include <cmath>

#include "eit/constitutive.hpp"
#include "eit/synth.hpp"
#include "test_util.hpp"

using namespace eit;
using namespace eit::test;

namespace {

ClosureSpec eit_spec_1d() {
  ClosureSpec s;
  s.mode = Mode::EIT;
  s.kappa = 0.4;
  s.tau1 = 0.2;
  s.zeta_v = 0.3;
  s.tau0 = 0.15;
  s.T_ref = 1.0;
  return s;
}

ClosureSpec eit_spec_2d() {
  ClosureSpec s;
  s.mode = Mode::EIT;
  s.kappa = 0.4;
  s.tau1 = 0.2;
  s.eta = 0.25;
  s.zeta_v = 0.3;
  s.tau2 = 0.1;
  s.tau0 = 0.12;
  s.T_ref = 1.0;
  return s;
}

ScalarField uniform(const Grid& g, double v, int dw = 0) {
  ScalarField f(g, dw);
  f.fill(v);
  return f;
}

}  // namespace

TEST(ClosureSpec, ValidationCatchesModeViolations) {
  ClosureSpec s = eit_spec_2d();
  EXPECT_NO_THROW(s.validate(2));
  s.mode = Mode::CIT;
  EXPECT_THROW(s.validate(2), ConfigError);  // CIT forces all tau = 0
  s = eit_spec_2d();
  s.mode = Mode::Euler;
  EXPECT_THROW(s.validate(2), ConfigError);  // Euler forces kappa = eta = zeta_v = 0
  s = eit_spec_2d();
  s.tau1 = 0.0;
  EXPECT_THROW(s.validate(2), ConfigError);
  s = eit_spec_2d();
  NonEqEOS eos = s.derive_eos(2);
  EXPECT_NO_THROW(s.validate(2, &eos));
  eos.alpha *= 1.5;
  EXPECT_THROW(s.validate(2, &eos), ConfigError);
}

TEST(Cattaneo, EquilibriumIsStationary) {
  const Grid g = Grid::make_2d(16, 16, 1.0, 1.0);
  ClosureSpec spec = eit_spec_2d();
  ScalarField T = uniform(g, 1.0);
  VectorField q(g, 1);
  Rng rng(2);
  VectorField u = sample_vec(random_trig_vec(rng, g, 2, 0.4), g, 0);
  auto r = cattaneo_christov_rates(q, T, u, spec);
  EXPECT_EQ(r.q_dot.max_abs(), 0.0);
}

TEST(Cattaneo, ReducesToMaxwellCattaneoAtRest) {
  const Grid g = Grid::make_1d(64, 1.0);
  ClosureSpec spec = eit_spec_1d();
  Rng rng(3);
  ScalarField T = sample_scalar(random_trig(rng, g, 2, 0.05, 1.0), g);
  VectorField q = sample_vec(random_trig_vec(rng, g, 2, 0.1), g, 1);
  VectorField u(g);
  auto r = cattaneo_christov_rates(q, T, u, spec);
  // at rest the objective and partial rates coincide; the law reads
  // tau_eff d_t q + q = -kappa dT with tau_eff = tau1 T / T_ref
  VectorField gT = grad_scalar(T);
  for (int i = 0; i < g.cells(); ++i) {
    const double tau_eff = spec.tau1 * T[i] / spec.T_ref;
    const double expect = (-spec.kappa * gT(0, i) - q(0, i)) / tau_eff;
    EXPECT_NEAR(r.q_dot(0, i), expect, 1e-13 * std::max(1.0, std::abs(expect)));
    EXPECT_EQ(r.q_dot(0, i), r.q_truesdell(0, i));
  }
}

TEST(Cattaneo, DegenerateRelaxationError) {
  const Grid g = Grid::make_1d(8, 1.0);
  ClosureSpec spec = eit_spec_1d();
  spec.tau1 = 0.0;
  ScalarField T = uniform(g, 1.0);
  VectorField q(g, 1), u(g);
  EXPECT_THROW(cattaneo_christov_rhs(q, T, u, spec), DegenerateRelaxationError);
}

TEST(Cattaneo, RelaxesToFourierUnderFrozenT) {
  const Grid g = Grid::make_1d(64, 1.0);
  ClosureSpec spec = eit_spec_1d();
  Rng rng(5);
  ScalarField T = sample_scalar(random_trig(rng, g, 2, 0.1, 1.0), g);
  VectorField u(g);
  VectorField q(g, 1);
  const double dt = spec.tau1 / 50.0;
  const int nsteps = static_cast<int>(30.0 * spec.tau1 / dt);
  for (int n = 0; n < nsteps; ++n) {
    // frozen-field RK4 on the q-subsystem
    VectorField k1 = cattaneo_christov_rates(q, T, u, spec).q_dot;
    VectorField q2v = q;
    q2v.axpy(0.5 * dt, k1);
    VectorField k2 = cattaneo_christov_rates(q2v, T, u, spec).q_dot;
    VectorField q3 = q;
    q3.axpy(0.5 * dt, k2);
    VectorField k3 = cattaneo_christov_rates(q3, T, u, spec).q_dot;
    VectorField q4 = q;
    q4.axpy(dt, k3);
    VectorField k4 = cattaneo_christov_rates(q4, T, u, spec).q_dot;
    q.axpy(dt / 6.0, k1);
    q.axpy(2.0 * dt / 6.0, k2);
    q.axpy(2.0 * dt / 6.0, k3);
    q.axpy(dt / 6.0, k4);
  }
  VectorField target = fourier(T, spec);
  double rel = 0.0;
  for (int i = 0; i < g.cells(); ++i)
    rel = std::max(rel, std::abs(q(0, i) - target(0, i)) / std::max(1e-12, target.max_abs()));
  EXPECT_LT(rel, 1e-6);
}

TEST(Maxwell, ExponentialDecayAtRest) {
  const Grid g = Grid::make_2d(16, 16, 1.0, 1.0);
  ClosureSpec spec = eit_spec_2d();
  VectorField u(g);
  Rng rng(6);
  SymTensorField sigma = sample_sym(random_trig_sym(rng, g, 1, 0.3, 0.1), g);
  auto [s0, pv] = dev_iso_split(sigma);
  auto r = maxwell_truesdell_rates(sigma, u, spec);
  // rate = -sigma0/tau2 - (p_v/tau0) delta
  auto [r0, rpv] = dev_iso_split(r.sigma_dot);
  for (int i = 0; i < g.cells(); ++i) {
    EXPECT_NEAR(rpv[i], -pv[i] / spec.tau0, 1e-12);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(r0(c, i), -s0(c, i) / spec.tau2, 1e-12);
  }
}

TEST(Maxwell, DecomposedEqualsUndecomposedInUCMRegime) {
  // zeta_v = 2 eta / d and tau0 = tau2 collapse the coupled system to the
  // upper convected Maxwell model for tensorial densities
  const Grid g = Grid::make_2d(32, 32, 1.0, 1.0);
  ClosureSpec spec = eit_spec_2d();
  spec.zeta_v = 2.0 * spec.eta / 2.0;
  spec.tau0 = spec.tau2;
  Rng rng(7);
  VectorField u = sample_vec(random_trig_vec(rng, g, 2, 0.5, 0.1), g, 0);
  SymTensorField sigma = sample_sym(random_trig_sym(rng, g, 2, 0.4, 0.05), g);
  auto rd = maxwell_truesdell_rates(sigma, u, spec);
  auto ru = maxwell_truesdell_rates_undecomposed(sigma, u, spec);
  const double scale = std::max(1.0, ru.sigma_dot.max_abs());
  EXPECT_LT(max_abs_diff(rd.sigma_dot, ru.sigma_dot), 1e-13 * scale);
  EXPECT_LT(max_abs_diff(rd.sigma_truesdell, ru.sigma_truesdell), 1e-13 * scale);

  // 1D variant: p_v is the whole tensor
  const Grid g1 = Grid::make_1d(64, 1.0);
  ClosureSpec s1 = eit_spec_1d();
  VectorField u1 = sample_vec(random_trig_vec(rng, g1, 2, 0.5, 0.1), g1, 0);
  SymTensorField sig1 = sample_sym(random_trig_sym(rng, g1, 2, 0.4, 0.05), g1);
  auto rd1 = maxwell_truesdell_rates(sig1, u1, s1);
  auto ru1 = maxwell_truesdell_rates_undecomposed(sig1, u1, s1);
  EXPECT_LT(max_abs_diff(rd1.sigma_dot, ru1.sigma_dot),
            1e-13 * std::max(1.0, ru1.sigma_dot.max_abs()));
}

TEST(Maxwell, SteadyUniformShearFixedPoint) {
  // frozen linear shear u = (a y, 0) on a wall box; integrate to the fixed
  // point and check sigma = 2 eta Def u - tau2 (L_u sigma + sigma div u)
  const Grid g = Grid::make_2d(16, 16, 1.0, 1.0, AxisKind::Wall, AxisKind::Wall);
  ClosureSpec spec = eit_spec_2d();
  spec.zeta_v = spec.eta;  // UCM regime so the fixed-point identity is exact
  spec.tau0 = spec.tau2;
  const double a = 0.7;
  VectorField u(g);
  for (int iy = 0; iy < g.n[1]; ++iy)
    for (int ix = 0; ix < g.n[0]; ++ix) u(0, g.idx(ix, iy)) = a * g.y(iy);
  SymTensorField sigma(g, 1);
  const double dt = spec.tau2 / 50.0;
  for (int n = 0; n < 3000; ++n) {
    auto k1 = maxwell_truesdell_rates(sigma, u, spec).sigma_dot;
    SymTensorField s2 = sigma;
    s2.axpy(0.5 * dt, k1);
    auto k2 = maxwell_truesdell_rates(s2, u, spec).sigma_dot;
    SymTensorField s3 = sigma;
    s3.axpy(0.5 * dt, k2);
    auto k3 = maxwell_truesdell_rates(s3, u, spec).sigma_dot;
    SymTensorField s4 = sigma;
    s4.axpy(dt, k3);
    auto k4 = maxwell_truesdell_rates(s4, u, spec).sigma_dot;
    sigma.axpy(dt / 6.0, k1);
    sigma.axpy(2 * dt / 6.0, k2);
    sigma.axpy(2 * dt / 6.0, k3);
    sigma.axpy(dt / 6.0, k4);
  }
  SymTensorField def = deformation_rate(u);
  SymTensorField lt = lie_transport_tensor_density(u, sigma);
  double res = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < g.cells(); ++i)
      res = std::max(res, std::abs(sigma(c, i) - 2.0 * spec.eta * def(c, i) + spec.tau2 * lt(c, i)));
  EXPECT_LT(res, 1e-8);
}

TEST(HigherOrder, BaseCaseEqualsCattaneo) {
  const Grid g = Grid::make_1d(32, 1.0);
  ClosureSpec spec = eit_spec_1d();
  spec.mode = Mode::EIT_Higher;
  spec.n_order = 1;
  Rng rng(8);
  ScalarField T = sample_scalar(random_trig(rng, g, 2, 0.1, 1.0), g);
  VectorField q = sample_vec(random_trig_vec(rng, g, 2, 0.2), g, 1);
  VectorField u = sample_vec(random_trig_vec(rng, g, 2, 0.3), g, 0);
  auto chain = higher_order_rates(q, {}, T, u, spec);
  ClosureSpec cc = eit_spec_1d();
  auto base = cattaneo_christov_rates(q, T, u, cc);
  for (int i = 0; i < g.cells(); ++i) EXPECT_EQ(chain.q1.q_dot(0, i), base.q_dot(0, i));
}

TEST(HigherOrder, UniformStateStationaryAndConfigErrors) {
  const Grid g = Grid::make_2d(16, 16, 1.0, 1.0);
  ClosureSpec spec;
  spec.mode = Mode::EIT_Higher;
  spec.kappa = 0.4;
  spec.tau1 = 0.2;
  spec.n_order = 2;
  spec.kappa_k = {0.3};
  spec.tau_k = {0.15};
  ScalarField T = uniform(g, 1.0);
  VectorField q(g, 1), u(g);
  std::vector<HigherFluxField> qk;
  qk.emplace_back(g, 2);
  auto r = higher_order_rates(q, qk, T, u, spec);
  EXPECT_EQ(r.q1.q_dot.max_abs(), 0.0);
  EXPECT_EQ(r.qk_dot[0].max_abs(), 0.0);

  ClosureSpec bad = spec;
  bad.n_order = 0;
  EXPECT_THROW(higher_order_rates(q, {}, T, u, bad), ConfigError);
}

TEST(HigherOrder, FrozenFieldStationaryResiduals) {
  const Grid g = Grid::make_1d(96, 1.0);
  ClosureSpec spec;
  spec.mode = Mode::EIT_Higher;
  spec.kappa = 0.4;
  spec.tau1 = 0.12;
  spec.n_order = 2;
  spec.kappa_k = {0.25};
  spec.tau_k = {0.1};
  Rng rng(9);
  ScalarField T = sample_scalar(random_trig(rng, g, 2, 0.08, 1.0), g);
  VectorField u(g);
  VectorField q1(g, 1);
  std::vector<HigherFluxField> qk;
  qk.emplace_back(g, 2);

  const double dt = spec.tau_k[0] / 50.0;
  const int nsteps = static_cast<int>(60.0 * spec.tau1 / dt);
  auto step = [&]() {
    auto k1 = higher_order_rates(q1, qk, T, u, spec);
    VectorField qa = q1;
    qa.axpy(0.5 * dt, k1.q1.q_dot);
    std::vector<HigherFluxField> qka = qk;
    qka[0].axpy(0.5 * dt, k1.qk_dot[0]);
    auto k2 = higher_order_rates(qa, qka, T, u, spec);
    VectorField qb = q1;
    qb.axpy(0.5 * dt, k2.q1.q_dot);
    std::vector<HigherFluxField> qkb = qk;
    qkb[0].axpy(0.5 * dt, k2.qk_dot[0]);
    auto k3 = higher_order_rates(qb, qkb, T, u, spec);
    VectorField qc = q1;
    qc.axpy(dt, k3.q1.q_dot);
    std::vector<HigherFluxField> qkc = qk;
    qkc[0].axpy(dt, k3.qk_dot[0]);
    auto k4 = higher_order_rates(qc, qkc, T, u, spec);
    q1.axpy(dt / 6, k1.q1.q_dot);
    q1.axpy(2 * dt / 6, k2.q1.q_dot);
    q1.axpy(2 * dt / 6, k3.q1.q_dot);
    q1.axpy(dt / 6, k4.q1.q_dot);
    qk[0].axpy(dt / 6, k1.qk_dot[0]);
    qk[0].axpy(2 * dt / 6, k2.qk_dot[0]);
    qk[0].axpy(2 * dt / 6, k3.qk_dot[0]);
    qk[0].axpy(dt / 6, k4.qk_dot[0]);
  };
  for (int n = 0; n < nsteps; ++n) step();

  // stationary chain (tau_eff = tau T/T_ref, kappa_eff likewise for k >= 2):
  //   q1 = -kappa grad T - tau_eff div q2,  q2 = -(T/T_ref) kappa2 sym grad q1
  VectorField gT = grad_scalar(T);
  VectorField d2 = div_higher_vec(qk[0]);
  HigherFluxField g1 = sym_grad_higher(q1);
  double res1 = 0.0, res2 = 0.0;
  const double scale = std::max(q1.max_abs(), 1e-12);
  for (int i = 0; i < g.cells(); ++i) {
    const double ts = T[i] / spec.T_ref;
    res1 =
        std::max(res1, std::abs(q1(0, i) + spec.kappa * gT(0, i) + ts * spec.tau1 * d2(0, i)));
    res2 = std::max(res2, std::abs(qk[0](0, i) + ts * spec.kappa_k[0] * g1(0, i)));
  }
  EXPECT_LT(res1 / scale, 1e-6);
  EXPECT_LT(res2 / scale, 1e-6);
}

TEST(EntropyFlux, SelectorExamples) {
  const Grid g = Grid::make_2d(16, 16, 1.0, 1.0);
  Rng rng(10);
  ScalarField T = sample_scalar(random_trig(rng, g, 1, 0.1, 1.0), g);
  VectorField q = sample_vec(random_trig_vec(rng, g, 1, 0.3), g, 1);
  NonEqEOS eos;

  // q = 0 -> j_s = 0
  VectorField q0(g, 1);
  EntropyFluxSpec cls;
  auto r0 = entropy_flux(q0, T, nullptr, {}, eos, cls);
  EXPECT_EQ(r0.j_s.max_abs(), 0.0);

  // classical: j_s = q/T
  auto rc = entropy_flux(q, T, nullptr, {}, eos, cls);
  for (int i = 0; i < g.cells(); ++i) EXPECT_EQ(rc.j_s(0, i), q(0, i) / T[i]);
  EXPECT_EQ(rc.j_prime.max_abs(), 0.0);

  // isotropic sigma = p_v delta kills the gamma'' term
  EntropyFluxSpec gen;
  gen.kind = EntropyFluxSpec::Kind::General;
  gen.gamma_p = 0.3;
  gen.gamma_s = 0.9;
  SymTensorField iso(g, 1);
  ScalarField pv = sample_scalar(random_trig(rng, g, 1, 0.2, 0.5), g);
  for (int i = 0; i < g.cells(); ++i) {
    iso(0, i) = pv[i];
    iso(2, i) = pv[i];
  }
  auto rg = entropy_flux(q, T, &iso, {}, eos, gen);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g.cells(); ++i)
      EXPECT_NEAR(rg.j_prime(c, i), gen.gamma_p * pv[i] * q(c, i), 1e-14);
}

TEST(EntropyProduction, TrivialAndCITClassical) {
  const Grid g = Grid::make_2d(24, 24, 1.0, 1.0);
  ClosureSpec cit;
  cit.mode = Mode::CIT;
  cit.kappa = 0.4;
  cit.eta = 0.25;
  cit.zeta_v = 0.3;
  NonEqEOS eos;

  // uniform state, zero fluxes -> 0
  ScalarField rho(g), s(g);
  rho.fill(1.0);
  s.fill(0.2);
  VectorField u(g);
  u.fill(0.7);
  auto ev = eval(eos, rho, s, nullptr, nullptr);
  ScalarField p0 = entropy_production(u, nullptr, nullptr, {}, ev, nullptr, nullptr, {}, eos, cit);
  EXPECT_EQ(p0.max_abs(), 0.0);

  // CIT: production = (1/T)(sigma:grad u - j.grad T), nonnegative for the
  // Fourier/Newton-Stokes closure
  Rng rng(11);
  s = sample_scalar(random_trig(rng, g, 2, 0.05, 0.2), g, 1);
  u = sample_vec(random_trig_vec(rng, g, 2, 0.2), g, 0);
  ev = eval(eos, rho, s, nullptr, nullptr);
  SymTensorField sc = newton_stokes(u, cit);
  VectorField qc = fourier(ev.T, cit);
  ScalarField prod = entropy_production(u, &sc, &qc, {}, ev, nullptr, nullptr, {}, eos, cit);
  double pmin = 0.0;
  for (int i = 0; i < g.cells(); ++i) pmin = std::min(pmin, prod[i]);
  EXPECT_GE(pmin, -1e-12);

  // matches the classical expression assembled by hand
  SymTensorField def = deformation_rate(u);
  ScalarField sd = contract(sc, def);
  VectorField gT = grad_scalar(ev.T);
  for (int i = 0; i < g.cells(); ++i) {
    double jgT = 0.0;
    for (int c = 0; c < 2; ++c) jgT += qc(c, i) / ev.T[i] * gT(c, i);
    EXPECT_NEAR(prod[i], (sd[i] - jgT) / ev.T[i], 1e-13 * std::max(1.0, std::abs(prod[i])));
  }
}

TEST(EntropyProduction, EITMatchesQuadraticForm) {
  // with the flux-force closures the production telescopes to
  // (1/T)(sigma0:sigma0/(2 eta) + p_v^2/zeta_v) + |q|^2/(kappa T^2) exactly
  const Grid g = Grid::make_2d(24, 24, 1.0, 1.0);
  ClosureSpec spec = eit_spec_2d();
  NonEqEOS eos = spec.derive_eos(2);
  Rng rng(12);
  ScalarField rho(g);
  rho.fill(1.0);
  ScalarField s = sample_scalar(random_trig(rng, g, 2, 0.05, 0.3), g, 1);
  VectorField u = sample_vec(random_trig_vec(rng, g, 2, 0.2), g, 0);
  VectorField q = sample_vec(random_trig_vec(rng, g, 2, 0.15), g, 1);
  SymTensorField sigma = sample_sym(random_trig_sym(rng, g, 2, 0.1, 0.02), g);
  auto ev = eval(eos, rho, s, &sigma, &q);

  auto qr = cattaneo_christov_rates(q, ev.T, u, spec);
  auto sr = maxwell_truesdell_rates(sigma, u, spec);
  ScalarField prod = entropy_production(u, &sigma, &q, {}, ev, &sr.sigma_truesdell,
                                        &qr.q_truesdell, {}, eos, spec);
  auto [s0, pv] = dev_iso_split(sigma);
  ScalarField s0s0 = contract(s0, s0);
  double worst = 0.0;
  for (int i = 0; i < g.cells(); ++i) {
    double q2 = 0.0;
    for (int c = 0; c < 2; ++c) q2 += q(c, i) * q(c, i);
    const double quad = (s0s0[i] / (2.0 * spec.eta) + pv[i] * pv[i] / spec.zeta_v) / ev.T[i] +
                        q2 / (spec.kappa * ev.T[i] * ev.T[i]);
    worst = std::max(worst, std::abs(prod[i] - quad));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Constitutive, RhsCommutesWithGridShift) {
  // objectivity surrogate: periodic shift of all inputs shifts the rates
  const Grid g = Grid::make_2d(24, 24, 1.0, 1.0);
  ClosureSpec spec = eit_spec_2d();
  Rng rng(13);
  ScalarField T = sample_scalar(random_trig(rng, g, 2, 0.07, 1.0), g);
  VectorField u = sample_vec(random_trig_vec(rng, g, 2, 0.3), g, 0);
  VectorField q = sample_vec(random_trig_vec(rng, g, 2, 0.2), g, 1);
  const int sx = 7, sy = 3;
  auto shift_into = [&](const FieldBase& f, FieldBase& out) {
    for (int c = 0; c < f.ncomp(); ++c)
      for (int iy = 0; iy < g.n[1]; ++iy)
        for (int ix = 0; ix < g.n[0]; ++ix)
          out(c, g.idx((ix + sx) % g.n[0], (iy + sy) % g.n[1])) = f(c, g.idx(ix, iy));
  };
  ScalarField Ts(g);
  VectorField us(g), qs(g, 1);
  shift_into(T, Ts);
  shift_into(u, us);
  shift_into(q, qs);
  VectorField r = cattaneo_christov_rates(q, T, u, spec).q_dot;
  VectorField rs = cattaneo_christov_rates(qs, Ts, us, spec).q_dot;
  VectorField r_shift(g, 1);
  shift_into(r, r_shift);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g.cells(); ++i) EXPECT_EQ(rs(c, i), r_shift(c, i));
}
