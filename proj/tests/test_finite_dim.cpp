#include <gtest/gtest.h>

#include <cmath>

#include "eit/finite_dim.hpp"

using namespace eit;

namespace {

FiniteSystem two_box(double gamma = 0.3, double kap = 0.4) {
  FiniteSystem sys;
  sys.subs.resize(2);
  sys.subs[0] = {1.0, 2.0, gamma, 1.0};
  sys.subs[1] = {1.5, 1.0, gamma, 1.3};
  sys.kappa.assign(4, 0.0);
  sys.set_kappa(0, 1, kap);
  return sys;
}

}  // namespace

TEST(FiniteDim, ReversibleLimitConservesEverything) {
  FiniteSystem sys = two_box(0.0, 0.0);
  FiniteState st = FiniteState::zeros(2);
  st.q = {1.0, -0.5};
  st.qdot = {0.0, 0.3};
  st.S = {0.2, 0.6};
  auto traj = integrate(sys, st, 20.0);
  auto rep = audit(sys, traj);
  EXPECT_LT(rep.max_energy_drift_rel, 1e-9);
  for (const auto& s : traj.states) {
    EXPECT_EQ(s.Sigma[0], 0.0);  // pure mechanics: no production at all
    EXPECT_EQ(s.Sigma[1], 0.0);
    EXPECT_NEAR(s.S[0], 0.2, 1e-12);
    EXPECT_NEAR(s.S[1], 0.6, 1e-12);
  }
}

TEST(FiniteDim, SingleBoxFrictionProducesEntropy) {
  FiniteSystem sys;
  sys.subs.push_back({1.0, 1.5, 0.4, 1.0});
  sys.kappa.assign(1, 0.0);
  FiniteState st = FiniteState::zeros(1);
  st.q = {1.2};
  auto traj = integrate(sys, st, 25.0);
  auto rep = audit(sys, traj);
  EXPECT_LT(rep.max_energy_drift_rel, 1e-9);
  EXPECT_LE(rep.max_sigma_decrease, 1e-12);
  // energy partition: thermal gain equals mechanical loss
  const auto& a = traj.states.front();
  const auto& b = traj.states.back();
  const double mech0 = 0.5 * 1.0 * a.qdot[0] * a.qdot[0] + 0.5 * 1.5 * a.q[0] * a.q[0];
  const double mech1 = 0.5 * 1.0 * b.qdot[0] * b.qdot[0] + 0.5 * 1.5 * b.q[0] * b.q[0];
  const double th0 = sys.internal_energy(0, a.S[0]);
  const double th1 = sys.internal_energy(0, b.S[0]);
  EXPECT_NEAR(th1 - th0, mech0 - mech1, 1e-8 * std::max(1.0, mech0));
  EXPECT_GT(th1 - th0, 0.1 * mech0);  // friction actually dissipated
  // Sdot = gamma |qdot|^2 / T >= 0 at all samples
  for (size_t k = 1; k < traj.states.size(); ++k)
    EXPECT_GE(traj.states[k].S[0], traj.states[k - 1].S[0] - 1e-13);
}

TEST(FiniteDim, TwoBoxHeatFlowsHotToCold) {
  FiniteSystem sys = two_box(0.0, 0.5);
  FiniteState st = FiniteState::zeros(2);
  st.S = {0.8, 0.0};  // T = e^{0.8} vs e^0: box 0 hot
  auto traj = integrate(sys, st, 30.0);
  auto rep = audit(sys, traj);
  EXPECT_LT(rep.max_energy_drift_rel, 1e-9);
  EXPECT_LE(rep.max_sigma_decrease, 1e-12);
  EXPECT_LT(rep.max_exchange_residual, 1e-9);

  double dT_prev = 1e300;
  double Stot_prev = -1e300;
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const auto& s = traj.states[k];
    const double T0 = sys.temperature(0, s.S[0]);
    const double T1 = sys.temperature(1, s.S[1]);
    const double dT = T0 - T1;
    EXPECT_GT(dT, -1e-10);          // no overshoot past equilibrium
    EXPECT_LE(dT, dT_prev + 1e-12)  // monotone approach to equal T
        << "at sample " << k;
    dT_prev = dT;
    const double Stot = s.S[0] + s.S[1];
    EXPECT_GE(Stot, Stot_prev - 1e-12);
    Stot_prev = Stot;
  }
  // hot box loses entropy at early times while its Sigma still grows
  const auto& early = traj.states[std::min<size_t>(3, traj.states.size() - 1)];
  EXPECT_LT(early.S[0], 0.8);
  EXPECT_GE(early.Sigma[0], -1e-14);
  // approach to equilibrium: temperature gap shrank substantially
  const auto& last = traj.back();
  EXPECT_LT(sys.temperature(0, last.S[0]) - sys.temperature(1, last.S[1]), 0.2 * (std::exp(0.8) - 1.0));
}

TEST(FiniteDim, CombinedFrictionAndExchangeSecondLaw) {
  FiniteSystem sys = two_box(0.25, 0.35);
  FiniteState st = FiniteState::zeros(2);
  st.q = {0.8, -0.4};
  st.qdot = {-0.2, 0.5};
  st.S = {0.5, -0.1};
  auto traj = integrate(sys, st, 40.0);
  auto rep = audit(sys, traj);
  EXPECT_LT(rep.max_energy_drift_rel, 1e-9);
  EXPECT_LE(rep.max_sigma_decrease, 1e-12);
  EXPECT_LT(rep.max_exchange_residual, 1e-8);
  // thermal displacement rate is the temperature: Gamma is strictly increasing
  for (size_t k = 1; k < traj.states.size(); ++k)
    for (int a = 0; a < 2; ++a) EXPECT_GT(traj.states[k].Gamma[a], traj.states[k - 1].Gamma[a]);
}

TEST(FiniteDim, ValidationAndAdmissibility) {
  FiniteSystem sys = two_box();
  sys.kappa[1] = 0.9;  // breaks symmetry
  EXPECT_THROW(sys.validate(), ConfigError);

  FiniteSystem ok = two_box();
  FiniteState st = FiniteState::zeros(2);
  st.S = {1e6, 0.0};  // temperature overflow
  EXPECT_THROW(integrate(ok, st, 1.0), AdmissibilityError);
}
