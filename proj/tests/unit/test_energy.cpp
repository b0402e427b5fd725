#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relaxns/energy.hpp"
#include "relaxns/initial_data.hpp"
#include "relaxns/relaxed_solver.hpp"

using namespace relaxns;
using std::numbers::pi;

namespace {

const FluidParams kUnit(1.0, 2.0, 1.0, 1.0, 0.0);

std::vector<double> sine(const Grid1D& g) {
  std::vector<double> f(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) f[i] = std::sin(pi * g.x(i));
  return f;
}

State smooth_state(const Grid1D& g) {
  State s = State::equilibrium(g);
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double x = g.x(i);
    s.v[i] = 1.0 + 0.05 * std::cos(pi * x) + 0.02 * std::sin(3.0 * x);
    s.u[i] = 0.03 * std::sin(pi * x) * (1.0 + x);
    s.S[i] = 0.04 * std::cos(2.0 * x) - 0.01 * x;
  }
  s.u.front() = s.u.back() = 0.0;
  return s;
}

} // namespace

TEST(DiscreteNorm, ConstantAndSine) {
  const Grid1D g(101);
  EXPECT_NEAR(discrete_norm(std::vector<double>(g.n(), 1.0), g, 0), 1.0, 1e-14);
  auto err = [](std::size_t n, int order) {
    const Grid1D g(n);
    const double exact = order == 0 ? std::sqrt(0.5) : std::sqrt(0.5 + pi * pi / 2.0);
    return std::abs(discrete_norm(sine(g), g, order) - exact);
  };
  // the trapezoid rule integrates sin^2 and cos^2 exactly on a uniform grid,
  // so only the derivative stencil contributes an error
  EXPECT_LT(err(101, 0), 1e-14);
  EXPECT_LT(err(101, 1), 1e-3);
  EXPECT_GT(err(101, 1) / err(201, 1), 3.5);
}

TEST(DiscreteNorm, OrdersAreNested) {
  const Grid1D g(51);
  const State s = smooth_state(g);
  for (const std::vector<double>* f : {&s.v, &s.u, &s.S}) {
    const double n0 = discrete_norm(*f, g, 0);
    const double n1 = discrete_norm(*f, g, 1);
    const double n2 = discrete_norm(*f, g, 2);
    EXPECT_LE(n0, n1);
    EXPECT_LE(n1, n2);
    EXPECT_NEAR(n2 * n2, discrete_norm_squared(*f, g, 2), 1e-14 * n2 * n2);
  }
}

TEST(TimeDerivatives, EquilibriumIsZero) {
  const Grid1D g(17);
  const TimeDerivatives d = time_derivative_fields(State::equilibrium(g), kUnit.with_epsilon(0.2), g);
  for (const auto* f : {&d.v_t, &d.u_t, &d.S_t, &d.v_tt, &d.u_tt, &d.S_tt}) {
    for (double x : *f) EXPECT_EQ(x, 0.0);
  }
}

TEST(TimeDerivatives, ConstantStress) {
  const Grid1D g(17);
  State s = State::equilibrium(g);
  s.S.assign(g.n(), 1.0);
  const TimeDerivatives d = time_derivative_fields(s, kUnit, g);
  for (std::size_t i = 0; i < g.n(); ++i) {
    EXPECT_NEAR(d.S_t[i], -1.0, 1e-14);
    EXPECT_NEAR(d.S_tt[i], 1.0, 1e-14);
    EXPECT_NEAR(d.u_tt[i], 0.0, 1e-14);
  }
}

TEST(TimeDerivatives, MatchTrajectoryDifferences) {
  const Grid1D g(41);
  const FluidParams p = kUnit.with_tau(0.1).with_epsilon(0.1);
  const State s0 = smooth_state(g);
  const TimeDerivatives d = time_derivative_fields(s0, p, g);
  auto err = [&](double dt) {
    const State s1 = step(s0, dt, p, g, SchemeConfig{});
    const State s2 = step(s1, dt, p, g, SchemeConfig{});
    double m = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      auto fd = [&](double a, double b, double c) { return (-3.0 * a + 4.0 * b - c) / (2.0 * dt); };
      m = std::max({m, std::abs(fd(s0.v[i], s1.v[i], s2.v[i]) - d.v_t[i]),
                    std::abs(fd(s0.u[i], s1.u[i], s2.u[i]) - d.u_t[i]),
                    std::abs(fd(s0.S[i], s1.S[i], s2.S[i]) - d.S_t[i])});
    }
    return m;
  };
  const double e1 = err(1e-3), e2 = err(5e-4);
  EXPECT_LT(e1, 1e-2);
  EXPECT_GT(e1 / e2, 3.0);
  EXPECT_LT(e1 / e2, 5.0);
}

TEST(EnergySnapshot, EquilibriumIsZero) {
  const Grid1D g(33);
  const EnergySnapshot e = energy_snapshot(State::equilibrium(g), kUnit.with_tau(0.1), g);
  EXPECT_EQ(e.e_phys, 0.0);
  EXPECT_EQ(e.diss_rate, 0.0);
  EXPECT_EQ(e.E_H2, 0.0);
  EXPECT_EQ(e.E_dtH1, 0.0);
  EXPECT_EQ(e.E_dt2L2, 0.0);
  EXPECT_EQ(e.D_value, 0.0);
  EXPECT_EQ(e.relax_residual, 0.0);
}

TEST(EnergySnapshot, ConstantStress) {
  const Grid1D g(33);
  State s = State::equilibrium(g);
  s.S.assign(g.n(), 1.0);
  const EnergySnapshot e = energy_snapshot(s, kUnit, g);
  EXPECT_NEAR(e.e_phys, 0.5, 1e-14);
  EXPECT_NEAR(e.diss_rate, 1.0, 1e-14);
  EXPECT_NEAR(e.relax_residual, 1.0, 1e-14);
  EXPECT_NEAR(e.stress_L2sq, 1.0, 1e-14);
}

TEST(EnergySnapshot, PhysicalEnergyIsQuadraticInAmplitude) {
  const Grid1D g(201);
  const FluidParams p = kUnit.with_tau(0.1);
  auto e = [&](double delta) {
    return energy_snapshot(make_initial_data({IcFamily::well_prepared_sine, delta, ""}, g, p), p, g)
        .e_phys;
  };
  EXPECT_NEAR(e(0.005) / e(0.01), 0.25, 0.25 * 0.05);
  EXPECT_GT(e(0.01), 0.0);
}

TEST(EnergySnapshot, WellPreparedDataHaveNoResidual) {
  const Grid1D g(101);
  const FluidParams p = kUnit.with_tau(0.1);
  const State s = make_initial_data({IcFamily::well_prepared_sine, 0.01, ""}, g, p);
  EXPECT_LT(relaxation_residual(s, p, g), 1e-15);
  EXPECT_NEAR(physical_energy(s, p, g), energy_snapshot(s, p, g).e_phys, 0.0);
}
