#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relaxns/diagnostics.hpp"
#include "relaxns/errors.hpp"
#include "relaxns/initial_data.hpp"
#include "relaxns/manufactured.hpp"
#include "relaxns/parabolic_solver.hpp"
#include "relaxns/stencil.hpp"
#include "support.hpp"

using namespace relaxns;
using std::numbers::pi;

namespace {

const FluidParams kParams(1.0, 2.0, 1.0, 0.0, 0.0);

ParabolicState sine_velocity(const Grid1D& g, double v0 = 1.0) {
  ParabolicState s = ParabolicState::equilibrium(g);
  s.v.assign(g.n(), v0);
  for (std::size_t i = 1; i + 1 < g.n(); ++i) s.u[i] = std::sin(pi * g.x(i));
  return s;
}

} // namespace

TEST(RhsParabolic, EquilibriumIsSteady) {
  const Grid1D g(33);
  const ParabolicRates r = rhs_parabolic(ParabolicState::equilibrium(g), kParams, g);
  for (std::size_t i = 0; i < g.n(); ++i) {
    EXPECT_EQ(r.v[i], 0.0);
    EXPECT_EQ(r.u[i], 0.0);
  }
}

TEST(RhsParabolic, ConstantPressureGivesNoAcceleration) {
  const Grid1D g(33);
  ParabolicState s = ParabolicState::equilibrium(g);
  s.v.assign(g.n(), 2.0);
  for (double ut : rhs_parabolic(s, kParams, g).u) EXPECT_EQ(ut, 0.0);
}

TEST(RhsParabolic, ViscousTermIsSecondOrder) {
  auto err = [](std::size_t n) {
    const Grid1D g(n);
    const ParabolicRates r = rhs_parabolic(sine_velocity(g), FluidParams(3.7, 1.4, 1.0, 0.0), g);
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      m = std::max(m, std::abs(r.u[i] + pi * pi * std::sin(pi * g.x(i))));
    }
    return m;
  };
  EXPECT_NEAR(err(65) / err(129), 4.0, 0.1);
}

TEST(EffectiveStress, ZeroVelocityAndSineOracle) {
  const Grid1D g(33);
  for (double s : effective_stress(ParabolicState::equilibrium(g), kParams, g)) EXPECT_EQ(s, 0.0);

  auto err = [](std::size_t n) {
    const Grid1D g(n);
    const std::vector<double> s = effective_stress(sine_velocity(g), kParams, g);
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      m = std::max(m, std::abs(s[i] - pi * std::cos(pi * g.x(i))));
    }
    return m;
  };
  EXPECT_NEAR(err(65) / err(129), 4.0, 0.1);
}

TEST(EffectiveStress, LinearProfileWithDirichletEndsIsTrivial) {
  // the only linear profile vanishing at both ends is u = 0
  const Grid1D g(17);
  ParabolicState s = ParabolicState::equilibrium(g);
  for (double x : effective_stress(s, kParams, g)) EXPECT_EQ(x, 0.0);
}

TEST(StableDtParabolic, DiffusiveScaling) {
  const Grid1D g(201), fine(401);
  const SchemeConfig c;
  const double dt = stable_dt_parabolic(ParabolicState::equilibrium(g), kParams, g, c);
  const double dt_fine = stable_dt_parabolic(ParabolicState::equilibrium(fine), kParams, fine, c);
  EXPECT_NEAR(dt, 0.4 * g.dx() * g.dx(), 1e-18);
  EXPECT_NEAR(dt_fine / dt, 0.25, 1e-12);
}

TEST(StepParabolic, EquilibriumIsFixedPoint) {
  const Grid1D g(33);
  const ParabolicState s0 = ParabolicState::equilibrium(g);
  const ParabolicState s1 = step_parabolic(s0, 1e-4, kParams, g, SchemeConfig{});
  EXPECT_EQ(s1.v, s0.v);
  EXPECT_EQ(s1.u, s0.u);
  EXPECT_EQ(s1.t, 1e-4);
}

TEST(StepParabolic, PreservesMirrorSymmetry) {
  const Grid1D g(65);
  const State sym = testing_support::mirror_symmetric_state(g, kParams, 0.05);
  ParabolicState s = ParabolicState::from(sym);
  ParabolicStepper stepper(kParams, g, SchemeConfig{});
  for (int k = 0; k < 500; ++k) stepper.advance(s, stepper.stable_dt(s));
  State back = State::equilibrium(g);
  back.v = s.v;
  back.u = s.u;
  EXPECT_LE(testing_support::symmetry_defect(back), 1e-12);
}

TEST(RunParabolic, MassConservedAndEnergyDecreasing) {
  const Grid1D g(101);
  const ParabolicState s0 =
      ParabolicState::from(make_initial_data({IcFamily::well_prepared_sine, 0.05, ""}, g, kParams));
  SchemeConfig c;
  c.record_every = 50;
  c.energy_every = 10;
  const RunArtifact art = run_parabolic(s0, 0.5, kParams, g, c);
  ASSERT_TRUE(art.completed());
  const double m0 = stencil::trapezoid(s0.v, g.dx());
  for (const State& s : art.snapshots) EXPECT_NEAR(stencil::trapezoid(s.v, g.dx()), m0, 1e-12);
  EXPECT_TRUE(make_energy_report(art.energy).monotone);
  for (const EnergySnapshot& e : art.energy) {
    EXPECT_EQ(e.relax_residual, 0.0);
    EXPECT_EQ(e.E_dt2L2, 0.0);
  }
}

TEST(ParabolicStepper, MassHasNoPerStepBias) {
  // 20000 steps: a stage combination whose weights do not sum to exactly one
  // would lose about 1e-12 here
  const Grid1D g(33);
  ParabolicStepper stepper(kParams, g, SchemeConfig{});
  ParabolicState s =
      ParabolicState::from(make_initial_data({IcFamily::well_prepared_sine, 0.05, ""}, g, kParams));
  const double m0 = stencil::trapezoid(s.v, g.dx());
  for (int k = 0; k < 20000; ++k) stepper.advance(s, stepper.stable_dt(s));
  EXPECT_NEAR(stencil::trapezoid(s.v, g.dx()), m0, 1e-13);
}

TEST(RunParabolic, SnapshotsCarryEffectiveStress) {
  const Grid1D g(33);
  const ParabolicState s0 =
      ParabolicState::from(make_initial_data({IcFamily::well_prepared_sine, 0.05, ""}, g, kParams));
  const RunArtifact art = run_parabolic(s0, 0.01, kParams, g, SchemeConfig{});
  const State& last = art.final_state();
  ParabolicState ps;
  ps.v = last.v;
  ps.u = last.u;
  EXPECT_EQ(last.S, effective_stress(ps, kParams, g));
}

TEST(RunParabolic, DissipationIdentityConverges) {
  auto max_residual = [](std::size_t n) {
    const Grid1D g(n);
    const ParabolicState s0 = ParabolicState::from(
        make_initial_data({IcFamily::well_prepared_sine, 0.01, ""}, g, kParams));
    SchemeConfig c;
    c.record_every = 0;
    c.energy_every = 1;
    const RunArtifact art = run_parabolic(s0, 0.05, kParams, g, c);
    double m = 0.0;
    for (const ResidualPoint& r : dissipation_residual(art.energy, kParams.mu(), 0.0)) {
      m = std::max(m, std::abs(r.residual));
    }
    return m;
  };
  const double ratio = max_residual(51) / max_residual(101);
  EXPECT_GT(ratio, 3.0);
  EXPECT_LT(ratio, 5.0);
}

TEST(RunParabolic, ManufacturedSolutionConvergesAtSecondOrder) {
  auto error = [](std::size_t n) {
    const Grid1D g(n);
    const FluidParams p(1.0, 2.0, 1.0, 0.1);
    const ManufacturedSolution ms(p);
    SchemeConfig c;
    c.record_every = 0;
    c.energy_every = 0;
    c.forcing = ms.parabolic_forcing(g);
    const RunArtifact art = run_parabolic(ms.exact_parabolic(g, 0.0), 0.1, p, g, c);
    const State exact = ms.exact(g, 0.1);
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = art.final_state().v[i] - exact.v[i];
      const double du = art.final_state().u[i] - exact.u[i];
      e[i] = dv * dv + du * du;
    }
    return std::sqrt(stencil::trapezoid(e, g.dx()));
  };
  const double order = std::log2(error(33) / error(65));
  EXPECT_GT(order, 1.8);
  EXPECT_LT(order, 2.2);
}

TEST(RunParabolic, PositivityFailureAborts) {
  const Grid1D g(17);
  ParabolicState s = ParabolicState::equilibrium(g);
  s.v[3] = -0.1;
  EXPECT_THROW(rhs_parabolic(s, kParams, g), NumericalAbort);
}
