#include <gtest/gtest.h>

#include <cmath>

#include "relaxns/diagnostics.hpp"
#include "relaxns/errors.hpp"
#include "relaxns/initial_data.hpp"
#include "relaxns/relaxed_solver.hpp"

using namespace relaxns;

namespace {

const FluidParams kParams(1.0, 2.0, 1.0, 0.1, 0.0);

RunArtifact small_run(std::size_t n, double delta, const FluidParams& p, double t_end) {
  const Grid1D g(n);
  SchemeConfig c;
  c.record_every = 0;
  return run(make_initial_data({IcFamily::well_prepared_sine, delta, ""}, g, p), t_end, p, g, c);
}

EnergyReport synthetic_report(double e0, double sup, double d, double vmin = 0.9,
                              double vmax = 1.1) {
  EnergyReport r;
  r.E0 = e0;
  r.E_sup = {sup};
  r.D_integral = d;
  r.v_min = vmin;
  r.v_max = vmax;
  return r;
}

} // namespace

TEST(DissipationResidual, EquilibriumIsZero) {
  const Grid1D g(33);
  const RunArtifact art = run(State::equilibrium(g), 0.2, kParams, g, SchemeConfig{});
  for (const ResidualPoint& r : dissipation_residual(art, kParams)) EXPECT_EQ(r.residual, 0.0);
}

TEST(DissipationResidual, NeedsThreeRows) {
  std::vector<EnergySnapshot> rows(2);
  rows[1].t = 1.0;
  EXPECT_THROW(dissipation_residual(rows, 1.0, 0.0), MisuseError);
}

TEST(DissipationResidual, ExactForQuadraticEnergyOnUnevenSpacing) {
  // e = t^2 with diss_rate = -2t balances exactly
  std::vector<EnergySnapshot> rows;
  for (double t : {0.0, 0.1, 0.25, 0.3, 0.31, 0.5}) {
    EnergySnapshot e;
    e.t = t;
    e.e_phys = t * t;
    e.diss_rate = -2.0 * t;
    rows.push_back(e);
  }
  const std::vector<ResidualPoint> r = dissipation_residual(rows, 1.0, 0.0);
  ASSERT_EQ(r.size(), 4u);
  for (const ResidualPoint& p : r) EXPECT_NEAR(p.residual, 0.0, 1e-13) << "t = " << p.t;
}

TEST(DissipationResidual, ConvergesUnderRefinement) {
  auto max_r = [](std::size_t n) {
    const RunArtifact art = small_run(n, 0.01, kParams, 0.3);
    double m = 0.0;
    for (const ResidualPoint& r : dissipation_residual(art, kParams)) {
      m = std::max(m, std::abs(r.residual));
    }
    return m;
  };
  const double ratio = max_r(101) / max_r(201);
  EXPECT_GT(ratio, 3.0);
  EXPECT_LT(ratio, 5.0);
}

TEST(DissipationResidual, BoundedByBoundaryTermForPositiveEps) {
  const FluidParams p = kParams.with_epsilon(0.2);
  const RunArtifact art = small_run(101, 0.01, p, 0.5);
  double tol = 0.0;
  for (const ResidualPoint& r : dissipation_residual(small_run(101, 0.01, kParams, 0.5), kParams)) {
    tol = std::max(tol, std::abs(r.residual));
  }
  for (const ResidualPoint& r : dissipation_residual(art, p)) {
    EXPECT_LE(r.residual, r.eps_bound + 10.0 * tol) << "t = " << r.t;
  }
}

TEST(EnergyReport, RunningSupAndMonotoneFlag) {
  const RunArtifact art = small_run(101, 0.01, kParams, 0.5);
  const EnergyReport rep = make_energy_report(art.energy);
  ASSERT_EQ(rep.E_sup.size(), art.energy.size());
  for (std::size_t k = 1; k < rep.E_sup.size(); ++k) {
    EXPECT_GE(rep.E_sup[k], rep.E_sup[k - 1]);
    EXPECT_GE(rep.E_sup[k], art.energy[k].E_total());
  }
  EXPECT_TRUE(rep.monotone);
  EXPECT_EQ(rep.E0, art.energy.front().E_total());
  EXPECT_TRUE(in_small_data_regime(rep));

  std::vector<EnergySnapshot> rising = art.energy;
  rising[3].e_phys = rising[2].e_phys * 2.0;
  EXPECT_FALSE(make_energy_report(rising).monotone);
}

TEST(AprioriCheck, DegenerateAndGuardedCases) {
  EXPECT_THROW(apriori_check({synthetic_report(1, 1, 1), synthetic_report(1, 1, 1)}), MisuseError);

  const EnergyReport zero = synthetic_report(0.0, 0.0, 0.0, 1.0, 1.0);
  EXPECT_EQ(apriori_check({zero, zero, zero}).verdict, Verdict::vacuous);

  const EnergyReport wild = synthetic_report(1.0, 1.0, 1.0, 0.5, 1.5);
  const AprioriResult inv = apriori_check({synthetic_report(1, 1, 1), wild, synthetic_report(1, 1, 1)});
  EXPECT_EQ(inv.verdict, Verdict::invalid);
  EXPECT_FALSE(inv.reason.empty());
}

TEST(AprioriCheck, RatioSpread) {
  const AprioriResult ok = apriori_check(
      {synthetic_report(1.0, 1.0, 1.0), synthetic_report(2.0, 2.5, 2.0), synthetic_report(4.0, 4.0, 4.4)});
  EXPECT_EQ(ok.verdict, Verdict::pass);
  ASSERT_EQ(ok.ratios.size(), 3u);
  EXPECT_NEAR(ok.ratios[0], 2.0, 1e-15);
  // ratios 2, 2.25, 2.1
  EXPECT_NEAR(ok.spread, 0.125, 1e-12);

  const AprioriResult bad = apriori_check(
      {synthetic_report(1.0, 1.0, 1.0), synthetic_report(1.0, 2.0, 2.0), synthetic_report(1, 1, 1)});
  EXPECT_EQ(bad.verdict, Verdict::fail);
}

TEST(RelaxationResidualSeries, WellPreparedStartsAtZeroAndIntegrates) {
  const RunArtifact art = small_run(101, 0.01, kParams, 0.5);
  const RelaxationResidualSeries r = relaxation_residual_series(art);
  ASSERT_EQ(r.t.size(), art.energy.size());
  EXPECT_LT(r.residual.front(), 1e-15);
  EXPECT_GT(r.integrated, 0.0);

  const Grid1D g(33);
  const RunArtifact eq = run(State::equilibrium(g), 0.2, kParams, g, SchemeConfig{});
  const RelaxationResidualSeries z = relaxation_residual_series(eq);
  for (double x : z.residual) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(z.integrated, 0.0);
}

TEST(RelaxationResidualSeries, DecreasesWithTau) {
  double previous = INFINITY;
  for (double tau : {1e-1, 1e-2, 1e-3}) {
    const double r = relaxation_residual_series(small_run(51, 0.01, kParams.with_tau(tau), 0.3)).integrated;
    EXPECT_LT(r, previous) << "tau = " << tau;
    previous = r;
  }
}

TEST(LoglogSlope, ExactPowerLaws) {
  EXPECT_NEAR(loglog_slope({1.0, 2.0, 4.0}, {3.0, 12.0, 48.0}), 2.0, 1e-14);
  EXPECT_NEAR(loglog_slope({1e-1, 1e-2, 1e-3}, {5.0, 5.0, 5.0}), 0.0, 1e-14);
  EXPECT_THROW(loglog_slope({1.0}, {1.0}), MisuseError);
}

TEST(StrictlyDecreasing, Basics) {
  EXPECT_TRUE(strictly_decreasing({3.0, 2.0, 1.0}));
  EXPECT_FALSE(strictly_decreasing({3.0, 3.0, 1.0}));
  EXPECT_FALSE(strictly_decreasing({1.0, 2.0}));
  EXPECT_TRUE(strictly_decreasing({}));
}

TEST(Verdict, Names) {
  EXPECT_STREQ(to_string(Verdict::pass), "PASS");
  EXPECT_STREQ(to_string(Verdict::fail), "FAIL");
  EXPECT_STREQ(to_string(Verdict::invalid), "INVALID");
  EXPECT_STREQ(to_string(Verdict::vacuous), "VACUOUS");
  EXPECT_STREQ(to_string(Verdict::none), "NONE");
}
