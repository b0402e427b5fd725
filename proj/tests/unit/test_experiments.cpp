#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "relaxns/errors.hpp"
#include "relaxns/experiments.hpp"
#include "relaxns/manufactured.hpp"

using namespace relaxns;

namespace {

SummaryRow row(double param, std::initializer_list<std::pair<std::string, double>> metrics,
               bool aborted = false) {
  SummaryRow r;
  r.param_value = param;
  for (const auto& [k, v] : metrics) r.set(k, v);
  r.aborted = aborted;
  if (aborted) r.abort_reason = "v below floor";
  return r;
}

Summary table(const std::string& experiment, std::vector<SummaryRow> rows) {
  Summary s;
  s.experiment = experiment;
  s.rows = std::move(rows);
  return judge(std::move(s));
}

RunConfig small_base() {
  RunConfig c;
  c.n = 33;
  c.t_end = 0.2;
  c.params = FluidParams(1.0, 2.0, 1.0, 0.1);
  c.ic = {IcFamily::well_prepared_sine, 0.01, ""};
  return c;
}

} // namespace

TEST(SummaryRow, MetricLookup) {
  SummaryRow r;
  r.set("a", 1.0);
  r.set("a", 2.0);
  EXPECT_EQ(r.metric("a"), 2.0);
  EXPECT_EQ(r.metrics.size(), 1u);
  EXPECT_TRUE(std::isnan(r.metric("b")));
}

TEST(FitOrder, SecondOrderTable) {
  EXPECT_NEAR(fit_order({0.1, 0.05, 0.025}, {1e-2, 2.5e-3, 6.25e-4}), 2.0, 1e-12);
}

TEST(Judge, TauSweepSingleEntryIsNone) {
  const Summary s =
      table("tau-sweep", {row(0.01, {{"dist_L2_sup", 1e-3}, {"relax_residual_int", 1e-3}})});
  EXPECT_EQ(s.verdict, Verdict::none);
  EXPECT_EQ(s.reason, "single entry");
  EXPECT_TRUE(std::isnan(s.slope));
}

TEST(Judge, TauSweepAbortIsInvalid) {
  const Summary s = table("tau-sweep", {row(0.1, {{"dist_L2_sup", 1e-2}, {"relax_residual_int", 1e-2}}),
                                        row(0.01, {{"dist_L2_sup", NAN}}, true)});
  EXPECT_EQ(s.verdict, Verdict::invalid);
}

TEST(Judge, TauSweepMonotoneAndLayer) {
  const Summary ok = table(
      "tau-sweep", {row(0.1, {{"dist_L2_sup", 1e-2}, {"relax_residual_int", 1e-2}, {"layer_time", 0.5},
                              {"layer_deadline", 2.0}}),
                    row(0.01, {{"dist_L2_sup", 1e-3}, {"relax_residual_int", 1e-3}, {"layer_time", 0.05},
                               {"layer_deadline", 0.2}})});
  EXPECT_EQ(ok.verdict, Verdict::pass);
  EXPECT_NEAR(ok.slope, 1.0, 1e-12);

  const Summary flat = table("tau-sweep", {row(0.1, {{"dist_L2_sup", 1e-2}, {"relax_residual_int", 1e-2}}),
                                           row(0.01, {{"dist_L2_sup", 1e-2}, {"relax_residual_int", 1e-3}})});
  EXPECT_EQ(flat.verdict, Verdict::fail);

  const Summary late = table(
      "tau-sweep", {row(0.1, {{"dist_L2_sup", 1e-2}, {"relax_residual_int", 1e-2}, {"layer_time", NAN},
                              {"layer_deadline", 2.0}}),
                    row(0.01, {{"dist_L2_sup", 1e-3}, {"relax_residual_int", 1e-3}})});
  EXPECT_EQ(late.verdict, Verdict::fail);
}

TEST(Judge, EpsSweepOrdersByEpsilon) {
  const Summary ok = table("eps-sweep", {row(0.05, {{"dist_L2_sup", 1e-4}}), row(0.2, {{"dist_L2_sup", 4e-4}}),
                                         row(0.1, {{"dist_L2_sup", 2e-4}})});
  EXPECT_EQ(ok.verdict, Verdict::pass);
  EXPECT_NEAR(ok.slope, 1.0, 1e-12);
  const Summary bad = table("eps-sweep", {row(0.2, {{"dist_L2_sup", 1e-4}}), row(0.1, {{"dist_L2_sup", 2e-4}})});
  EXPECT_EQ(bad.verdict, Verdict::fail);
  EXPECT_EQ(table("eps-sweep", {row(0.2, {{"dist_L2_sup", 1e-4}})}).verdict, Verdict::none);
}

TEST(Judge, MmsOrderWindow) {
  const Summary ok = table("mms", {row(0.1, {{"error", 1e-2}}), row(0.05, {{"error", 2.5e-3}}),
                                   row(0.025, {{"error", 6.25e-4}})});
  EXPECT_EQ(ok.verdict, Verdict::pass);
  const Summary first = table("mms", {row(0.1, {{"error", 1e-2}}), row(0.05, {{"error", 5e-3}}),
                                      row(0.025, {{"error", 2.5e-3}})});
  EXPECT_EQ(first.verdict, Verdict::fail);
  const Summary aborted = table("mms", {row(0.1, {{"error", 1e-2}}), row(0.05, {}, true)});
  EXPECT_EQ(aborted.verdict, Verdict::fail);
}

TEST(Judge, BoundedRules) {
  auto bounded = [](double sup, double tail, double vmax = 1.01) {
    return table("bounded", {row(0.01, {{"v_min", 0.99}, {"v_max", vmax}, {"sup_H2", sup},
                                        {"initial_H2", 1.0}, {"tail_fraction", tail}})});
  };
  EXPECT_EQ(bounded(1.0, 0.0).verdict, Verdict::pass);
  EXPECT_EQ(bounded(11.0, 0.0).verdict, Verdict::fail);
  EXPECT_EQ(bounded(1.0, 0.2).verdict, Verdict::fail);
  EXPECT_EQ(bounded(1.0, 0.0, 1.3).verdict, Verdict::invalid);
}

TEST(Judge, UnknownExperimentThrows) {
  Summary s;
  s.experiment = "weather";
  EXPECT_THROW(judge(s), ConfigError);
}

TEST(SummaryJson, RoundTripPreservesVerdictAndRows) {
  const Summary s = table("eps-sweep", {row(0.2, {{"dist_L2_sup", 4e-4}}), row(0.1, {{"dist_L2_sup", 2e-4}}),
                                        row(0.05, {{"dist_L2_sup", NAN}}, true)});
  std::istringstream in(to_json(s));
  const Summary back = summary_from_json(in);
  EXPECT_EQ(back.experiment, s.experiment);
  EXPECT_EQ(back.parameter, s.parameter);
  EXPECT_EQ(back.verdict, s.verdict);
  ASSERT_EQ(back.rows.size(), 3u);
  EXPECT_EQ(back.rows[0].metric("dist_L2_sup"), 4e-4);
  EXPECT_TRUE(back.rows[2].aborted);
  EXPECT_EQ(back.rows[2].abort_reason, "v below floor");
  EXPECT_TRUE(std::isnan(back.rows[2].metric("dist_L2_sup")));
  EXPECT_EQ(judge(back).verdict, s.verdict);
  EXPECT_EQ(to_json(back), to_json(s));
}

TEST(SummaryJson, MalformedInputThrows) {
  std::istringstream bad("{\"experiment\": 3}");
  EXPECT_THROW(summary_from_json(bad), ConfigError);
}

TEST(Execute, EchoesConfigAndUsesExactMmsData) {
  RunConfig c = small_base();
  c.forcing = ForcingKind::mms;
  const Grid1D g(c.n);
  const State s0 = initial_state(c, g);
  const State exact = ManufacturedSolution(c.params).exact(g, 0.0);
  EXPECT_EQ(s0.v, exact.v);
  EXPECT_EQ(s0.S, exact.S);
  const RunArtifact art = execute(c);
  EXPECT_TRUE(art.completed());
  EXPECT_EQ(parse_run_config(art.config_echo).n, c.n);
}

TEST(Experiments, EpsAboveQuarterRejected) {
  EXPECT_THROW(eps_sweep({0.3}, small_base()), ConfigError);
}

TEST(Experiments, TauSweepValidatesInput) {
  EXPECT_THROW(tau_sweep({0.01, 0.1}, small_base()), ConfigError);
  EXPECT_THROW(tau_sweep({0.1, 0.0}, small_base()), ConfigError);
}

TEST(Experiments, SmallTauSweepRunsEndToEnd) {
  TauSweepOptions opt;
  opt.measure_layer = true;
  const Summary s = tau_sweep({0.05, 0.01}, small_base(), opt);
  ASSERT_EQ(s.rows.size(), 2u);
  for (const SummaryRow& r : s.rows) {
    EXPECT_FALSE(r.aborted);
    EXPECT_GT(r.metric("dist_L2_sup"), 0.0);
    EXPECT_GT(r.metric("relax_residual_int"), 0.0);
    EXPECT_FALSE(std::isnan(r.metric("layer_time")));
  }
  EXPECT_EQ(s.verdict, Verdict::pass) << s.reason;
}

TEST(Experiments, SmallEpsSweepIsMonotone) {
  const Summary s = eps_sweep({0.2, 0.1, 0.05}, small_base());
  EXPECT_EQ(s.verdict, Verdict::pass) << s.reason;
}

TEST(Experiments, BoundedEquilibriumPassesWithZeros) {
  RunConfig c = small_base();
  c.n = 17;
  c.t_end = kBoundedMinTime;
  c.energy_every = 50;
  c.ic = {IcFamily::equilibrium, 0.0, ""};
  const Summary s = boundedness_proxy(c);
  EXPECT_EQ(s.verdict, Verdict::pass) << s.reason;
  EXPECT_EQ(s.rows.front().metric("sup_H2"), 0.0);
  EXPECT_EQ(s.rows.front().metric("tail_fraction"), 0.0);
}

TEST(Experiments, LargeAmplitudeIsInvalid) {
  RunConfig c = small_base();
  c.t_end = kBoundedMinTime;
  c.ic.delta = 0.5;
  RunArtifact art;
  const Summary b = boundedness_proxy(c, &art);
  EXPECT_EQ(b.verdict, Verdict::invalid);
  EXPECT_TRUE(art.snapshots.empty());
  const Summary a = apriori_family(c, {0.3, 0.4, 0.5});
  EXPECT_EQ(a.verdict, Verdict::invalid);
}

TEST(Experiments, BoundedNeedsLongHorizon) {
  EXPECT_THROW(boundedness_proxy(small_base()), ConfigError);
}

TEST(Experiments, SmallMmsStudyIsSecondOrder) {
  const Summary s = mms_convergence(SolverKind::relaxed, 17, 3, FluidParams(1.0, 2.0, 1.0, 0.1), 0.2);
  ASSERT_EQ(s.rows.size(), 3u);
  EXPECT_EQ(s.rows[2].metric("n"), 65.0);
  EXPECT_GT(s.slope, 1.7);
  EXPECT_LT(s.slope, 2.3);
}
