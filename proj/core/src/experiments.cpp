#include "relaxns/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <string>

#include "json.hpp"
#include "relaxns/errors.hpp"
#include "relaxns/manufactured.hpp"
#include "relaxns/parabolic_solver.hpp"
#include "relaxns/stencil.hpp"

namespace relaxns {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRegimeLow = 0.75;
constexpr double kRegimeHigh = 1.25;

// Runs f(0..count-1) concurrently and returns the results in index order.
template <class F>
auto parallel_map(std::size_t count, F f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<std::future<R>> futures;
  futures.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    futures.push_back(std::async(std::launch::async, f, k));
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& fut : futures) out.push_back(fut.get());
  return out;
}

double l2_distance(const State& a, const State& b, const Grid1D& grid, bool with_stress) {
  std::vector<double> e(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double dv = a.v[i] - b.v[i];
    const double du = a.u[i] - b.u[i];
    const double ds = with_stress ? a.S[i] - b.S[i] : 0.0;
    e[i] = dv * dv + du * du + ds * ds;
  }
  return std::sqrt(stencil::trapezoid(e, grid.dx()));
}

double sup_distance(const RunArtifact& a, const RunArtifact& b, const Grid1D& grid,
                    bool with_stress) {
  const std::size_t count = std::min(a.snapshots.size(), b.snapshots.size());
  double sup = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (a.snapshots[k].t != b.snapshots[k].t) {
      throw MisuseError("snapshot times of compared runs are not aligned");
    }
    sup = std::max(sup, l2_distance(a.snapshots[k], b.snapshots[k], grid, with_stress));
  }
  return sup;
}

void mark_aborted(SummaryRow& row, const RunArtifact& art) {
  if (!art.completed()) {
    row.aborted = true;
    row.abort_reason = art.abort_reason;
  }
}

bool in_regime(double v_min, double v_max) { return v_min >= kRegimeLow && v_max <= kRegimeHigh; }

double comparison_interval(double requested, const RunConfig& base) {
  if (requested > 0.0) return requested;
  if (base.record_interval > 0.0) return base.record_interval;
  return base.t_end / 200.0;
}

// Rows ordered by decreasing parameter, without touching the stored order.
std::vector<const SummaryRow*> by_decreasing_param(const Summary& s) {
  std::vector<const SummaryRow*> rows;
  for (const SummaryRow& r : s.rows) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const SummaryRow* a, const SummaryRow* b) {
    return a->param_value > b->param_value;
  });
  return rows;
}

std::vector<double> column(const std::vector<const SummaryRow*>& rows, const std::string& name) {
  std::vector<double> out;
  for (const SummaryRow* r : rows) out.push_back(r->metric(name));
  return out;
}

std::vector<double> params_of(const std::vector<const SummaryRow*>& rows) {
  std::vector<double> out;
  for (const SummaryRow* r : rows) out.push_back(r->param_value);
  return out;
}

// Slope through the points with positive parameter and value; NaN if fewer
// than two remain.
double positive_slope(const std::vector<double>& params, const std::vector<double>& values) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k] > 0.0 && values[k] > 0.0 && std::isfinite(values[k])) {
      x.push_back(params[k]);
      y.push_back(values[k]);
    }
  }
  return x.size() >= 2 ? loglog_slope(x, y) : kNaN;
}

void judge_mms(Summary& s) {
  if (s.rows.size() < 2) {
    s.verdict = Verdict::none;
    s.reason = "fewer than two levels";
    return;
  }
  if (s.any_aborted()) {
    s.verdict = Verdict::fail;
    s.reason = "a refinement level aborted";
    return;
  }
  const auto rows = by_decreasing_param(s);
  const std::vector<double> dx = params_of(rows);
  const std::vector<double> err = column(rows, "error");
  s.slope = fit_order(dx, err);
  if (!strictly_decreasing(err)) {
    s.verdict = Verdict::fail;
    s.reason = "non-monotone error sequence";
    return;
  }
  const bool ok = s.slope >= kMmsOrderMin && s.slope <= kMmsOrderMax;
  s.verdict = ok ? Verdict::pass : Verdict::fail;
  s.reason = "fitted order " + format_double(s.slope);
}

void judge_tau(Summary& s) {
  if (s.rows.size() < 2) {
    s.verdict = Verdict::none;
    s.slope = kNaN;
    s.reason = "single entry";
    return;
  }
  if (s.any_aborted()) {
    s.verdict = Verdict::invalid;
    s.reason = "at least one run aborted";
    return;
  }
  const auto rows = by_decreasing_param(s);
  const std::vector<double> taus = params_of(rows);
  const std::vector<double> dist = column(rows, "dist_L2_sup");
  const std::vector<double> resid = column(rows, "relax_residual_int");
  s.slope = positive_slope(taus, dist);
  std::vector<std::string> failures;
  if (!strictly_decreasing(dist)) failures.push_back("distance not strictly decreasing in tau");
  if (!strictly_decreasing(resid)) failures.push_back("residual not strictly decreasing in tau");
  for (const SummaryRow* r : rows) {
    const double deadline = r->metric("layer_deadline");
    if (std::isnan(deadline)) continue;
    const double t = r->metric("layer_time");
    if (!(t <= deadline)) {
      failures.push_back("relaxation layer not resolved by " + format_double(deadline) +
                         " at tau = " + format_double(r->param_value));
    }
  }
  s.verdict = failures.empty() ? Verdict::pass : Verdict::fail;
  s.reason.clear();
  for (const std::string& f : failures) s.reason += (s.reason.empty() ? "" : "; ") + f;
  if (s.reason.empty()) s.reason = "distances and residuals strictly decreasing";
}

void judge_eps(Summary& s) {
  if (s.rows.size() < 2) {
    s.verdict = Verdict::none;
    s.slope = kNaN;
    s.reason = "single entry";
    return;
  }
  if (s.any_aborted()) {
    s.verdict = Verdict::invalid;
    s.reason = "at least one run aborted";
    return;
  }
  const auto rows = by_decreasing_param(s);
  const std::vector<double> dist = column(rows, "dist_L2_sup");
  s.slope = positive_slope(params_of(rows), dist);
  const bool ok = strictly_decreasing(dist);
  s.verdict = ok ? Verdict::pass : Verdict::fail;
  s.reason = ok ? "distances strictly decreasing" : "distance not strictly decreasing in eps";
}

void judge_bounded(Summary& s) {
  s.slope = kNaN;
  if (s.rows.size() != 1) {
    s.verdict = Verdict::none;
    s.reason = "expected exactly one run";
    return;
  }
  const SummaryRow& r = s.rows.front();
  if (r.aborted) {
    s.verdict = Verdict::fail;
    s.reason = "run aborted: " + r.abort_reason;
    return;
  }
  if (!in_regime(r.metric("v_min"), r.metric("v_max"))) {
    s.verdict = Verdict::invalid;
    s.reason = "data leaves the regime 3/4 <= v <= 5/4";
    return;
  }
  const double sup = r.metric("sup_H2");
  const double init = r.metric("initial_H2");
  const double tail = r.metric("tail_fraction");
  std::vector<std::string> failures;
  if (!(sup <= 10.0 * init)) failures.push_back("sup of H2 norm exceeds 10x initial");
  if (!(tail <= 0.1)) failures.push_back("tail fraction of D integral exceeds 10%");
  s.verdict = failures.empty() ? Verdict::pass : Verdict::fail;
  s.reason.clear();
  for (const std::string& f : failures) s.reason += (s.reason.empty() ? "" : "; ") + f;
  if (s.reason.empty()) s.reason = "bounded";
}

void judge_apriori(Summary& s) {
  s.slope = kNaN;
  if (s.rows.size() < 3) {
    s.verdict = Verdict::none;
    s.reason = "needs at least three amplitudes";
    return;
  }
  if (s.any_aborted()) {
    s.verdict = Verdict::fail;
    s.reason = "at least one run aborted";
    return;
  }
  std::vector<EnergyReport> family;
  for (const SummaryRow& r : s.rows) {
    EnergyReport rep;
    rep.E0 = r.metric("E0");
    rep.E_sup = {r.metric("E_sup")};
    rep.D_integral = r.metric("D_integral");
    rep.v_min = r.metric("v_min");
    rep.v_max = r.metric("v_max");
    family.push_back(std::move(rep));
  }
  const AprioriResult res = apriori_check(family);
  s.verdict = res.verdict;
  s.reason = res.reason.empty() ? "ratio spread " + format_double(res.spread) : res.reason;
}

} // namespace

double SummaryRow::metric(const std::string& name) const {
  for (const auto& [key, value] : metrics) {
    if (key == name) return value;
  }
  return kNaN;
}

void SummaryRow::set(const std::string& name, double value) {
  for (auto& [key, v] : metrics) {
    if (key == name) {
      v = value;
      return;
    }
  }
  metrics.emplace_back(name, value);
}

bool Summary::any_aborted() const {
  return std::any_of(rows.begin(), rows.end(), [](const SummaryRow& r) { return r.aborted; });
}

Summary judge(Summary s) {
  if (s.experiment == "mms") {
    judge_mms(s);
  } else if (s.experiment == "tau-sweep") {
    judge_tau(s);
  } else if (s.experiment == "eps-sweep") {
    judge_eps(s);
  } else if (s.experiment == "bounded") {
    judge_bounded(s);
  } else if (s.experiment == "apriori") {
    judge_apriori(s);
  } else {
    throw ConfigError("unknown experiment '" + s.experiment + "'");
  }
  return s;
}

std::string to_json(const Summary& s) {
  using nlohmann::ordered_json;
  auto num = [](double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); };
  ordered_json runs = ordered_json::array();
  for (const SummaryRow& r : s.rows) {
    ordered_json row;
    row["param_value"] = num(r.param_value);
    for (const auto& [key, value] : r.metrics) row[key] = num(value);
    row["aborted"] = r.aborted;
    if (r.aborted) row["abort_reason"] = r.abort_reason;
    runs.push_back(std::move(row));
  }
  ordered_json j;
  j["experiment"] = s.experiment;
  j["parameter"] = s.parameter;
  j["runs"] = std::move(runs);
  j["verdict"] = to_string(s.verdict);
  j["slope"] = num(s.slope);
  j["reason"] = s.reason;
  return j.dump(2);
}

Summary summary_from_json(std::istream& in) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed summary JSON: ") + e.what());
  }
  auto num = [](const json& v) { return v.is_number() ? v.get<double>() : kNaN; };
  try {
    Summary s;
    s.experiment = j.at("experiment").get<std::string>();
    s.parameter = j.at("parameter").get<std::string>();
    for (const json& row : j.at("runs")) {
      SummaryRow r;
      for (auto it = row.begin(); it != row.end(); ++it) {
        if (it.key() == "param_value") {
          r.param_value = num(it.value());
        } else if (it.key() == "aborted") {
          r.aborted = it.value().get<bool>();
        } else if (it.key() == "abort_reason") {
          r.abort_reason = it.value().get<std::string>();
        } else {
          r.metrics.emplace_back(it.key(), num(it.value()));
        }
      }
      s.rows.push_back(std::move(r));
    }
    const std::string verdict = j.at("verdict").get<std::string>();
    for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::invalid, Verdict::vacuous,
                      Verdict::none}) {
      if (verdict == to_string(v)) s.verdict = v;
    }
    s.slope = num(j.at("slope"));
    s.reason = j.value("reason", "");
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("summary JSON has unexpected shape: ") + e.what());
  }
}

State initial_state(const RunConfig& cfg, const Grid1D& grid) {
  if (cfg.forcing == ForcingKind::mms) return ManufacturedSolution(cfg.params).exact(grid, 0.0);
  return make_initial_data(cfg.ic, grid, cfg.params);
}

RunArtifact execute(const RunConfig& cfg) {
  cfg.validate();
  const Grid1D grid(cfg.n);
  const SchemeConfig sc = scheme_config(cfg, grid);
  const State init = initial_state(cfg, grid);
  RunArtifact art = cfg.solver == SolverKind::relaxed
                        ? run(init, cfg.t_end, cfg.params, grid, sc)
                        : run_parabolic(ParabolicState::from(init), cfg.t_end, cfg.params, grid, sc);
  art.config_echo = to_json(cfg);
  return art;
}

double fit_order(const std::vector<double>& dx, const std::vector<double>& errors) {
  return loglog_slope(dx, errors);
}

Summary mms_convergence(SolverKind solver, std::size_t base_n, std::size_t levels,
                        const FluidParams& p, double t_end, double cfl) {
  if (levels < 3) throw ConfigError("mms convergence needs at least 3 levels");
  if (base_n < Grid1D::kMinNodes) throw ConfigError("mms base grid too small");

  auto level = [&](std::size_t k) {
    RunConfig cfg;
    cfg.solver = solver;
    cfg.params = p;
    cfg.n = (base_n - 1) * (std::size_t{1} << k) + 1;
    cfg.t_end = t_end;
    cfg.cfl = cfl;
    cfg.record_every = 0;
    cfg.energy_every = 0;
    cfg.forcing = ForcingKind::mms;
    const RunArtifact art = execute(cfg);

    const Grid1D grid(cfg.n);
    SummaryRow row;
    row.param_value = grid.dx();
    row.set("n", static_cast<double>(cfg.n));
    mark_aborted(row, art);
    if (row.aborted) {
      row.set("error", kNaN);
      return row;
    }
    const State exact = ManufacturedSolution(p).exact(grid, t_end);
    const State& got = art.final_state();
    row.set("error", l2_distance(got, exact, grid, solver == SolverKind::relaxed));
    return row;
  };

  Summary s;
  s.experiment = "mms";
  s.parameter = "dx";
  s.rows = parallel_map(levels, level);
  return judge(std::move(s));
}

Summary tau_sweep(const std::vector<double>& taus, const RunConfig& base,
                  const TauSweepOptions& opt) {
  if (taus.empty()) throw ConfigError("tau sweep needs at least one tau");
  for (std::size_t k = 0; k < taus.size(); ++k) {
    if (!(taus[k] > 0.0)) throw ConfigError("tau sweep values must be > 0");
    if (k > 0 && !(taus[k] < taus[k - 1])) {
      throw ConfigError("tau sweep values must be strictly decreasing");
    }
  }
  if (base.forcing != ForcingKind::none) throw ConfigError("tau sweep runs without forcing");
  base.validate();

  const Grid1D grid(base.n);
  const double interval = comparison_interval(opt.compare_interval, base);
  const bool sine = base.ic.family == IcFamily::well_prepared_sine ||
                    base.ic.family == IcFamily::unprepared_sine;
  const bool layer = opt.measure_layer && sine;

  SchemeConfig compare;
  compare.cfl = base.cfl;
  compare.v_floor = base.v_floor;
  compare.record_every = 0;
  compare.record_interval = interval;
  compare.energy_every = 0;

  // task 0: parabolic reference; 1..N: relaxed runs; N+1..2N: layer runs
  const std::size_t m = taus.size();
  const std::size_t tasks = 1 + m + (layer ? m : 0);
  auto task = [&](std::size_t k) -> RunArtifact {
    if (k == 0) {
      const State init = make_initial_data(base.ic, grid, base.params);
      return run_parabolic(ParabolicState::from(init), base.t_end, base.params, grid, compare);
    }
    if (k <= m) {
      const FluidParams p = base.params.with_tau(taus[k - 1]);
      SchemeConfig sc = compare;
      sc.energy_every = base.energy_every;
      return run(make_initial_data(base.ic, grid, p), base.t_end, p, grid, sc);
    }
    const double tau = taus[k - 1 - m];
    const FluidParams p = base.params.with_tau(tau);
    IcSpec ic = base.ic;
    ic.family = IcFamily::unprepared_sine;
    SchemeConfig sc;
    sc.cfl = base.cfl;
    sc.v_floor = base.v_floor;
    sc.record_every = 0;
    sc.energy_every = 1;
    return run(make_initial_data(ic, grid, p), opt.layer_deadline * tau, p, grid, sc);
  };
  const std::vector<RunArtifact> arts = parallel_map(tasks, task);
  const RunArtifact& ref = arts[0];

  Summary s;
  s.experiment = "tau-sweep";
  s.parameter = "tau";
  for (std::size_t k = 0; k < m; ++k) {
    const RunArtifact& art = arts[1 + k];
    SummaryRow row;
    row.param_value = taus[k];
    mark_aborted(row, ref);
    mark_aborted(row, art);
    row.set("dist_L2_sup", row.aborted ? kNaN : sup_distance(art, ref, grid, false));
    row.set("relax_residual_int", relaxation_residual_series(art).integrated);
    if (layer) {
      const RunArtifact& la = arts[1 + m + k];
      mark_aborted(row, la);
      const double r0 = la.energy.empty() ? kNaN : la.energy.front().relax_residual;
      double when = kNaN;
      for (const EnergySnapshot& e : la.energy) {
        if (e.relax_residual < opt.layer_fraction * r0) {
          when = e.t;
          break;
        }
      }
      row.set("layer_initial", r0);
      row.set("layer_time", when);
      row.set("layer_deadline", opt.layer_deadline * taus[k]);
    }
    s.rows.push_back(std::move(row));
  }
  return judge(std::move(s));
}

Summary eps_sweep(const std::vector<double>& epsilons, const RunConfig& base,
                  double compare_interval) {
  if (epsilons.empty()) throw ConfigError("eps sweep needs at least one epsilon");
  if (base.forcing != ForcingKind::none) throw ConfigError("eps sweep runs without forcing");
  if (!(base.params.tau() > 0.0)) throw ConfigError("eps sweep needs tau > 0");
  base.validate();
  std::vector<FluidParams> params;
  for (double eps : epsilons) params.push_back(base.params.with_epsilon(eps));

  const Grid1D grid(base.n);
  SchemeConfig sc;
  sc.cfl = base.cfl;
  sc.v_floor = base.v_floor;
  sc.record_every = 0;
  sc.record_interval = comparison_interval(compare_interval, base);
  sc.energy_every = 0;

  const State init = make_initial_data(base.ic, grid, base.params);
  auto task = [&](std::size_t k) {
    const FluidParams p = k == 0 ? base.params.with_epsilon(0.0) : params[k - 1];
    return run(init, base.t_end, p, grid, sc);
  };
  const std::vector<RunArtifact> arts = parallel_map(epsilons.size() + 1, task);

  Summary s;
  s.experiment = "eps-sweep";
  s.parameter = "epsilon";
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    SummaryRow row;
    row.param_value = epsilons[k];
    mark_aborted(row, arts[0]);
    mark_aborted(row, arts[k + 1]);
    row.set("dist_L2_sup", row.aborted ? kNaN : sup_distance(arts[k + 1], arts[0], grid, true));
    s.rows.push_back(std::move(row));
  }
  return judge(std::move(s));
}

namespace {

struct LongRun {
  SummaryRow row;
  RunArtifact artifact;
};

// Relaxed run recording energy at cfg.energy_every; skipped (artifact empty)
// when the initial data are already outside the regime.
LongRun long_run(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.solver != SolverKind::relaxed) throw ConfigError("long-time runs use the relaxed solver");
  const Grid1D grid(cfg.n);
  const State init = initial_state(cfg, grid);
  LongRun out;
  const auto [lo, hi] = std::minmax_element(init.v.begin(), init.v.end());
  out.row.set("v_min", *lo);
  out.row.set("v_max", *hi);
  if (!in_regime(*lo, *hi)) return out;

  RunConfig c = cfg;
  c.record_every = 0;
  c.record_interval = 0.0;
  out.artifact = execute(c);
  mark_aborted(out.row, out.artifact);
  const EnergyReport rep = make_energy_report(out.artifact.energy);
  out.row.set("v_min", rep.v_min);
  out.row.set("v_max", rep.v_max);
  out.row.set("E0", rep.E0);
  out.row.set("E_sup", rep.E_sup.empty() ? kNaN : rep.E_sup.back());
  out.row.set("D_integral", rep.D_integral);
  return out;
}

} // namespace

Summary boundedness_proxy(const RunConfig& cfg, RunArtifact* artifact) {
  if (cfg.t_end < kBoundedMinTime) {
    throw ConfigError("boundedness proxy needs t_end >= " + format_double(kBoundedMinTime));
  }
  LongRun lr = long_run(cfg);
  const std::vector<EnergySnapshot>& rows = lr.artifact.energy;
  if (!rows.empty()) {
    double sup = 0.0, total = 0.0, tail = 0.0;
    const double half = 0.5 * cfg.t_end;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      sup = std::max(sup, rows[k].E_H2);
      if (k == 0) continue;
      const double piece =
          0.5 * (rows[k].t - rows[k - 1].t) * (rows[k].D_value + rows[k - 1].D_value);
      total += piece;
      if (rows[k - 1].t >= half) tail += piece;
    }
    lr.row.set("sup_H2", sup);
    lr.row.set("initial_H2", rows.front().E_H2);
    lr.row.set("tail_fraction", total > 0.0 ? tail / total : 0.0);
  }
  lr.row.param_value = cfg.ic.delta;
  Summary s;
  s.experiment = "bounded";
  s.parameter = "delta";
  s.rows.push_back(std::move(lr.row));
  if (artifact) *artifact = std::move(lr.artifact);
  return judge(std::move(s));
}

Summary apriori_family(const RunConfig& base, const std::vector<double>& deltas) {
  auto task = [&](std::size_t k) {
    RunConfig cfg = base;
    cfg.ic.delta = deltas[k];
    SummaryRow row = long_run(cfg).row;
    row.param_value = deltas[k];
    const double e0 = row.metric("E0");
    row.set("ratio", e0 > 0.0 ? (row.metric("E_sup") + row.metric("D_integral")) / e0 : kNaN);
    return row;
  };
  Summary s;
  s.experiment = "apriori";
  s.parameter = "delta";
  s.rows = parallel_map(deltas.size(), task);
  return judge(std::move(s));
}

} // namespace relaxns
