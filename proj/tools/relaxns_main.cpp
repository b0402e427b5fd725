#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relaxns/artifact.hpp"
#include "relaxns/config.hpp"
#include "relaxns/errors.hpp"
#include "relaxns/experiments.hpp"
#include "relaxns/initial_data.hpp"
#include "relaxns/svg.hpp"

namespace fs = std::filesystem;
using namespace relaxns;

namespace {

enum Exit : int { kOk = 0, kFail = 1, kInvalid = 2, kAbort = 3 };

struct Globals {
  std::string config_path;
  std::string out_dir;
  bool quiet = false;
};

Globals g;

void say(const std::string& line) {
  if (!g.quiet) std::cout << line << '\n';
}

int exit_code(const Summary& s) {
  if (s.any_aborted()) return kAbort;
  switch (s.verdict) {
    case Verdict::fail: return kFail;
    case Verdict::invalid: return kInvalid;
    default: return kOk;
  }
}

int worst(int a, int b) {
  // abort > invalid > fail > ok
  auto rank = [](int c) { return c == kAbort ? 3 : c == kInvalid ? 2 : c == kFail ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

// Config from --config, or `fallback` adjusted by the subcommand.
RunConfig base_config(const RunConfig& fallback) {
  return g.config_path.empty() ? fallback : load_run_config(g.config_path);
}

fs::path output_dir(const RunConfig& cfg) {
  fs::path dir = g.out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(g.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) { open_out(path) << text << '\n'; }

PlotSpec energy_plot(const std::vector<EnergySnapshot>& rows, const std::string& title) {
  PlotSpec spec;
  spec.title = title;
  spec.x_label = "t";
  spec.y_label = "value";
  spec.log_y = true;
  PlotSeries e{"e_phys", {}, {}}, h2{"E_H2", {}, {}}, d{"D_value", {}, {}};
  // thin long series so the SVG stays small
  const std::size_t stride = std::max<std::size_t>(1, rows.size() / 2000);
  for (std::size_t k = 0; k < rows.size(); k += stride) {
    for (PlotSeries* s : {&e, &h2, &d}) s->x.push_back(rows[k].t);
    e.y.push_back(rows[k].e_phys);
    h2.y.push_back(rows[k].E_H2);
    d.y.push_back(rows[k].D_value);
  }
  spec.series = {e, h2, d};
  return spec;
}

PlotSpec summary_plot(const Summary& s) {
  PlotSpec spec;
  spec.log_x = true;
  spec.log_y = true;
  spec.markers = true;
  spec.x_label = s.parameter;
  spec.title = s.experiment + " (" + to_string(s.verdict) + ")";
  std::vector<std::string> names;
  if (s.experiment == "mms") {
    names = {"error"};
    spec.y_label = "L2 error";
  } else if (s.experiment == "tau-sweep") {
    names = {"dist_L2_sup", "relax_residual_int"};
    spec.y_label = "distance / residual";
  } else if (s.experiment == "eps-sweep") {
    names = {"dist_L2_sup"};
    spec.y_label = "distance to eps = 0";
  } else if (s.experiment == "apriori") {
    names = {"ratio"};
    spec.y_label = "(sup E + int D) / E0";
  }
  for (const std::string& name : names) {
    PlotSeries series{name, {}, {}};
    for (const SummaryRow& r : s.rows) {
      series.x.push_back(r.param_value);
      series.y.push_back(r.metric(name));
    }
    spec.series.push_back(std::move(series));
  }
  return spec;
}

void emit_summary(const Summary& s, const fs::path& dir, const std::string& stem) {
  write_text(dir / (stem + ".json"), to_json(s));
  if (s.experiment != "bounded") write_svg(summary_plot(s), dir / (stem + ".svg"));
  say(stem + ": " + to_string(s.verdict) + " (" + s.reason + ")");
  for (const SummaryRow& r : s.rows) {
    std::string line = "  " + s.parameter + " = " + format_double(r.param_value);
    for (const auto& [k, v] : r.metrics) line += "  " + k + " = " + format_double(v);
    if (r.aborted) line += "  ABORTED: " + r.abort_reason;
    say(line);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Subcommands.

int cmd_run() {
  const RunConfig cfg = base_config(RunConfig{});
  const fs::path dir = output_dir(cfg);
  const RunArtifact art = execute(cfg);
  write_text(dir / "config.json", art.config_echo);
  {
    std::ofstream out = open_out(dir / "snapshots.csv");
    write_snapshot_csv(art, out);
  }
  {
    std::ofstream out = open_out(dir / "energy.csv");
    write_energy_csv(art, out);
  }
  write_svg(energy_plot(art.energy, std::string("energy, ") + to_string(cfg.solver)),
            dir / "energy.svg");
  nlohmann::ordered_json status;
  status["status"] = to_string(art.status);
  status["abort_reason"] = art.abort_reason;
  status["steps"] = art.steps;
  status["final_time"] = art.snapshots.empty() ? 0.0 : art.final_state().t;
  write_text(dir / "status.json", status.dump(2));
  say(std::string("run ") + to_string(art.status) + ": " + std::to_string(art.steps) +
      " steps, t = " + format_double(art.snapshots.back().t) + ", artifacts in " + dir.string());
  if (!art.completed()) {
    std::cerr << "numerical abort: " << art.abort_reason << '\n';
    return kAbort;
  }
  return kOk;
}

int cmd_mms(const std::string& solver, std::size_t base_n, std::size_t levels, double t_end) {
  const RunConfig cfg = base_config(RunConfig{});
  const fs::path dir = output_dir(cfg);
  std::vector<SolverKind> kinds;
  if (solver == "both") {
    kinds = {SolverKind::relaxed, SolverKind::parabolic};
  } else {
    kinds = {parse_solver_kind(solver)};
  }
  int code = kOk;
  for (SolverKind kind : kinds) {
    const Summary s = mms_convergence(kind, base_n, levels, cfg.params, t_end, cfg.cfl);
    emit_summary(s, dir, std::string("mms_") + to_string(kind));
    code = worst(code, exit_code(s));
  }
  return code;
}

int cmd_tau_sweep(const std::string& taus, bool no_layer) {
  RunConfig fallback;
  fallback.n = 401;
  fallback.t_end = 2.0;
  const RunConfig cfg = base_config(fallback);
  const fs::path dir = output_dir(cfg);
  TauSweepOptions opt;
  opt.measure_layer = !no_layer;
  const Summary s = tau_sweep(parse_list(taus), cfg, opt);
  emit_summary(s, dir, "tau_sweep");
  return exit_code(s);
}

int cmd_eps_sweep(const std::string& eps) {
  RunConfig fallback;
  fallback.t_end = 2.0;
  const RunConfig cfg = base_config(fallback);
  const fs::path dir = output_dir(cfg);
  const Summary s = eps_sweep(parse_list(eps), cfg);
  emit_summary(s, dir, "eps_sweep");
  return exit_code(s);
}

int cmd_bounded(const std::string& deltas) {
  RunConfig fallback;
  fallback.t_end = kBoundedMinTime;
  const RunConfig cfg = base_config(fallback);
  const fs::path dir = output_dir(cfg);
  RunArtifact art;
  const Summary b = boundedness_proxy(cfg, &art);
  emit_summary(b, dir, "bounded");
  if (!art.energy.empty()) {
    std::ofstream out = open_out(dir / "bounded_energy.csv");
    write_energy_csv(art, out);
    write_svg(energy_plot(art.energy, "long-time energy"), dir / "bounded_energy.svg");
  }
  const std::vector<double> family =
      deltas.empty() ? std::vector<double>{0.5 * cfg.ic.delta, cfg.ic.delta, 2.0 * cfg.ic.delta}
                     : parse_list(deltas);
  const Summary a = apriori_family(cfg, family);
  emit_summary(a, dir, "apriori");
  return worst(exit_code(b), exit_code(a));
}

int cmd_check_ic() {
  const RunConfig cfg = base_config(RunConfig{});
  const fs::path dir = output_dir(cfg);
  const Grid1D grid(cfg.n);
  const State s0 = initial_state(cfg, grid);
  const CompatibilityReport nodal = compatibility_report(s0, cfg.params, grid);
  std::optional<CompatibilityReport> exact;
  if (cfg.forcing == ForcingKind::none) {
    if (auto prof = analytic_profile(cfg.ic, cfg.params)) {
      exact = compatibility_report(*prof, cfg.params, grid);
    }
  }

  auto to_obj = [](const CompatibilityReport& r) {
    nlohmann::ordered_json j;
    j["u_left"] = r.u_left;
    j["u_right"] = r.u_right;
    j["momentum_left"] = r.momentum_left;
    j["momentum_right"] = r.momentum_right;
    j["v_min"] = r.v_min;
    j["well_prepared_H1"] = r.well_prepared;
    return j;
  };
  nlohmann::ordered_json j;
  j["family"] = to_string(cfg.ic.family);
  j["delta"] = cfg.ic.delta;
  j["nodal"] = to_obj(nodal);
  if (exact) j["analytic"] = to_obj(*exact);

  // Boundary conditions are judged on the exact fields when they exist.
  constexpr double tol = 1e-12;
  const CompatibilityReport& judged = exact ? *exact : nodal;
  std::string verdict = "PASS";
  int code = kOk;
  if (!(nodal.v_min > 0.0)) {
    verdict = "INVALID";
    code = kInvalid;
  } else if (std::max(judged.u_left, judged.u_right) > tol ||
             (exact && exact->max_boundary_residual() > tol)) {
    verdict = "FAIL";
    code = kFail;
  }
  j["verdict"] = verdict;
  write_text(dir / "check_ic.json", j.dump(2));
  say(j.dump(2));
  return code;
}

int cmd_report(const std::string& dir_arg) {
  const fs::path dir = !dir_arg.empty() ? fs::path(dir_arg) : fs::path(g.out_dir.empty() ? "out" : g.out_dir);
  if (!fs::is_directory(dir)) throw ConfigError("no such directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  int code = kOk;
  std::size_t seen = 0;
  for (const fs::path& f : files) {
    if (f.extension() == ".csv" && f.stem().string().find("energy") != std::string::npos) {
      std::ifstream in(f);
      const std::vector<EnergySnapshot> rows = read_energy_csv(in);
      fs::path svg = f;
      svg.replace_extension(".svg");
      write_svg(energy_plot(rows, f.stem().string()), svg);
      say(f.filename().string() + ": " + std::to_string(rows.size()) + " rows -> " +
          svg.filename().string());
      ++seen;
      continue;
    }
    if (f.extension() != ".json") continue;
    std::ifstream in(f);
    nlohmann::json probe;
    try {
      probe = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception&) {
      continue;
    }
    if (!probe.is_object() || !probe.contains("experiment")) continue;
    std::istringstream again(probe.dump());
    const Summary recorded = summary_from_json(again);
    const Summary s = judge(recorded);
    ++seen;
    if (s.experiment != "bounded") {
      fs::path svg = f;
      svg.replace_extension(".svg");
      write_svg(summary_plot(s), svg);
    }
    std::string line = f.filename().string() + ": " + to_string(s.verdict) + " (" + s.reason + ")";
    if (s.verdict != recorded.verdict) {
      line += " [recorded verdict was " + std::string(to_string(recorded.verdict)) + "]";
      code = worst(code, kFail);
    }
    say(line);
    code = worst(code, exit_code(s));
  }
  if (seen == 0) say("no artifacts found in " + dir.string());
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed isentropic Navier-Stokes solver and experiment harness"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory (overrides output_dir)");
  app.add_flag("--quiet", g.quiet, "suppress progress output");

  auto* run = app.add_subcommand("run", "run one configuration and write CSV/SVG artifacts");

  std::string mms_solver = "both";
  std::size_t base_n = 65, levels = 4;
  double mms_t_end = 0.5;
  auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  mms->add_option("--solver", mms_solver, "relaxed, parabolic or both")
      ->check(CLI::IsMember({"relaxed", "parabolic", "both"}));
  mms->add_option("--base-n", base_n, "coarsest grid (nodes)");
  mms->add_option("--levels", levels, "number of refinement levels (>= 3)");
  mms->add_option("--t-end", mms_t_end, "final time");

  std::string taus = "0.1,0.03,0.01,0.003,0.001";
  bool no_layer = false;
  auto* tau = app.add_subcommand("tau-sweep", "relaxation-limit sweep against the parabolic model");
  tau->add_option("--taus", taus, "comma-separated, strictly decreasing");
  tau->add_flag("--no-layer", no_layer, "skip the unprepared initial-layer runs");

  std::string eps = "0.2,0.1,0.05,0.025";
  auto* eps_cmd = app.add_subcommand("eps-sweep", "boundary-regularisation sweep");
  eps_cmd->add_option("--eps", eps, "comma-separated values in [0, 1/4]");

  std::string deltas;
  auto* bounded = app.add_subcommand("bounded", "long-time boundedness and a-priori scaling");
  bounded->add_option("--deltas", deltas, "amplitude family (default delta/2, delta, 2 delta)");

  auto* check_ic = app.add_subcommand("check-ic", "compatibility report for the initial data");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "re-judge saved summaries and redraw plots");
  report->add_option("dir", report_dir, "artifact directory (default --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) return cmd_run();
    if (*mms) return cmd_mms(mms_solver, base_n, levels, mms_t_end);
    if (*tau) return cmd_tau_sweep(taus, no_layer);
    if (*eps_cmd) return cmd_eps_sweep(eps);
    if (*bounded) return cmd_bounded(deltas);
    if (*check_ic) return cmd_check_ic();
    if (*report) return cmd_report(report_dir);
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kAbort;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
