#pragma once

// Experiment orchestration: single runs, manufactured-solution convergence,
// tau and eps sweeps, long-time boundedness.  Every experiment produces a
// Summary table whose verdict is recomputed from the rows alone by judge().

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "relaxns/artifact.hpp"
#include "relaxns/config.hpp"
#include "relaxns/diagnostics.hpp"

namespace relaxns {

State initial_state(const RunConfig& cfg, const Grid1D& grid);

// Runs the configured solver; config_echo is filled with to_json(cfg).
RunArtifact execute(const RunConfig& cfg);

struct SummaryRow {
  double param_value = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
  bool aborted = false;
  std::string abort_reason;

  // NaN when absent.
  double metric(const std::string& name) const;
  void set(const std::string& name, double value);
};

struct Summary {
  // "mms", "tau-sweep", "eps-sweep", "bounded", "apriori"
  std::string experiment;
  std::string parameter;
  std::vector<SummaryRow> rows;
  Verdict verdict = Verdict::none;
  double slope = std::numeric_limits<double>::quiet_NaN();
  std::string reason;

  bool any_aborted() const;
};

// Recomputes verdict, slope and reason from the rows.
Summary judge(Summary summary);

std::string to_json(const Summary& summary);
Summary summary_from_json(std::istream& in);

// Least-squares order of errors against grid spacing.
double fit_order(const std::vector<double>& dx, const std::vector<double>& errors);

inline constexpr double kMmsOrderMin = 1.8;
inline constexpr double kMmsOrderMax = 2.2;

// Grids are nested: n_k = (base_n - 1) 2^k + 1.  Errors are discrete L^2
// norms of (v, u, S) (relaxed) or (v, u) (parabolic) against the manufactured
// fields at t_end.  Levels run concurrently.
Summary mms_convergence(SolverKind solver, std::size_t base_n, std::size_t levels,
                        const FluidParams& p, double t_end = 0.5, double cfl = 0.4);

struct TauSweepOptions {
  // Unprepared companion runs measuring the initial layer.
  bool measure_layer = true;
  double layer_deadline = 20.0;  // in units of tau
  double layer_fraction = 0.1;
  // Snapshot spacing used to compare against the parabolic reference; 0
  // picks t_end / 200.
  double compare_interval = 0.0;
};

// taus must be strictly decreasing.  All runs share base.n, base.t_end and
// base.ic; base.ic must be a sine family.  Metrics per tau:
//   dist_L2_sup         sup over snapshot times of ||(v - v0, u - u0)||
//   relax_residual_int  (integral of ||S - mu u_x / v||^2 dt)^(1/2)
//   layer_initial       residual at t = 0 of the unprepared run
//   layer_time          first time it drops below layer_fraction of that
//                       (NaN if not within the deadline)
//   layer_deadline      layer_deadline * tau
Summary tau_sweep(const std::vector<double>& taus, const RunConfig& base,
                  const TauSweepOptions& opt = {});

// Distances (sup over snapshot times of the L^2 norm of (v, u, S)) to the
// eps = 0 run with otherwise identical settings.
Summary eps_sweep(const std::vector<double>& epsilons, const RunConfig& base,
                  double compare_interval = 0.0);

inline constexpr double kBoundedMinTime = 50.0;

// Relaxed run of cfg (t_end >= 50); one row with sup_H2, initial_H2,
// D_integral, tail_fraction (share of the D integral over [t_end/2, t_end]),
// v_min, v_max.  The underlying run is copied to `artifact` when given
// (left empty if the initial data are already outside the regime).
Summary boundedness_proxy(const RunConfig& cfg, RunArtifact* artifact = nullptr);

// One row per delta with ratio (sup E + integral D) / E0 and its parts.
Summary apriori_family(const RunConfig& base, const std::vector<double>& deltas);

} // namespace relaxns
