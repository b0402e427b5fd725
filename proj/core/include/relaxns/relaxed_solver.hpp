#pragma once

// Method-of-lines solver for the eps-regularised relaxed system.
//
// One step is a Strang splitting
//
//   R(dt/2) T(dt) R(dt/2)
//
// where R integrates tau S_t + v S = mu D u exactly with v and D u frozen, and
// T advances the non-stiff transport part
//
//   v_t = D u,   u_t = D (S - p(v)),   S_t = -eps b D_up S
//
// with the three-stage SSP Runge-Kutta method.  Manufactured sources enter T.
// u is held at zero on both end nodes; v and S receive no boundary data.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "relaxns/artifact.hpp"
#include "relaxns/model.hpp"

namespace relaxns {

// Source terms f_v, f_u, f_S of (t, x), evaluated on a whole grid at once and
// added to (v_t, u_t, S_t).  The S source is a rate, i.e. already divided by
// tau.  For the parabolic model the S span is empty.  Sources for u at the end
// nodes are discarded.
struct Forcing {
  std::function<void(double t, std::span<const double> x, std::span<double> v_t,
                     std::span<double> u_t, std::span<double> S_t)>
      add;
};

struct SchemeConfig {
  double cfl = 0.4;
  double v_floor = 1e-6;
  std::optional<Forcing> forcing;
  // State snapshot cadence in steps (0 disables step-based snapshots).
  std::size_t record_every = 1;
  // When > 0, snapshots are also taken at every multiple of this time and the
  // step is shortened to land on it exactly.
  double record_interval = 0.0;
  // Energy row cadence in steps; 0 records energy only alongside snapshots.
  std::size_t energy_every = 1;

  void validate() const;
};

struct Rates {
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> S;
};

Rates rhs_relaxed(const State& state, const FluidParams& p, const Grid1D& grid,
                  const Forcing* forcing = nullptr, double v_floor = SchemeConfig{}.v_floor);

double stable_dt(const State& state, const FluidParams& p, const Grid1D& grid,
                 const SchemeConfig& cfg);

State step(const State& state, double dt, const FluidParams& p, const Grid1D& grid,
           const SchemeConfig& cfg);

RunArtifact run(const State& init, double t_end, const FluidParams& p, const Grid1D& grid,
                const SchemeConfig& cfg);

// Reusable stepper; holds the stage buffers so repeated steps do not allocate.
class RelaxedStepper {
public:
  RelaxedStepper(FluidParams p, Grid1D grid, SchemeConfig cfg);

  const FluidParams& params() const { return p_; }
  const Grid1D& grid() const { return grid_; }
  const SchemeConfig& config() const { return cfg_; }

  double stable_dt(const State& state) const;

  // Advances `state` in place.  On NumericalAbort `state` is left unchanged.
  void advance(State& state, double dt);

  // Transport right-hand side (no relaxation), including forcing.
  void transport_rhs(const State& state, double t, Rates& out);

private:
  void relax(State& state, double dt);

  FluidParams p_;
  Grid1D grid_;
  SchemeConfig cfg_;
  std::vector<double> wind_;
  std::vector<double> work_;
  std::vector<double> work2_;
  State stage1_;
  State stage2_;
  Rates rates_;
};

// Throws NumericalAbort if any v <= floor or any field is non-finite.
void check_admissible(const State& state, double v_floor);

} // namespace relaxns
