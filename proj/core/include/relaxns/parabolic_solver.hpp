#pragma once

// Reference solver for the classical isentropic Navier-Stokes system (the
// tau -> 0 limit):
//
//   v_t = u_x,    u_t + p(v)_x = (mu u_x / v)_x,    u = 0 at x = 0, 1.
//
// The viscous flux mu u_x / v lives on cell midpoints, with v averaged to the
// midpoint, which gives a compact three-point operator whose discrete
// dissipation is sign-definite.  Time stepping is explicit SSP-RK3 under
//   dt = min(cfl dx / sqrt(-p'(v_min)), 0.4 dx^2 v_min / mu).

#include <vector>

#include "relaxns/artifact.hpp"
#include "relaxns/energy.hpp"
#include "relaxns/model.hpp"
#include "relaxns/relaxed_solver.hpp"

namespace relaxns {

struct ParabolicState {
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> u;

  std::size_t size() const { return v.size(); }
  static ParabolicState equilibrium(const Grid1D& grid, double t = 0.0);
  static ParabolicState from(const State& s);
};

struct ParabolicRates {
  std::vector<double> v;
  std::vector<double> u;
};

ParabolicRates rhs_parabolic(const ParabolicState& state, const FluidParams& p,
                             const Grid1D& grid, const Forcing* forcing = nullptr,
                             double v_floor = SchemeConfig{}.v_floor);

// mu D u / v nodewise: the stress the relaxed S approaches as tau -> 0.
std::vector<double> effective_stress(const ParabolicState& state, const FluidParams& p,
                                     const Grid1D& grid);

double stable_dt_parabolic(const ParabolicState& state, const FluidParams& p,
                           const Grid1D& grid, const SchemeConfig& cfg);

ParabolicState step_parabolic(const ParabolicState& state, double dt, const FluidParams& p,
                              const Grid1D& grid, const SchemeConfig& cfg);

// Snapshots carry S = effective_stress so that the CSV schema is shared with
// the relaxed solver.
RunArtifact run_parabolic(const ParabolicState& init, double t_end, const FluidParams& p,
                          const Grid1D& grid, const SchemeConfig& cfg);

// Energy row for the limit model: e_phys = integral of a(v-1) - h(v) + u^2/2,
// diss_rate = integral of mu (D u)^2 / v, E/D functionals with S replaced by
// the effective stress and tau = 0.
EnergySnapshot energy_snapshot_parabolic(const ParabolicState& state, const FluidParams& p,
                                         const Grid1D& grid);

class ParabolicStepper {
public:
  ParabolicStepper(FluidParams p, Grid1D grid, SchemeConfig cfg);

  const FluidParams& params() const { return p_; }
  const Grid1D& grid() const { return grid_; }
  const SchemeConfig& config() const { return cfg_; }

  double stable_dt(const ParabolicState& state) const;
  void advance(ParabolicState& state, double dt);
  void rhs(const ParabolicState& state, double t, ParabolicRates& out);

private:
  FluidParams p_;
  Grid1D grid_;
  SchemeConfig cfg_;
  std::vector<double> work_;
  ParabolicState stage1_;
  ParabolicState stage2_;
  ParabolicRates rates_;
};

void check_admissible(const ParabolicState& state, double v_floor);

} // namespace relaxns
