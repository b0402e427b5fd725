#include "relaxns/relaxed_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxns/errors.hpp"
#include "relaxns/stencil.hpp"
#include "run_loop.hpp"

namespace relaxns {

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(v_floor > 0.0)) throw ConfigError("v_floor must be > 0");
  if (!(record_interval >= 0.0)) throw ConfigError("record_interval must be >= 0");
}

void check_admissible(const State& state, double v_floor) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!std::isfinite(state.v[i]) || !std::isfinite(state.u[i]) || !std::isfinite(state.S[i])) {
      throw NumericalAbort("non-finite value at node " + std::to_string(i) +
                           ", t = " + format_double(state.t));
    }
    if (state.v[i] <= v_floor) {
      throw NumericalAbort("positivity failure: v[" + std::to_string(i) +
                           "] = " + format_double(state.v[i]) + " <= floor at t = " +
                           format_double(state.t));
    }
  }
}

namespace {

void require_tau(const FluidParams& p) {
  if (!(p.tau() > 0.0)) {
    throw MisuseError("relaxed solver requires tau > 0; use the parabolic solver for tau = 0");
  }
}

void require_shape(const State& s, const Grid1D& grid) {
  if (s.v.size() != grid.n() || s.u.size() != grid.n() || s.S.size() != grid.n()) {
    throw MisuseError("state size does not match grid");
  }
}

void resize(State& s, std::size_t n) {
  s.v.resize(n);
  s.u.resize(n);
  s.S.resize(n);
}

void resize(Rates& r, std::size_t n) {
  r.v.resize(n);
  r.u.resize(n);
  r.S.resize(n);
}

} // namespace

RelaxedStepper::RelaxedStepper(FluidParams p, Grid1D grid, SchemeConfig cfg)
    : p_(p), grid_(std::move(grid)), cfg_(std::move(cfg)) {
  require_tau(p_);
  cfg_.validate();
  const std::size_t n = grid_.n();
  wind_.resize(n);
  for (std::size_t i = 0; i < n; ++i) wind_[i] = p_.epsilon() * boundary_weight(grid_.x(i));
  work_.resize(n);
  work2_.resize(n);
  resize(stage1_, n);
  resize(stage2_, n);
  resize(rates_, n);
}

double RelaxedStepper::stable_dt(const State& state) const {
  const double dx = grid_.dx();
  return std::min(cfg_.cfl * dx / max_char_speed(state, p_), dx);
}

void RelaxedStepper::transport_rhs(const State& s, double t, Rates& out) {
  const std::size_t n = grid_.n();
  const double dx = grid_.dx();

  stencil::ddx(s.u, dx, out.v);

  for (std::size_t i = 0; i < n; ++i) work_[i] = s.S[i] - pressure(s.v[i], p_);
  stencil::ddx(work_, dx, out.u);
  out.u.front() = 0.0;
  out.u.back() = 0.0;

  if (p_.epsilon() > 0.0) {
    stencil::ddx_upwind(s.S, wind_, dx, work2_);
    for (std::size_t i = 0; i < n; ++i) out.S[i] = -wind_[i] * work2_[i];
  } else {
    std::fill(out.S.begin(), out.S.end(), 0.0);
  }

  if (cfg_.forcing && cfg_.forcing->add) {
    cfg_.forcing->add(t, grid_.coords(), out.v, out.u, out.S);
    out.u.front() = 0.0;
    out.u.back() = 0.0;
  }
}

void RelaxedStepper::relax(State& s, double dt) {
  stencil::ddx(s.u, grid_.dx(), work_);
  for (std::size_t i = 0; i < grid_.n(); ++i) {
    s.S[i] = relax_exact_update(s.S[i], work_[i], s.v[i], dt, p_);
  }
}

void RelaxedStepper::advance(State& state, double dt) {
  require_shape(state, grid_);
  check_admissible(state, cfg_.v_floor);
  const std::size_t n = grid_.n();
  const double t0 = state.t;

  // Work on a copy so the caller keeps the last good state on abort.
  State s = state;
  relax(s, 0.5 * dt);

  // SSP-RK3 (Shu-Osher) on the transport operator.
  transport_rhs(s, t0, rates_);
  for (std::size_t i = 0; i < n; ++i) {
    stage1_.v[i] = s.v[i] + dt * rates_.v[i];
    stage1_.u[i] = s.u[i] + dt * rates_.u[i];
    stage1_.S[i] = s.S[i] + dt * rates_.S[i];
  }
  check_admissible(stage1_, cfg_.v_floor);

  transport_rhs(stage1_, t0 + dt, rates_);
  for (std::size_t i = 0; i < n; ++i) {
    stage2_.v[i] = 0.75 * s.v[i] + 0.25 * (stage1_.v[i] + dt * rates_.v[i]);
    stage2_.u[i] = 0.75 * s.u[i] + 0.25 * (stage1_.u[i] + dt * rates_.u[i]);
    stage2_.S[i] = 0.75 * s.S[i] + 0.25 * (stage1_.S[i] + dt * rates_.S[i]);
  }
  check_admissible(stage2_, cfg_.v_floor);

  transport_rhs(stage2_, t0 + 0.5 * dt, rates_);
  // (a + 2b) / 3 rather than a / 3 + 2b / 3: the rounded coefficients sum to
  // 1 - 5.6e-17, which would bleed mass at every step
  for (std::size_t i = 0; i < n; ++i) {
    s.v[i] = (s.v[i] + 2.0 * (stage2_.v[i] + dt * rates_.v[i])) / 3.0;
    s.u[i] = (s.u[i] + 2.0 * (stage2_.u[i] + dt * rates_.u[i])) / 3.0;
    s.S[i] = (s.S[i] + 2.0 * (stage2_.S[i] + dt * rates_.S[i])) / 3.0;
  }
  check_admissible(s, cfg_.v_floor);

  relax(s, 0.5 * dt);

  s.u.front() = 0.0;
  s.u.back() = 0.0;
  s.t = t0 + dt;
  check_admissible(s, cfg_.v_floor);
  state = std::move(s);
}

Rates rhs_relaxed(const State& state, const FluidParams& p, const Grid1D& grid,
                  const Forcing* forcing, double v_floor) {
  require_tau(p);
  require_shape(state, grid);
  check_admissible(state, v_floor);
  const std::size_t n = grid.n();
  const double dx = grid.dx();

  Rates r;
  resize(r, n);
  std::vector<double> work(n);

  stencil::ddx(state.u, dx, r.v);

  for (std::size_t i = 0; i < n; ++i) work[i] = state.S[i] - pressure(state.v[i], p);
  stencil::ddx(work, dx, r.u);
  r.u.front() = 0.0;
  r.u.back() = 0.0;

  std::vector<double> wind(n);
  for (std::size_t i = 0; i < n; ++i) wind[i] = p.epsilon() * boundary_weight(grid.x(i));
  stencil::ddx_upwind(state.S, wind, dx, work);
  for (std::size_t i = 0; i < n; ++i) {
    r.S[i] = (p.mu() * r.v[i] - state.v[i] * state.S[i]) / p.tau() - wind[i] * work[i];
  }

  if (forcing && forcing->add) {
    forcing->add(state.t, grid.coords(), r.v, r.u, r.S);
    r.u.front() = 0.0;
    r.u.back() = 0.0;
  }
  return r;
}

double stable_dt(const State& state, const FluidParams& p, const Grid1D& grid,
                 const SchemeConfig& cfg) {
  require_tau(p);
  const double dx = grid.dx();
  return std::min(cfg.cfl * dx / max_char_speed(state, p), dx);
}

State step(const State& state, double dt, const FluidParams& p, const Grid1D& grid,
           const SchemeConfig& cfg) {
  RelaxedStepper stepper(p, grid, cfg);
  State next = state;
  stepper.advance(next, dt);
  return next;
}

namespace {

struct RelaxedOps {
  RelaxedStepper& stepper;

  double dt(const State& s) const { return stepper.stable_dt(s); }
  void advance(State& s, double dt) { stepper.advance(s, dt); }
  State snapshot(const State& s) const { return s; }
  EnergySnapshot energy(const State& s) const {
    return energy_snapshot(s, stepper.params(), stepper.grid());
  }
};

} // namespace

RunArtifact run(const State& init, double t_end, const FluidParams& p, const Grid1D& grid,
                const SchemeConfig& cfg) {
  require_shape(init, grid);
  RelaxedStepper stepper(p, grid, cfg);
  RelaxedOps ops{stepper};
  const std::span<const double> xs = grid.coords();
  return detail::drive(init, t_end, stepper.config(), std::vector<double>(xs.begin(), xs.end()),
                       ops);
}

} // namespace relaxns
