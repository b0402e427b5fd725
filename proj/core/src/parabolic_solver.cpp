#include "relaxns/parabolic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxns/errors.hpp"
#include "relaxns/stencil.hpp"
#include "run_loop.hpp"

namespace relaxns {

namespace {

void require_shape(const ParabolicState& s, const Grid1D& grid) {
  if (s.v.size() != grid.n() || s.u.size() != grid.n()) {
    throw MisuseError("state size does not match grid");
  }
}

void resize(ParabolicState& s, std::size_t n) {
  s.v.resize(n);
  s.u.resize(n);
}

// u_t = delta(mu u_x / v)/dx - D p(v) at interior nodes, 0 at the ends.
void momentum_rate(const ParabolicState& s, const FluidParams& p, double dx,
                   std::vector<double>& pres, std::vector<double>& out) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) pres[i] = pressure(s.v[i], p);
  const double mu_dx2 = p.mu() / (dx * dx);
  const double inv2 = 0.5 / dx;
  // flux at i-1/2, carried along the sweep
  double flux_left = mu_dx2 * (s.u[1] - s.u[0]) * 2.0 / (s.v[0] + s.v[1]);
  out[0] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double flux_right = mu_dx2 * (s.u[i + 1] - s.u[i]) * 2.0 / (s.v[i] + s.v[i + 1]);
    out[i] = (flux_right - flux_left) - (pres[i + 1] - pres[i - 1]) * inv2;
    flux_left = flux_right;
  }
  out[n - 1] = 0.0;
}

} // namespace

ParabolicState ParabolicState::equilibrium(const Grid1D& grid, double t) {
  ParabolicState s;
  s.t = t;
  s.v.assign(grid.n(), 1.0);
  s.u.assign(grid.n(), 0.0);
  return s;
}

ParabolicState ParabolicState::from(const State& s) {
  ParabolicState out;
  out.t = s.t;
  out.v = s.v;
  out.u = s.u;
  return out;
}

void check_admissible(const ParabolicState& state, double v_floor) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!std::isfinite(state.v[i]) || !std::isfinite(state.u[i])) {
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

ParabolicRates rhs_parabolic(const ParabolicState& state, const FluidParams& p,
                             const Grid1D& grid, const Forcing* forcing, double v_floor) {
  require_shape(state, grid);
  check_admissible(state, v_floor);
  const std::size_t n = grid.n();
  ParabolicRates r;
  r.v = stencil::ddx(state.u, grid.dx());
  r.u.resize(n);
  std::vector<double> pres(n);
  momentum_rate(state, p, grid.dx(), pres, r.u);
  if (forcing && forcing->add) {
    forcing->add(state.t, grid.coords(), r.v, r.u, {});
    r.u.front() = 0.0;
    r.u.back() = 0.0;
  }
  return r;
}

std::vector<double> effective_stress(const ParabolicState& state, const FluidParams& p,
                                     const Grid1D& grid) {
  require_shape(state, grid);
  std::vector<double> s = stencil::ddx(state.u, grid.dx());
  for (std::size_t i = 0; i < grid.n(); ++i) s[i] = p.mu() * s[i] / state.v[i];
  return s;
}

double stable_dt_parabolic(const ParabolicState& state, const FluidParams& p,
                           const Grid1D& grid, const SchemeConfig& cfg) {
  require_shape(state, grid);
  const double v_min = *std::min_element(state.v.begin(), state.v.end());
  const double dx = grid.dx();
  const double acoustic = cfg.cfl * dx / std::sqrt(-dpressure(v_min, p));
  const double diffusive = 0.4 * dx * dx * v_min / p.mu();
  return std::min(acoustic, diffusive);
}

ParabolicStepper::ParabolicStepper(FluidParams p, Grid1D grid, SchemeConfig cfg)
    : p_(p), grid_(std::move(grid)), cfg_(std::move(cfg)) {
  cfg_.validate();
  const std::size_t n = grid_.n();
  work_.resize(n);
  resize(stage1_, n);
  resize(stage2_, n);
  rates_.v.resize(n);
  rates_.u.resize(n);
}

double ParabolicStepper::stable_dt(const ParabolicState& state) const {
  return stable_dt_parabolic(state, p_, grid_, cfg_);
}

void ParabolicStepper::rhs(const ParabolicState& s, double t, ParabolicRates& out) {
  stencil::ddx(s.u, grid_.dx(), out.v);
  momentum_rate(s, p_, grid_.dx(), work_, out.u);
  if (cfg_.forcing && cfg_.forcing->add) {
    cfg_.forcing->add(t, grid_.coords(), out.v, out.u, {});
    out.u.front() = 0.0;
    out.u.back() = 0.0;
  }
}

void ParabolicStepper::advance(ParabolicState& state, double dt) {
  require_shape(state, grid_);
  check_admissible(state, cfg_.v_floor);
  const std::size_t n = grid_.n();
  const double t0 = state.t;
  ParabolicState s = state;

  rhs(s, t0, rates_);
  for (std::size_t i = 0; i < n; ++i) {
    stage1_.v[i] = s.v[i] + dt * rates_.v[i];
    stage1_.u[i] = s.u[i] + dt * rates_.u[i];
  }
  check_admissible(stage1_, cfg_.v_floor);

  rhs(stage1_, t0 + dt, rates_);
  for (std::size_t i = 0; i < n; ++i) {
    stage2_.v[i] = 0.75 * s.v[i] + 0.25 * (stage1_.v[i] + dt * rates_.v[i]);
    stage2_.u[i] = 0.75 * s.u[i] + 0.25 * (stage1_.u[i] + dt * rates_.u[i]);
  }
  check_admissible(stage2_, cfg_.v_floor);

  rhs(stage2_, t0 + 0.5 * dt, rates_);
  // (a + 2b) / 3 rather than a / 3 + 2b / 3: the rounded coefficients sum to
  // 1 - 5.6e-17, which would bleed mass at every step
  for (std::size_t i = 0; i < n; ++i) {
    s.v[i] = (s.v[i] + 2.0 * (stage2_.v[i] + dt * rates_.v[i])) / 3.0;
    s.u[i] = (s.u[i] + 2.0 * (stage2_.u[i] + dt * rates_.u[i])) / 3.0;
  }
  s.u.front() = 0.0;
  s.u.back() = 0.0;
  s.t = t0 + dt;
  check_admissible(s, cfg_.v_floor);
  state = std::move(s);
}

ParabolicState step_parabolic(const ParabolicState& state, double dt, const FluidParams& p,
                              const Grid1D& grid, const SchemeConfig& cfg) {
  ParabolicStepper stepper(p, grid, cfg);
  ParabolicState next = state;
  stepper.advance(next, dt);
  return next;
}

EnergySnapshot energy_snapshot_parabolic(const ParabolicState& state, const FluidParams& p,
                                         const Grid1D& grid) {
  const std::size_t n = grid.n();
  const double dx = grid.dx();
  const double mu = p.mu();

  auto l2sq = [&](std::span<const double> f) { return discrete_norm_squared(f, grid, 0); };

  EnergySnapshot e;
  e.t = state.t;

  const std::vector<double> ux = stencil::ddx(state.u, dx);
  std::vector<double> density(n);
  std::vector<double> diss(n);
  for (std::size_t i = 0; i < n; ++i) {
    density[i] = potential_energy_density(state.v[i], p) + 0.5 * state.u[i] * state.u[i];
    diss[i] = mu * ux[i] * ux[i] / state.v[i];
  }
  e.e_phys = stencil::trapezoid(density, dx);
  e.diss_rate = stencil::trapezoid(diss, dx);

  const ParabolicRates first = rhs_parabolic(state, p, grid);
  const std::vector<double>& v_t = first.v;
  const std::vector<double>& u_t = first.u;
  const std::vector<double> v_tt = stencil::ddx(u_t, dx);

  // u_tt by differentiating the discrete momentum rate along the flow.
  std::vector<double> u_tt(n, 0.0);
  {
    std::vector<double> p_t(n);
    for (std::size_t i = 0; i < n; ++i) p_t[i] = dpressure(state.v[i], p) * v_t[i];
    auto flux_t = [&](std::size_t i) {
      const double vm = 0.5 * (state.v[i] + state.v[i + 1]);
      const double vm_t = 0.5 * (v_t[i] + v_t[i + 1]);
      const double du = (state.u[i + 1] - state.u[i]) / dx;
      const double du_t = (u_t[i + 1] - u_t[i]) / dx;
      return mu * (du_t / vm - du * vm_t / (vm * vm));
    };
    for (std::size_t i = 1; i + 1 < n; ++i) {
      u_tt[i] = (flux_t(i) - flux_t(i - 1)) / dx - (p_t[i + 1] - p_t[i - 1]) / (2.0 * dx);
    }
  }

  std::vector<double> S0(n), S0_t(n);
  const std::vector<double> ux_t = stencil::ddx(u_t, dx);
  for (std::size_t i = 0; i < n; ++i) {
    S0[i] = mu * ux[i] / state.v[i];
    S0_t[i] = mu * (ux_t[i] / state.v[i] - ux[i] * v_t[i] / (state.v[i] * state.v[i]));
  }

  std::vector<double> w(state.v);
  for (double& x : w) x -= 1.0;

  const double vt_H1 = discrete_norm_squared(v_t, grid, 1);
  const double ut_H1 = discrete_norm_squared(u_t, grid, 1);
  e.E_H2 = discrete_norm_squared(w, grid, 2) + discrete_norm_squared(state.u, grid, 2);
  e.E_dtH1 = vt_H1 + ut_H1;
  e.E_dt2L2 = 0.0;
  const double vx_H1 = discrete_norm_squared(stencil::ddx_second_order(state.v, dx), grid, 1);
  const double ux_H1 = discrete_norm_squared(stencil::ddx_second_order(state.u, dx), grid, 1);
  e.D_value = vt_H1 + ut_H1 + vx_H1 + ux_H1 + l2sq(v_tt) + l2sq(u_tt) +
              discrete_norm_squared(S0, grid, 2) + discrete_norm_squared(S0_t, grid, 1);
  e.relax_residual = 0.0;
  const auto [lo, hi] = std::minmax_element(state.v.begin(), state.v.end());
  e.v_min = *lo;
  e.v_max = *hi;
  return e;
}

namespace {

struct ParabolicOps {
  ParabolicStepper& stepper;

  double dt(const ParabolicState& s) const { return stepper.stable_dt(s); }
  void advance(ParabolicState& s, double dt) { stepper.advance(s, dt); }
  State snapshot(const ParabolicState& s) const {
    State out;
    out.t = s.t;
    out.v = s.v;
    out.u = s.u;
    out.S = effective_stress(s, stepper.params(), stepper.grid());
    return out;
  }
  EnergySnapshot energy(const ParabolicState& s) const {
    return energy_snapshot_parabolic(s, stepper.params(), stepper.grid());
  }
};

} // namespace

RunArtifact run_parabolic(const ParabolicState& init, double t_end, const FluidParams& p,
                          const Grid1D& grid, const SchemeConfig& cfg) {
  require_shape(init, grid);
  ParabolicStepper stepper(p, grid, cfg);
  ParabolicOps ops{stepper};
  const std::span<const double> xs = grid.coords();
  return detail::drive(init, t_end, stepper.config(), std::vector<double>(xs.begin(), xs.end()),
                       ops);
}

} // namespace relaxns
