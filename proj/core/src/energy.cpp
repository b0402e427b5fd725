#include "relaxns/energy.hpp"

#include <algorithm>
#include <cmath>

#include "relaxns/errors.hpp"
#include "relaxns/relaxed_solver.hpp"
#include "relaxns/stencil.hpp"

namespace relaxns {

namespace {

double l2_squared(std::span<const double> f, double dx) {
  std::vector<double> sq(f.size());
  std::transform(f.begin(), f.end(), sq.begin(), [](double x) { return x * x; });
  return stencil::trapezoid(sq, dx);
}

std::vector<double> minus_one(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x -= 1.0;
  return out;
}

} // namespace

double discrete_norm_squared(std::span<const double> field, const Grid1D& grid, int order) {
  if (order < 0 || order > 2) throw MisuseError("discrete_norm: order must be 0, 1 or 2");
  if (field.size() != grid.n()) throw MisuseError("discrete_norm: field size does not match grid");
  const double dx = grid.dx();
  double sum = l2_squared(field, dx);
  if (order >= 1) sum += l2_squared(stencil::ddx_second_order(field, dx), dx);
  if (order >= 2) sum += l2_squared(stencil::d2dx2(field, dx), dx);
  return sum;
}

double discrete_norm(std::span<const double> field, const Grid1D& grid, int order) {
  return std::sqrt(discrete_norm_squared(field, grid, order));
}

TimeDerivatives time_derivative_fields(const State& state, const FluidParams& p,
                                       const Grid1D& grid) {
  Rates first = rhs_relaxed(state, p, grid);
  const std::size_t n = grid.n();
  const double dx = grid.dx();

  TimeDerivatives d;
  d.v_tt = stencil::ddx(first.u, dx);

  std::vector<double> work(n);
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = first.S[i] - dpressure(state.v[i], p) * first.v[i];
  }
  d.u_tt = stencil::ddx(work, dx);
  d.u_tt.front() = 0.0;
  d.u_tt.back() = 0.0;

  std::vector<double> wind(n);
  for (std::size_t i = 0; i < n; ++i) wind[i] = p.epsilon() * boundary_weight(grid.x(i));
  stencil::ddx_upwind(first.S, wind, dx, work);
  d.S_tt.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.S_tt[i] = (p.mu() * d.v_tt[i] - first.v[i] * state.S[i] - state.v[i] * first.S[i]) / p.tau() -
                wind[i] * work[i];
  }

  d.v_t = std::move(first.v);
  d.u_t = std::move(first.u);
  d.S_t = std::move(first.S);
  return d;
}

double physical_energy(const State& state, const FluidParams& p, const Grid1D& grid) {
  const double k = p.tau() / (2.0 * p.mu());
  std::vector<double> density(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    density[i] = potential_energy_density(state.v[i], p) + 0.5 * state.u[i] * state.u[i] +
                 k * state.S[i] * state.S[i];
  }
  return stencil::trapezoid(density, grid.dx());
}

double relaxation_residual(const State& state, const FluidParams& p, const Grid1D& grid) {
  std::vector<double> r = stencil::ddx(state.u, grid.dx());
  for (std::size_t i = 0; i < grid.n(); ++i) r[i] = state.S[i] - p.mu() * r[i] / state.v[i];
  return std::sqrt(l2_squared(r, grid.dx()));
}

EnergySnapshot energy_snapshot(const State& state, const FluidParams& p, const Grid1D& grid) {
  const std::size_t n = grid.n();
  const double dx = grid.dx();
  const double tau = p.tau();

  EnergySnapshot e;
  e.t = state.t;
  e.e_phys = physical_energy(state, p, grid);

  std::vector<double> vs2(n);
  for (std::size_t i = 0; i < n; ++i) vs2[i] = state.v[i] * state.S[i] * state.S[i];
  e.diss_rate = stencil::trapezoid(vs2, dx) / p.mu();
  e.stress_L2sq = l2_squared(state.S, dx);

  const TimeDerivatives d = time_derivative_fields(state, p, grid);
  const std::vector<double> w = minus_one(state.v);

  const double S_H2 = discrete_norm_squared(state.S, grid, 2);
  const double St_H1 = discrete_norm_squared(d.S_t, grid, 1);
  const double Stt_L2 = l2_squared(d.S_tt, dx);
  const double vt_H1 = discrete_norm_squared(d.v_t, grid, 1);
  const double ut_H1 = discrete_norm_squared(d.u_t, grid, 1);

  e.E_H2 = discrete_norm_squared(w, grid, 2) + discrete_norm_squared(state.u, grid, 2) + tau * S_H2;
  e.E_dtH1 = vt_H1 + ut_H1 + tau * St_H1;
  e.E_dt2L2 = tau * tau * (l2_squared(d.v_tt, dx) + l2_squared(d.u_tt, dx) + tau * Stt_L2);

  // |alpha| = 1 and 2 derivatives of (v, u): the t-only and mixed ones come
  // from the substituted time derivatives, the x-only ones from the norm.
  const double vx_H1 = discrete_norm_squared(stencil::ddx_second_order(state.v, dx), grid, 1);
  const double ux_H1 = discrete_norm_squared(stencil::ddx_second_order(state.u, dx), grid, 1);
  e.D_value = vt_H1 + ut_H1 + vx_H1 + ux_H1 + l2_squared(d.v_tt, dx) + l2_squared(d.u_tt, dx) +
              S_H2 + St_H1 + tau * tau * Stt_L2;

  e.relax_residual = relaxation_residual(state, p, grid);
  const auto [lo, hi] = std::minmax_element(state.v.begin(), state.v.end());
  e.v_min = *lo;
  e.v_max = *hi;
  return e;
}

} // namespace relaxns
