#pragma once

// Pointwise-in-time energy functionals of a single state.

#include <span>
#include <vector>

#include "relaxns/model.hpp"

namespace relaxns {

struct EnergySnapshot {
  double t = 0.0;
  // integral of a(v-1) - h(v) + u^2/2 + tau S^2/(2 mu)
  double e_phys = 0.0;
  // (1/mu) integral of v S^2; for the parabolic model integral of mu (u_x)^2 / v
  double diss_rate = 0.0;
  // ||(v-1, u, sqrt(tau) S)||_{H^2}^2
  double E_H2 = 0.0;
  // ||d/dt (v, u, sqrt(tau) S)||_{H^1}^2
  double E_dtH1 = 0.0;
  // tau^2 ||d2/dt2 (v, u, sqrt(tau) S)||_{L^2}^2
  double E_dt2L2 = 0.0;
  // sum_{1<=|alpha|<=2} ||D^alpha (v,u)||^2 + sum_k ||d^k S/dt^k||_{H^{2-k}}^2
  //   + tau^2 ||S_tt||^2,  D = (d/dt, d/dx)
  double D_value = 0.0;
  // ||S - mu u_x / v||_{L^2}
  double relax_residual = 0.0;
  // integral of S^2 (not part of the CSV schema)
  double stress_L2sq = 0.0;
  double v_min = 1.0;
  double v_max = 1.0;

  double E_total() const { return E_H2 + E_dtH1 + E_dt2L2; }
};

// Sobolev-type norm: order 0 is L^2 (trapezoid), order 1 adds ||f_x||^2,
// order 2 adds ||f_xx||^2; returns the square root of the sum.
double discrete_norm(std::span<const double> field, const Grid1D& grid, int order);
double discrete_norm_squared(std::span<const double> field, const Grid1D& grid, int order);

struct TimeDerivatives {
  // first and second time derivatives of (v, u, S), obtained by substituting
  // the semi-discrete equations (no trajectory differencing)
  std::vector<double> v_t, u_t, S_t;
  std::vector<double> v_tt, u_tt, S_tt;
};

TimeDerivatives time_derivative_fields(const State& state, const FluidParams& p,
                                       const Grid1D& grid);

double physical_energy(const State& state, const FluidParams& p, const Grid1D& grid);

// ||S - mu D u / v||_{L^2} with the solver's derivative operator.
double relaxation_residual(const State& state, const FluidParams& p, const Grid1D& grid);

EnergySnapshot energy_snapshot(const State& state, const FluidParams& p, const Grid1D& grid);

} // namespace relaxns
