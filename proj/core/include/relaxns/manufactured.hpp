#pragma once

// Manufactured solution used for convergence studies.  With c = cos(pi x),
// s = sin(pi x), A = 0.1, B = 0.05:
//
//   v* = 1 + A c cos t
//   u* = A s sin t
//   q  = mu u*_x / v*
//   S* = q + B tau s cos t
//
// u* vanishes at both ends for all t, and at t = 0 u* = 0 identically, so the
// boundary conditions and the first compatibility condition hold exactly.
// Sources are the residuals of the governing equations evaluated on the
// manufactured fields, written as additions to the time derivatives:
//
// relaxed (eps-regularised) system
//   g_v = v*_t - u*_x
//   g_u = u*_t + p'(v*) v*_x - S*_x
//   g_S = S*_t + eps b S*_x + (v* S* - mu u*_x) / tau
//       = S*_t + eps b S*_x + B v* s cos t
//
// parabolic system
//   g_v = v*_t - u*_x
//   g_u = u*_t + p'(v*) v*_x - q_x
//
// with
//   v*_t = -A c sin t,  v*_x = -A pi s cos t,
//   u*_t = A s cos t,   u*_x = A pi c sin t,  u*_xx = -A pi^2 s sin t,
//   u*_xt = A pi c cos t,
//   q_x = mu (u*_xx v* - u*_x v*_x) / v*^2,
//   q_t = mu (u*_xt v* - u*_x v*_t) / v*^2,
//   S*_t = q_t - B tau s sin t,  S*_x = q_x + B tau pi c cos t.

#include "relaxns/model.hpp"
#include "relaxns/parabolic_solver.hpp"
#include "relaxns/relaxed_solver.hpp"

namespace relaxns {

class ManufacturedSolution {
public:
  static constexpr double kAmplitudeV = 0.1;
  static constexpr double kAmplitudeS = 0.05;

  explicit ManufacturedSolution(FluidParams p) : p_(p) {}

  double v(double t, double x) const;
  double u(double t, double x) const;
  double S(double t, double x) const;
  // mu u*_x / v*, the parabolic limit stress
  double q(double t, double x) const;

  State exact(const Grid1D& grid, double t) const;
  ParabolicState exact_parabolic(const Grid1D& grid, double t) const;

  // Sources are tabulated in x for the given grid; the returned callback must
  // only be used with that grid.
  Forcing relaxed_forcing(const Grid1D& grid) const;
  Forcing parabolic_forcing(const Grid1D& grid) const;

private:
  FluidParams p_;
};

} // namespace relaxns
