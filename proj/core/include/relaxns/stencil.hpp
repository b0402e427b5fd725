#pragma once

// Finite-difference operators on the uniform node-centred grid.
//
// The solvers use the summation-by-parts first derivative: central in the
// interior and one-sided two-point at the end nodes.  Paired with the
// trapezoidal weights H = dx diag(1/2, 1, ..., 1, 1/2) it satisfies
//
//   f^T H (D g) + g^T H (D f) = f_{n-1} g_{n-1} - f_0 g_0,
//
// which makes the discrete mass and energy budgets telescope exactly.
// Diagnostics (Sobolev norms) use second-order one-sided closures instead.

#include <span>
#include <vector>

namespace relaxns::stencil {

// SBP first derivative (solver operator).
void ddx(std::span<const double> f, double dx, std::span<double> out);
std::vector<double> ddx(std::span<const double> f, double dx);

// Second-order upwind derivative for transport with velocity sign(wind[i]):
// backward three-point where wind > 0, forward where wind < 0, zero where the
// wind vanishes.  Requires outgoing wind at both ends (wind[0] <= 0,
// wind[n-1] >= 0) so no inflow data is needed.
void ddx_upwind(std::span<const double> f, std::span<const double> wind, double dx,
                std::span<double> out);

// Second-order first derivative with three-point one-sided end closures.
std::vector<double> ddx_second_order(std::span<const double> f, double dx);

// Second-order second derivative with four-point one-sided end closures.
std::vector<double> d2dx2(std::span<const double> f, double dx);

// Trapezoidal quadrature over [0, 1].
double trapezoid(std::span<const double> f, double dx);

} // namespace relaxns::stencil
