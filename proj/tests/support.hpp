#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relaxns/model.hpp"
#include "relaxns/stencil.hpp"

namespace testing_support {

// v even, u odd, S even about x = 1/2, with S well prepared.
inline relaxns::State mirror_symmetric_state(const relaxns::Grid1D& g,
                                             const relaxns::FluidParams& p, double delta) {
  using std::numbers::pi;
  relaxns::State s = relaxns::State::equilibrium(g);
  const std::size_t n = g.n();
  for (std::size_t i = 0; i < n; ++i) {
    // evaluate on the left half and mirror, so the data are symmetric bit for bit
    const std::size_t j = std::min(i, n - 1 - i);
    const double x = g.x(j);
    const double sign = i == j ? 1.0 : -1.0;
    s.v[i] = 1.0 + delta * std::cos(2.0 * pi * x);
    s.u[i] = sign * delta * std::sin(2.0 * pi * x);
  }
  if (n % 2 == 1) s.u[n / 2] = 0.0;
  s.u.front() = s.u.back() = 0.0;
  const std::vector<double> ux = relaxns::stencil::ddx(s.u, g.dx());
  for (std::size_t i = 0; i < n; ++i) s.S[i] = p.mu() * ux[i] / s.v[i];
  for (std::size_t i = n / 2 + 1; i < n; ++i) s.S[i] = s.S[n - 1 - i];
  return s;
}

// max over nodes of |v_i - v_j|, |u_i + u_j|, |S_i - S_j| with j = n-1-i.
inline double symmetry_defect(const relaxns::State& s) {
  const std::size_t n = s.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    d = std::max({d, std::abs(s.v[i] - s.v[j]), std::abs(s.u[i] + s.u[j]),
                  std::abs(s.S[i] - s.S[j])});
  }
  return d;
}

} // namespace testing_support
