#include "relaxns/stencil.hpp"

#include <cassert>

namespace relaxns::stencil {

void ddx(std::span<const double> f, double dx, std::span<double> out) {
  const std::size_t n = f.size();
  assert(out.size() == n && n >= 3);
  const double inv2 = 0.5 / dx;
  out[0] = (f[1] - f[0]) / dx;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
  out[n - 1] = (f[n - 1] - f[n - 2]) / dx;
}

std::vector<double> ddx(std::span<const double> f, double dx) {
  std::vector<double> out(f.size());
  ddx(f, dx, out);
  return out;
}

void ddx_upwind(std::span<const double> f, std::span<const double> wind, double dx,
                std::span<double> out) {
  const std::size_t n = f.size();
  assert(wind.size() == n && out.size() == n && n >= 3);
  const double inv2 = 0.5 / dx;
  for (std::size_t i = 0; i < n; ++i) {
    if (wind[i] > 0.0) {
      assert(i >= 2);
      out[i] = (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) * inv2;
    } else if (wind[i] < 0.0) {
      assert(i + 2 < n);
      out[i] = (-3.0 * f[i] + 4.0 * f[i + 1] - f[i + 2]) * inv2;
    } else {
      out[i] = 0.0;
    }
  }
}

std::vector<double> ddx_second_order(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  assert(n >= 3);
  std::vector<double> out(n);
  const double inv2 = 0.5 / dx;
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
  return out;
}

std::vector<double> d2dx2(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  assert(n >= 4);
  std::vector<double> out(n);
  const double inv = 1.0 / (dx * dx);
  out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
  out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
  return out;
}

double trapezoid(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n == 0) return 0.0;
  double sum = 0.5 * (f[0] + f[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += f[i];
  return sum * dx;
}

} // namespace relaxns::stencil
