#include "relaxns/manufactured.hpp"

#include <cassert>
#include <cmath>
#include <vector>
#include <numbers>

namespace relaxns {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double A = ManufacturedSolution::kAmplitudeV;
constexpr double B = ManufacturedSolution::kAmplitudeS;

struct Fields {
  double v, v_t, v_x;
  double u_t, u_x;
  double q, q_t, q_x;
  double S, S_t, S_x;
};

// c = cos(pi x), s = sin(pi x), ct = cos t, st = sin t.
Fields evaluate(const FluidParams& p, double c, double s, double ct, double st) {
  const double mu = p.mu(), tau = p.tau();

  Fields f{};
  f.v = 1.0 + A * c * ct;
  f.v_t = -A * c * st;
  f.v_x = -A * pi * s * ct;
  f.u_t = A * s * ct;
  f.u_x = A * pi * c * st;
  const double u_xx = -A * pi * pi * s * st;
  const double u_xt = A * pi * c * ct;
  const double v2 = f.v * f.v;
  f.q = mu * f.u_x / f.v;
  f.q_x = mu * (u_xx * f.v - f.u_x * f.v_x) / v2;
  f.q_t = mu * (u_xt * f.v - f.u_x * f.v_t) / v2;
  f.S = f.q + B * tau * s * ct;
  f.S_t = f.q_t - B * tau * s * st;
  f.S_x = f.q_x + B * tau * pi * c * ct;
  return f;
}

Fields evaluate(const FluidParams& p, double t, double x) {
  return evaluate(p, std::cos(pi * x), std::sin(pi * x), std::cos(t), std::sin(t));
}

struct Table {
  std::vector<double> c, s, b;
};

Table tabulate(const Grid1D& grid) {
  Table tab;
  for (double x : grid.coords()) {
    tab.c.push_back(std::cos(pi * x));
    tab.s.push_back(std::sin(pi * x));
    tab.b.push_back(boundary_weight(x));
  }
  return tab;
}

} // namespace

double ManufacturedSolution::v(double t, double x) const {
  return 1.0 + A * std::cos(pi * x) * std::cos(t);
}

double ManufacturedSolution::u(double t, double x) const {
  return A * std::sin(pi * x) * std::sin(t);
}

double ManufacturedSolution::q(double t, double x) const { return evaluate(p_, t, x).q; }

double ManufacturedSolution::S(double t, double x) const { return evaluate(p_, t, x).S; }

State ManufacturedSolution::exact(const Grid1D& grid, double t) const {
  State s = State::equilibrium(grid, t);
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double x = grid.x(i);
    s.v[i] = v(t, x);
    s.u[i] = u(t, x);
    s.S[i] = S(t, x);
  }
  s.u.front() = 0.0;
  s.u.back() = 0.0;
  return s;
}

ParabolicState ManufacturedSolution::exact_parabolic(const Grid1D& grid, double t) const {
  return ParabolicState::from(exact(grid, t));
}

Forcing ManufacturedSolution::relaxed_forcing(const Grid1D& grid) const {
  const FluidParams p = p_;
  Forcing f;
  f.add = [p, tab = tabulate(grid)](double t, std::span<const double> x, std::span<double> v_t,
                                    std::span<double> u_t, std::span<double> S_t) {
    assert(x.size() == tab.c.size());
    const double ct = std::cos(t), st = std::sin(t);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Fields m = evaluate(p, tab.c[i], tab.s[i], ct, st);
      v_t[i] += m.v_t - m.u_x;
      u_t[i] += m.u_t + dpressure(m.v, p) * m.v_x - m.S_x;
      S_t[i] += m.S_t + p.epsilon() * tab.b[i] * m.S_x + B * m.v * tab.s[i] * ct;
    }
  };
  return f;
}

Forcing ManufacturedSolution::parabolic_forcing(const Grid1D& grid) const {
  const FluidParams p = p_;
  Forcing f;
  f.add = [p, tab = tabulate(grid)](double t, std::span<const double> x, std::span<double> v_t,
                                    std::span<double> u_t, std::span<double>) {
    assert(x.size() == tab.c.size());
    const double ct = std::cos(t), st = std::sin(t);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Fields m = evaluate(p, tab.c[i], tab.s[i], ct, st);
      v_t[i] += m.v_t - m.u_x;
      u_t[i] += m.u_t + dpressure(m.v, p) * m.v_x - m.q_x;
    }
  };
  return f;
}

} // namespace relaxns
