#pragma once

// Constitutive closures and characteristic structure of the one-dimensional
// relaxed isentropic Navier-Stokes system in Lagrangian mass coordinates:
//
//   v_t = u_x
//   u_t + p(v)_x = S_x
//   tau (S_t + eps b(x) S_x) + v S = mu u_x,      b(x) = 2x - 1
//
// on [0, 1] with u = 0 at both ends.  eps = 0 is the original system; the
// Eulerian density is rho = 1 / v.

#include <cstddef>
#include <span>
#include <vector>

namespace relaxns {

class FluidParams {
public:
  static constexpr double kMaxEpsilon = 0.25;

  // Throws ConfigError unless a > 0, gamma > 1, mu > 0, tau >= 0 and
  // 0 <= epsilon <= 1/4.
  FluidParams(double a, double gamma, double mu, double tau, double epsilon = 0.0);

  double a() const { return a_; }
  double gamma() const { return gamma_; }
  double mu() const { return mu_; }
  double tau() const { return tau_; }
  double epsilon() const { return epsilon_; }

  FluidParams with_tau(double tau) const;
  FluidParams with_epsilon(double epsilon) const;

  friend bool operator==(const FluidParams&, const FluidParams&) = default;

private:
  double a_;
  double gamma_;
  double mu_;
  double tau_;
  double epsilon_;
};

// Uniform mesh on [0, 1] including both end nodes.
class Grid1D {
public:
  static constexpr std::size_t kMinNodes = 8;

  explicit Grid1D(std::size_t n);

  std::size_t n() const { return x_.size(); }
  double dx() const { return dx_; }
  double x(std::size_t i) const { return x_[i]; }
  std::span<const double> coords() const { return x_; }

  friend bool operator==(const Grid1D& l, const Grid1D& r) { return l.n() == r.n(); }

private:
  double dx_;
  std::vector<double> x_;
};

struct State {
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> S;

  std::size_t size() const { return v.size(); }
  static State equilibrium(const Grid1D& grid, double t = 0.0);
};

double pressure(double v, const FluidParams& p);
double dpressure(double v, const FluidParams& p);

// h(v) = a (v^(1-gamma) - 1) / (1 - gamma), so that h' = p and h(1) = 0.
double enthalpy(double v, const FluidParams& p);

// Integrand of the potential part of the physical energy,
// a (v - 1) - h(v) >= 0 with equality only at v = 1.
double potential_energy_density(double v, const FluidParams& p);

inline double boundary_weight(double x) { return 2.0 * x - 1.0; }

// Exact solution over dt of tau S' + v S = mu ux with v and ux frozen.
double relax_exact_update(double S, double ux, double v, double dt, const FluidParams& p);

// Local characteristic speed sqrt(mu/tau - p'(v)) of the quasilinear form.
double char_speed(double v, const FluidParams& p);

// max_i char_speed(v_i) + eps, an upper bound on every wave speed of the
// eps-regularised system since |b| <= 1.
double max_char_speed(std::span<const double> v, const FluidParams& p);
double max_char_speed(const State& state, const FluidParams& p);

bool all_finite(const State& state);

} // namespace relaxns
