#include "relaxns/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxns/errors.hpp"

namespace relaxns {

namespace {

void require_positive_volume(double v, const char* what) {
  if (!(v > 0.0)) {
    throw DomainError(std::string(what) + ": specific volume must be positive, got " +
                      std::to_string(v));
  }
}

void require_relaxation_time(const FluidParams& p, const char* what) {
  if (!(p.tau() > 0.0)) {
    throw MisuseError(std::string(what) +
                      ": requires tau > 0; use the parabolic solver for tau = 0");
  }
}

} // namespace

FluidParams::FluidParams(double a, double gamma, double mu, double tau, double epsilon)
    : a_(a), gamma_(gamma), mu_(mu), tau_(tau), epsilon_(epsilon) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("pressure coefficient a must be > 0");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be > 1");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("viscosity mu must be > 0");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw ConfigError("relaxation time tau must be >= 0");
  if (!(epsilon >= 0.0) || epsilon > kMaxEpsilon) {
    throw ConfigError("epsilon must lie in [0, 1/4]");
  }
}

FluidParams FluidParams::with_tau(double tau) const {
  return FluidParams(a_, gamma_, mu_, tau, epsilon_);
}

FluidParams FluidParams::with_epsilon(double epsilon) const {
  return FluidParams(a_, gamma_, mu_, tau_, epsilon);
}

Grid1D::Grid1D(std::size_t n) {
  if (n < kMinNodes) {
    throw ConfigError("grid needs at least " + std::to_string(kMinNodes) + " nodes");
  }
  dx_ = 1.0 / static_cast<double>(n - 1);
  x_.resize(n);
  for (std::size_t i = 0; i < n; ++i) x_[i] = static_cast<double>(i) * dx_;
  x_.back() = 1.0;
}

State State::equilibrium(const Grid1D& grid, double t) {
  State s;
  s.t = t;
  s.v.assign(grid.n(), 1.0);
  s.u.assign(grid.n(), 0.0);
  s.S.assign(grid.n(), 0.0);
  return s;
}

namespace {

// v^(-k); integral exponents avoid pow, which dominates the solver cost.
double inverse_power(double v, double k) {
  if (k == 2.0) return 1.0 / (v * v);
  if (k == 3.0) return 1.0 / (v * v * v);
  return std::pow(v, -k);
}

} // namespace

double pressure(double v, const FluidParams& p) {
  require_positive_volume(v, "pressure");
  return p.a() * inverse_power(v, p.gamma());
}

double dpressure(double v, const FluidParams& p) {
  require_positive_volume(v, "dpressure");
  return -p.a() * p.gamma() * inverse_power(v, p.gamma() + 1.0);
}

double enthalpy(double v, const FluidParams& p) {
  require_positive_volume(v, "enthalpy");
  const double k = 1.0 - p.gamma();
  return p.a() * (std::pow(v, k) - 1.0) / k;
}

double potential_energy_density(double v, const FluidParams& p) {
  return p.a() * (v - 1.0) - enthalpy(v, p);
}

double relax_exact_update(double S, double ux, double v, double dt, const FluidParams& p) {
  require_relaxation_time(p, "relax_exact_update");
  require_positive_volume(v, "relax_exact_update");
  const double target = p.mu() * ux / v;
  return target + (S - target) * std::exp(-v * dt / p.tau());
}

double char_speed(double v, const FluidParams& p) {
  require_relaxation_time(p, "char_speed");
  return std::sqrt(p.mu() / p.tau() - dpressure(v, p));
}

double max_char_speed(std::span<const double> v, const FluidParams& p) {
  require_relaxation_time(p, "max_char_speed");
  double c = 0.0;
  for (double vi : v) c = std::max(c, char_speed(vi, p));
  return c + p.epsilon();
}

double max_char_speed(const State& state, const FluidParams& p) {
  return max_char_speed(std::span<const double>(state.v), p);
}

bool all_finite(const State& state) {
  auto finite = [](const std::vector<double>& f) {
    return std::all_of(f.begin(), f.end(), [](double x) { return std::isfinite(x); });
  };
  return std::isfinite(state.t) && finite(state.v) && finite(state.u) && finite(state.S);
}

} // namespace relaxns
