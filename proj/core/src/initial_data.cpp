#include "relaxns/initial_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "relaxns/energy.hpp"
#include "relaxns/errors.hpp"
#include "relaxns/stencil.hpp"

namespace relaxns {

namespace {

constexpr double pi = std::numbers::pi;

double parse_number(const std::string& cell, const std::string& path, std::size_t lineno) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
  }
  return value;
}

} // namespace

IcFamily parse_ic_family(std::string_view name) {
  if (name == "equilibrium") return IcFamily::equilibrium;
  if (name == "well-prepared-sine") return IcFamily::well_prepared_sine;
  if (name == "unprepared-sine") return IcFamily::unprepared_sine;
  if (name == "custom-table") return IcFamily::custom_table;
  throw ConfigError("unknown initial-data family '" + std::string(name) + "'");
}

const char* to_string(IcFamily family) {
  switch (family) {
    case IcFamily::equilibrium: return "equilibrium";
    case IcFamily::well_prepared_sine: return "well-prepared-sine";
    case IcFamily::unprepared_sine: return "unprepared-sine";
    case IcFamily::custom_table: return "custom-table";
  }
  return "equilibrium";
}

State read_initial_table(const std::string& path, const Grid1D& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open initial-data table '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "x,v,u,S") {
    throw ConfigError(path + ": expected header 'x,v,u,S'");
  }
  State s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(parse_number(cell, path, lineno));
    if (row.size() != 4) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 4 columns");
    }
    const std::size_t i = s.v.size();
    if (i >= grid.n() || std::abs(row[0] - grid.x(i)) > 1e-9) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": x does not match grid node");
    }
    s.v.push_back(row[1]);
    s.u.push_back(row[2]);
    s.S.push_back(row[3]);
  }
  if (s.v.size() != grid.n()) {
    throw ConfigError(path + ": expected " + std::to_string(grid.n()) + " rows, got " +
                      std::to_string(s.v.size()));
  }
  return s;
}

State make_initial_data(const IcSpec& spec, const Grid1D& grid, const FluidParams& p) {
  if (!(spec.delta >= 0.0)) throw ConfigError("initial-data amplitude delta must be >= 0");
  const std::size_t n = grid.n();
  switch (spec.family) {
    case IcFamily::equilibrium:
      return State::equilibrium(grid);
    case IcFamily::well_prepared_sine:
    case IcFamily::unprepared_sine: {
      State s = State::equilibrium(grid);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.x(i);
        s.v[i] = 1.0 + spec.delta * std::cos(pi * x);
        s.u[i] = spec.delta * std::sin(pi * x);
      }
      s.u.front() = 0.0;
      s.u.back() = 0.0;
      if (spec.family == IcFamily::well_prepared_sine) {
        const std::vector<double> ux = stencil::ddx(s.u, grid.dx());
        for (std::size_t i = 0; i < n; ++i) s.S[i] = p.mu() * ux[i] / s.v[i];
      }
      return s;
    }
    case IcFamily::custom_table:
      return read_initial_table(spec.path, grid);
  }
  throw ConfigError("unhandled initial-data family");
}

std::optional<AnalyticProfile> analytic_profile(const IcSpec& spec, const FluidParams& p) {
  const double d = spec.delta;
  const double mu = p.mu();
  AnalyticProfile prof;
  switch (spec.family) {
    case IcFamily::equilibrium:
      prof.v = [](double) { return 1.0; };
      prof.v_x = prof.u = prof.u_x = prof.S = prof.S_x = [](double) { return 0.0; };
      return prof;
    case IcFamily::well_prepared_sine:
    case IcFamily::unprepared_sine:
      prof.v = [d](double x) { return 1.0 + d * std::cos(pi * x); };
      prof.v_x = [d](double x) { return -d * pi * std::sin(pi * x); };
      prof.u = [d](double x) { return d * std::sin(pi * x); };
      prof.u_x = [d](double x) { return d * pi * std::cos(pi * x); };
      if (spec.family == IcFamily::well_prepared_sine) {
        prof.S = [d, mu](double x) {
          const double c = std::cos(pi * x);
          return mu * d * pi * c / (1.0 + d * c);
        };
        prof.S_x = [d, mu](double x) {
          const double c = std::cos(pi * x);
          const double q = 1.0 + d * c;
          return -mu * d * pi * pi * std::sin(pi * x) / (q * q);
        };
      } else {
        prof.S = prof.S_x = [](double) { return 0.0; };
      }
      return prof;
    case IcFamily::custom_table:
      return std::nullopt;
  }
  return std::nullopt;
}

double CompatibilityReport::max_boundary_residual() const {
  return std::max({u_left, u_right, momentum_left, momentum_right});
}

CompatibilityReport compatibility_report(const State& state, const FluidParams& p,
                                         const Grid1D& grid) {
  const std::size_t n = grid.n();
  const double dx = grid.dx();
  CompatibilityReport r;
  r.u_left = std::abs(state.u.front());
  r.u_right = std::abs(state.u.back());

  std::vector<double> flux(n);
  for (std::size_t i = 0; i < n; ++i) flux[i] = state.S[i] - pressure(state.v[i], p);
  const std::vector<double> dflux = stencil::ddx_second_order(flux, dx);
  r.momentum_left = std::abs(dflux.front());
  r.momentum_right = std::abs(dflux.back());

  r.v_min = *std::min_element(state.v.begin(), state.v.end());

  std::vector<double> wp = stencil::ddx(state.u, dx);
  for (std::size_t i = 0; i < n; ++i) wp[i] = state.v[i] * state.S[i] - p.mu() * wp[i];
  r.well_prepared = discrete_norm(wp, grid, 1);
  return r;
}

CompatibilityReport compatibility_report(const AnalyticProfile& prof, const FluidParams& p,
                                         const Grid1D& grid) {
  CompatibilityReport r;
  r.u_left = std::abs(prof.u(0.0));
  r.u_right = std::abs(prof.u(1.0));
  auto momentum = [&](double x) {
    return std::abs(prof.S_x(x) - dpressure(prof.v(x), p) * prof.v_x(x));
  };
  r.momentum_left = momentum(0.0);
  r.momentum_right = momentum(1.0);

  const std::size_t n = grid.n();
  std::vector<double> wp(n);
  r.v_min = prof.v(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    const double v = prof.v(x);
    r.v_min = std::min(r.v_min, v);
    wp[i] = v * prof.S(x) - p.mu() * prof.u_x(x);
  }
  r.well_prepared = discrete_norm(wp, grid, 1);
  return r;
}

} // namespace relaxns
