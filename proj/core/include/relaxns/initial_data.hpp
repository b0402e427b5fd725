#pragma once

// Initial-data families and compatibility measurements.
//
//   equilibrium         (1, 0, 0)
//   well-prepared-sine  v0 = 1 + delta cos(pi x), u0 = delta sin(pi x),
//                       S0 = mu D u0 / v0
//   unprepared-sine     same v0, u0 with S0 = 0
//   custom-table        nodal values from a CSV file (header x,v,u,S)
//
// The sine pair vanishes in u0 at both ends, and u0'' and v0' vanish there
// too, so the first-order compatibility (S0 - p(v0))_x = 0 holds at x = 0, 1.
// The well-prepared stress uses the solver's own derivative operator, which
// makes v0 S0 - mu D u0 vanish to round-off on every grid.

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "relaxns/model.hpp"

namespace relaxns {

enum class IcFamily { equilibrium, well_prepared_sine, unprepared_sine, custom_table };

IcFamily parse_ic_family(std::string_view name);
const char* to_string(IcFamily family);

struct IcSpec {
  IcFamily family = IcFamily::equilibrium;
  double delta = 0.0;
  // custom-table only
  std::string path;
};

State make_initial_data(const IcSpec& spec, const Grid1D& grid, const FluidParams& p);

// Reads a custom table; x must match the grid nodes to 1e-9.
State read_initial_table(const std::string& path, const Grid1D& grid);

// Continuous description of an analytic family, with the derivatives the
// compatibility conditions need.
struct AnalyticProfile {
  std::function<double(double)> v, v_x;
  std::function<double(double)> u, u_x;
  std::function<double(double)> S, S_x;
};

std::optional<AnalyticProfile> analytic_profile(const IcSpec& spec, const FluidParams& p);

struct CompatibilityReport {
  double u_left = 0.0;
  double u_right = 0.0;
  // |S_x - p(v)_x| at each end (k = 1 condition through the momentum equation)
  double momentum_left = 0.0;
  double momentum_right = 0.0;
  double v_min = 1.0;
  // ||v S - mu u_x||_{H^1}
  double well_prepared = 0.0;

  double max_boundary_residual() const;
};

// Nodal measurement: one-sided second-order derivatives at the ends, the
// solver derivative inside the well-preparedness measure.
CompatibilityReport compatibility_report(const State& state, const FluidParams& p,
                                         const Grid1D& grid);

// Exact derivatives at the ends; the well-preparedness integral is evaluated
// by quadrature of the analytic fields on the grid.
CompatibilityReport compatibility_report(const AnalyticProfile& profile, const FluidParams& p,
                                         const Grid1D& grid);

} // namespace relaxns
