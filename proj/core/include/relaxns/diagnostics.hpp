#pragma once

// Trajectory-level diagnostics built on recorded energy rows.

#include <string>
#include <vector>

#include "relaxns/artifact.hpp"
#include "relaxns/energy.hpp"

namespace relaxns {

struct ResidualPoint {
  double t = 0.0;
  double residual = 0.0;
  // (eps / mu) integral of S^2 at t, the admissible excess for eps > 0.
  double eps_bound = 0.0;
};

// r(t_k) = de/dt(t_k) + diss_rate(t_k) for every interior energy row, with
// de/dt from the second-order three-point formula on the (possibly uneven)
// row times.  Throws MisuseError with fewer than 3 rows.
std::vector<ResidualPoint> dissipation_residual(const std::vector<EnergySnapshot>& rows,
                                                double mu, double epsilon);
std::vector<ResidualPoint> dissipation_residual(const RunArtifact& artifact, const FluidParams& p);

struct EnergyReport {
  std::vector<EnergySnapshot> series;
  // running sup of E_total over the recorded rows
  std::vector<double> E_sup;
  double D_integral = 0.0;
  bool monotone = true;
  double E0 = 0.0;
  double v_min = 1.0;
  double v_max = 1.0;
};

EnergyReport make_energy_report(const std::vector<EnergySnapshot>& rows);

// v in [3/4, 5/4] throughout.
bool in_small_data_regime(const EnergyReport& report);

enum class Verdict { pass, fail, invalid, vacuous, none };
const char* to_string(Verdict verdict);

struct AprioriResult {
  Verdict verdict = Verdict::none;
  std::vector<double> ratios;
  double spread = 0.0;
  std::string reason;
};

// ratio = (sup E + integral D) / E0 per run; PASS when (max - min) / min < 0.5.
AprioriResult apriori_check(const std::vector<EnergyReport>& family);

struct RelaxationResidualSeries {
  std::vector<double> t;
  std::vector<double> residual;
  // (integral of ||S - mu u_x/v||^2 dt)^(1/2), trapezoidal in time
  double integrated = 0.0;
};

RelaxationResidualSeries relaxation_residual_series(const RunArtifact& artifact);

// Least-squares slope of log(values) against log(params).
double loglog_slope(const std::vector<double>& params, const std::vector<double>& values);

bool strictly_decreasing(const std::vector<double>& values);

} // namespace relaxns
