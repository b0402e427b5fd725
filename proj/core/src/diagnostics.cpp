#include "relaxns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relaxns/errors.hpp"

namespace relaxns {

std::vector<ResidualPoint> dissipation_residual(const std::vector<EnergySnapshot>& rows,
                                                double mu, double epsilon) {
  if (rows.size() < 3) throw MisuseError("dissipation_residual needs at least 3 energy rows");
  std::vector<ResidualPoint> out;
  out.reserve(rows.size() - 2);
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
    // three-point derivative that stays second order on uneven spacing, e.g.
    // around the shortened step that lands on t_end
    const double h1 = rows[k].t - rows[k - 1].t;
    const double h2 = rows[k + 1].t - rows[k].t;
    const double de = -h2 / (h1 * (h1 + h2)) * rows[k - 1].e_phys +
                      (h2 - h1) / (h1 * h2) * rows[k].e_phys +
                      h1 / (h2 * (h1 + h2)) * rows[k + 1].e_phys;
    ResidualPoint r;
    r.t = rows[k].t;
    r.residual = de + rows[k].diss_rate;
    r.eps_bound = epsilon / mu * rows[k].stress_L2sq;
    out.push_back(r);
  }
  return out;
}

std::vector<ResidualPoint> dissipation_residual(const RunArtifact& artifact, const FluidParams& p) {
  return dissipation_residual(artifact.energy, p.mu(), p.epsilon());
}

EnergyReport make_energy_report(const std::vector<EnergySnapshot>& rows) {
  EnergyReport rep;
  rep.series = rows;
  if (rows.empty()) return rep;
  rep.E0 = rows.front().E_total();
  rep.E_sup.reserve(rows.size());
  double sup = -std::numeric_limits<double>::infinity();
  // absolute part: rounding floor of the energy density once v is within ulps of 1
  const double slack = 1e-14 * std::abs(rows.front().e_phys) + 1e-15;
  rep.v_min = rows.front().v_min;
  rep.v_max = rows.front().v_max;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    sup = std::max(sup, rows[k].E_total());
    rep.E_sup.push_back(sup);
    rep.v_min = std::min(rep.v_min, rows[k].v_min);
    rep.v_max = std::max(rep.v_max, rows[k].v_max);
    if (k > 0) {
      rep.D_integral += 0.5 * (rows[k].t - rows[k - 1].t) * (rows[k].D_value + rows[k - 1].D_value);
      if (rows[k].e_phys > rows[k - 1].e_phys + slack) rep.monotone = false;
    }
  }
  return rep;
}

bool in_small_data_regime(const EnergyReport& report) {
  return report.v_min >= 0.75 && report.v_max <= 1.25;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::invalid: return "INVALID";
    case Verdict::vacuous: return "VACUOUS";
    case Verdict::none: return "NONE";
  }
  return "NONE";
}

AprioriResult apriori_check(const std::vector<EnergyReport>& family) {
  if (family.size() < 3) throw MisuseError("apriori_check needs a family of at least 3 runs");
  AprioriResult res;
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (!in_small_data_regime(family[k])) {
      res.verdict = Verdict::invalid;
      res.reason = "run " + std::to_string(k) + " leaves the regime 3/4 <= v <= 5/4";
      return res;
    }
  }
  const bool all_zero =
      std::all_of(family.begin(), family.end(), [](const EnergyReport& r) { return r.E0 == 0.0; });
  if (all_zero) {
    res.verdict = Verdict::vacuous;
    res.reason = "all initial energies vanish";
    return res;
  }
  for (const EnergyReport& r : family) {
    if (r.E0 == 0.0) {
      res.verdict = Verdict::invalid;
      res.reason = "mixed family: some runs have zero initial energy";
      return res;
    }
    const double sup = r.E_sup.empty() ? 0.0 : r.E_sup.back();
    res.ratios.push_back((sup + r.D_integral) / r.E0);
  }
  const auto [lo, hi] = std::minmax_element(res.ratios.begin(), res.ratios.end());
  res.spread = (*hi - *lo) / *lo;
  res.verdict = res.spread < 0.5 ? Verdict::pass : Verdict::fail;
  return res;
}

RelaxationResidualSeries relaxation_residual_series(const RunArtifact& artifact) {
  RelaxationResidualSeries out;
  double acc = 0.0;
  for (std::size_t k = 0; k < artifact.energy.size(); ++k) {
    const EnergySnapshot& e = artifact.energy[k];
    out.t.push_back(e.t);
    out.residual.push_back(e.relax_residual);
    if (k > 0) {
      const EnergySnapshot& prev = artifact.energy[k - 1];
      acc += 0.5 * (e.t - prev.t) *
             (e.relax_residual * e.relax_residual + prev.relax_residual * prev.relax_residual);
    }
  }
  out.integrated = std::sqrt(acc);
  return out;
}

double loglog_slope(const std::vector<double>& params, const std::vector<double>& values) {
  if (params.size() != values.size() || params.size() < 2) {
    throw MisuseError("loglog_slope needs at least two matching points");
  }
  const double m = static_cast<double>(params.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double x = std::log(params[k]);
    const double y = std::log(values[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] < values[k - 1])) return false;
  }
  return true;
}

} // namespace relaxns
