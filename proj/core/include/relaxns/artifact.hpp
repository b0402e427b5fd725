#pragma once

// Recorded trajectory of one run and its CSV serialisation.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "relaxns/energy.hpp"
#include "relaxns/model.hpp"

namespace relaxns {

enum class RunStatus { completed, aborted };

struct RunArtifact {
  // JSON text sufficient to re-run (filled by the harness; empty for direct
  // library calls).
  std::string config_echo;
  std::vector<double> x;
  std::vector<State> snapshots;
  std::vector<EnergySnapshot> energy;
  RunStatus status = RunStatus::completed;
  std::string abort_reason;
  double wall_time = 0.0;
  std::size_t steps = 0;

  bool completed() const { return status == RunStatus::completed; }
  const State& final_state() const { return snapshots.back(); }
};

inline constexpr const char* kSnapshotCsvHeader = "t,x,v,u,S";
inline constexpr const char* kEnergyCsvHeader =
    "t,e_phys,diss_rate,E_H2,E_dtH1,E_dt2L2,D_value,relax_residual";

// Shortest form that still carries 17 significant digits, so values
// round-trip exactly through text.
std::string format_double(double value);

void write_snapshot_csv(const RunArtifact& artifact, std::ostream& out);
void write_energy_csv(const RunArtifact& artifact, std::ostream& out);

// Parses an energy CSV written by write_energy_csv.  v_min/v_max are not
// stored and come back as 1.
std::vector<EnergySnapshot> read_energy_csv(std::istream& in);

const char* to_string(RunStatus status);

} // namespace relaxns
