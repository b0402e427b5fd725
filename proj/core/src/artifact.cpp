#include "relaxns/artifact.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "relaxns/errors.hpp"

namespace relaxns {

std::string format_double(double value) {
  std::array<char, 40> buf{};
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

void write_snapshot_csv(const RunArtifact& artifact, std::ostream& out) {
  out << kSnapshotCsvHeader << '\n';
  for (const State& s : artifact.snapshots) {
    const std::string t = format_double(s.t);
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << t << ',' << format_double(artifact.x[i]) << ',' << format_double(s.v[i]) << ','
          << format_double(s.u[i]) << ',' << format_double(s.S[i]) << '\n';
    }
  }
}

void write_energy_csv(const RunArtifact& artifact, std::ostream& out) {
  out << kEnergyCsvHeader << '\n';
  for (const EnergySnapshot& e : artifact.energy) {
    out << format_double(e.t) << ',' << format_double(e.e_phys) << ','
        << format_double(e.diss_rate) << ',' << format_double(e.E_H2) << ','
        << format_double(e.E_dtH1) << ',' << format_double(e.E_dt2L2) << ','
        << format_double(e.D_value) << ',' << format_double(e.relax_residual) << '\n';
  }
}

std::vector<EnergySnapshot> read_energy_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kEnergyCsvHeader) {
    throw ConfigError("energy CSV: unexpected header");
  }
  std::vector<EnergySnapshot> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 8> vals{};
    std::istringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= vals.size()) break;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(first, last, vals[k]);
      if (ec != std::errc{} || ptr != last) {
        throw ConfigError("energy CSV: bad number on line " + std::to_string(lineno));
      }
      ++k;
    }
    if (k != vals.size()) {
      throw ConfigError("energy CSV: expected 8 columns on line " + std::to_string(lineno));
    }
    EnergySnapshot e;
    e.t = vals[0];
    e.e_phys = vals[1];
    e.diss_rate = vals[2];
    e.E_H2 = vals[3];
    e.E_dtH1 = vals[4];
    e.E_dt2L2 = vals[5];
    e.D_value = vals[6];
    e.relax_residual = vals[7];
    rows.push_back(e);
  }
  return rows;
}

const char* to_string(RunStatus status) {
  return status == RunStatus::completed ? "completed" : "aborted";
}

} // namespace relaxns
