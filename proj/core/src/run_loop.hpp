#pragma once

// Shared time loop for the relaxed and parabolic solvers.

#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "relaxns/artifact.hpp"
#include "relaxns/errors.hpp"
#include "relaxns/relaxed_solver.hpp"

namespace relaxns::detail {

// Ops must provide
//   double dt(const StateT&)
//   void advance(StateT&, double dt)      (throws NumericalAbort, state untouched)
//   State snapshot(const StateT&)
//   EnergySnapshot energy(const StateT&)
template <class StateT, class Ops>
RunArtifact drive(StateT s, double t_end, const SchemeConfig& cfg, std::vector<double> x,
                  Ops& ops) {
  const auto start = std::chrono::steady_clock::now();
  RunArtifact art;
  art.x = std::move(x);

  auto record_snapshot = [&](const StateT& st) {
    art.snapshots.push_back(ops.snapshot(st));
    art.energy.push_back(ops.energy(st));
  };
  record_snapshot(s);

  const double interval = cfg.record_interval;
  long long next_k = interval > 0.0 ? static_cast<long long>(std::floor(s.t / interval)) + 1 : 0;

  while (s.t < t_end) {
    double dt = ops.dt(s);
    double target = t_end;
    bool interval_target = false;
    if (interval > 0.0) {
      const double next = static_cast<double>(next_k) * interval;
      if (next < t_end) {
        target = next;
        interval_target = true;
      }
    }
    const bool land = s.t + dt >= target;
    if (land) dt = target - s.t;

    try {
      ops.advance(s, dt);
    } catch (const NumericalAbort& e) {
      art.status = RunStatus::aborted;
      art.abort_reason = e.what();
      if (art.snapshots.back().t != s.t) record_snapshot(s);
      break;
    }
    if (land) s.t = target;
    ++art.steps;

    bool snap = land && !interval_target;
    if (land && interval_target) {
      snap = true;
      ++next_k;
    }
    if (cfg.record_every > 0 && art.steps % cfg.record_every == 0) snap = true;

    if (snap) {
      record_snapshot(s);
    } else if (cfg.energy_every > 0 && art.steps % cfg.energy_every == 0) {
      art.energy.push_back(ops.energy(s));
    }
  }

  art.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return art;
}

} // namespace relaxns::detail
