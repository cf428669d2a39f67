#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rumor/lattice.hpp"

namespace rumor {

struct CountRecord {
  double t;
  std::array<std::int64_t, 3> counts;  // ignorant, spreader, stifler
};

struct EventRecord {
  double t;
  SiteIndex site;
  SiteState from;
  SiteState to;
};

// Population counts over a run, optionally with the full event log. Sample
// times are strictly increasing; counts always sum to the site count.
struct Trajectory {
  std::vector<CountRecord> samples;
  std::vector<EventRecord> events;  // only filled when event logging is on

  const CountRecord& back() const { return samples.back(); }
};

struct RunOptions {
  bool record_events = false;
  // 0: record counts at every state change. > 0: record on a fixed time grid
  // anchored at the run start (infinity gives just the first/last records).
  double sample_interval = 0.0;
  bool stop_on_extinction = true;
};

// Shared recording helper for the event-driven engines.
class TrajectoryRecorder {
 public:
  TrajectoryRecorder(const RunOptions& opts, double t0,
                     const std::array<std::int64_t, 3>& counts0)
      : opts_(opts), anchor_(t0), next_grid_(1) {
    traj_.samples.push_back({t0, counts0});
  }

  // Called before counts change at time t.
  void before_change(double t, const std::array<std::int64_t, 3>& counts) {
    if (opts_.sample_interval > 0.0) flush_grid(t, counts);
  }

  // Called after counts changed at time t.
  void after_change(double t, const std::array<std::int64_t, 3>& counts) {
    if (opts_.sample_interval == 0.0 && t > traj_.samples.back().t)
      traj_.samples.push_back({t, counts});
  }

  void event(double t, SiteIndex site, SiteState from, SiteState to) {
    if (opts_.record_events) traj_.events.push_back({t, site, from, to});
  }

  // Emits pending grid samples and a final record at the stop time.
  Trajectory finish(double t_stop, const std::array<std::int64_t, 3>& counts) {
    if (opts_.sample_interval > 0.0) flush_grid(t_stop, counts);
    if (t_stop > traj_.samples.back().t) traj_.samples.push_back({t_stop, counts});
    return std::move(traj_);
  }

 private:
  void flush_grid(double t, const std::array<std::int64_t, 3>& counts) {
    // Strictly below t: a grid point falling exactly on a change time takes
    // the post-change counts at the next flush.
    while (true) {
      const double grid = anchor_ + next_grid_ * opts_.sample_interval;
      if (grid >= t) break;
      if (grid > traj_.samples.back().t) traj_.samples.push_back({grid, counts});
      ++next_grid_;
    }
  }

  RunOptions opts_;
  double anchor_;
  std::uint64_t next_grid_;
  Trajectory traj_;
};

}  // namespace rumor
