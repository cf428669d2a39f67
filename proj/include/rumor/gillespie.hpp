#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/fenwick.hpp"
#include "rumor/lattice.hpp"
#include "rumor/model.hpp"
#include "rumor/rng.hpp"
#include "rumor/trajectory.hpp"

namespace rumor {

// Exact event-driven simulation of the rumor process.
//
// A binary indexed tree over per-site exit rates gives O(log N) site
// selection; after an event only the affected site and its neighbors are
// re-rated. All rates are rebuilt from scratch every 2^20 events to cap
// floating-point drift. Per event the generator is consumed in the fixed
// order (waiting time, site, transition), and within a site transitions are
// examined in the order (to Ignorant, to Spreader, to Stifler), so a seed
// pins the whole event log.
class GillespieEngine {
 public:
  static constexpr std::uint64_t kRebuildPeriod = 1ull << 20;

  GillespieEngine(Configuration cfg, const Params& params, std::uint64_t seed)
      : cfg_(std::move(cfg)),
        params_(params),
        neighbors_(cfg_.lattice()),
        n1_(static_cast<std::size_t>(cfg_.lattice().site_count())),
        rate_(static_cast<std::size_t>(cfg_.lattice().site_count())),
        tree_(static_cast<std::size_t>(cfg_.lattice().site_count())),
        rng_(seed) {
    params_.validate();
    counts_ = cfg_.counts();
    rebuild_rates();
  }

  struct Event {
    double t;
    SiteIndex site;
    SiteState from;
    SiteState to;
  };

  double time() const { return t_; }
  double total_rate() const { return tree_.total(); }
  bool absorbed() const { return counts_[1] == 0 && counts_[2] == 0; }
  const Configuration& configuration() const { return cfg_; }
  const std::array<std::int64_t, 3>& counts() const { return counts_; }
  const Params& params() const { return params_; }
  std::uint64_t events_applied() const { return events_; }

  // One exact step. Returns nothing once the all-Ignorant absorbing state is
  // reached; the clock is left unchanged in that case.
  std::optional<Event> step() {
    if (absorbed()) return std::nullopt;
    const double total = tree_.total();
    if (!(total > 0.0))
      throw InvariantError("active configuration with nonpositive total rate");
    const double dt = rng_.exponential(total);
    const Event ev = pick_and_apply(t_ + dt);
    return ev;
  }

  // Advances until the clock passes t_max or the process absorbs. The
  // waiting-time draw that would overshoot t_max is discarded and the clock
  // set to t_max, which preserves the exact law of the state at t_max.
  Trajectory run_until(double t_max, const RunOptions& opts = {}) {
    if (!(t_max >= t_)) throw ConfigError("t_max must be >= current time");
    TrajectoryRecorder rec(opts, t_, counts_);
    double stop = t_max;
    while (true) {
      if (absorbed()) {
        if (opts.stop_on_extinction) stop = t_;
        break;
      }
      const double total = tree_.total();
      if (!(total > 0.0))
        throw InvariantError("active configuration with nonpositive total rate");
      const double dt = rng_.exponential(total);
      if (t_ + dt > t_max) {
        t_ = t_max;
        break;
      }
      rec.before_change(t_ + dt, counts_);
      const Event ev = pick_and_apply(t_ + dt);
      rec.after_change(ev.t, counts_);
      rec.event(ev.t, ev.site, ev.from, ev.to);
    }
    return rec.finish(stop, counts_);
  }

  // Largest relative gap between the maintained per-site rates (and their
  // tree total) and a fresh recomputation; exposed for consistency tests.
  double rate_drift() const {
    double worst = 0.0;
    double fresh_total = 0.0;
    for (SiteIndex x = 0; x < cfg_.lattice().site_count(); ++x) {
      int n1 = 0;
      for (SiteIndex y : neighbors_.of(x))
        if (cfg_.state(y) == SiteState::Spreader) ++n1;
      const double fresh = site_exit_rate(cfg_.state(x), n1, params_);
      fresh_total += fresh;
      const double gap = std::abs(fresh - rate_[static_cast<std::size_t>(x)]);
      worst = std::max(worst, gap / std::max(1.0, fresh));
    }
    const double total_gap = std::abs(fresh_total - tree_.total());
    return std::max(worst, total_gap / std::max(1.0, fresh_total));
  }

 private:
  Event pick_and_apply(double t_new) {
    // Site by strict prefix-sum inversion over the rate tree.
    const double total = tree_.total();
    double target = rng_.uniform01() * total;
    std::size_t x = tree_.find(target);
    while (x > 0 && rate_[x] <= 0.0) --x;  // FP edge: never pick a dead site

    const auto site = static_cast<SiteIndex>(x);
    const SiteState from = cfg_.state(site);
    const SiteState to = pick_transition(site, from);

    cfg_.set_state(site, to);
    --counts_[state_code(from)];
    ++counts_[state_code(to)];
    t_ = t_new;
    ++events_;

    // A change in spreader occupancy shifts n1 (and hence the rate) of every
    // neighbor; the site's own rate always changes.
    const bool was_spreader = from == SiteState::Spreader;
    const bool is_spreader = to == SiteState::Spreader;
    if (was_spreader != is_spreader) {
      const int delta = is_spreader ? 1 : -1;
      for (SiteIndex y : neighbors_.of(site)) {
        n1_[static_cast<std::size_t>(y)] += delta;
        refresh_site(y);
      }
    }
    refresh_site(site);

    if (events_ % kRebuildPeriod == 0) rebuild_rates();
    return {t_, site, from, to};
  }

  SiteState pick_transition(SiteIndex x, SiteState from) {
    RateTable table;
    const int n1 = n1_[static_cast<std::size_t>(x)];
    switch (from) {
      case SiteState::Ignorant:
        table.to[state_code(SiteState::Spreader)] = params_.lambda * n1;
        break;
      case SiteState::Spreader:
        table.to[state_code(SiteState::Ignorant)] = 1.0;
        table.to[state_code(SiteState::Stifler)] = params_.alpha * n1;
        break;
      case SiteState::Stifler:
        table.to[state_code(SiteState::Ignorant)] = 1.0;
        break;
    }
    const double v = rng_.uniform01() * rate_[static_cast<std::size_t>(x)];
    double acc = 0.0;
    int chosen = -1;
    for (int target = 0; target < 3; ++target) {
      const double r = table.to[target];
      if (r <= 0.0) continue;
      acc += r;
      chosen = target;
      if (v < acc) break;  // falls through to the last positive entry on FP overshoot
    }
    if (chosen < 0)
      throw InvariantError("site selected with an empty transition table");
    return static_cast<SiteState>(chosen);
  }

  void refresh_site(SiteIndex x) {
    const auto i = static_cast<std::size_t>(x);
    const double fresh = site_exit_rate(cfg_.state(x), n1_[i], params_);
    tree_.add(i, fresh - rate_[i]);
    rate_[i] = fresh;
  }

  void rebuild_rates() {
    const SiteIndex n = cfg_.lattice().site_count();
    for (SiteIndex x = 0; x < n; ++x) {
      int n1 = 0;
      for (SiteIndex y : neighbors_.of(x))
        if (cfg_.state(y) == SiteState::Spreader) ++n1;
      n1_[static_cast<std::size_t>(x)] = n1;
      rate_[static_cast<std::size_t>(x)] = site_exit_rate(cfg_.state(x), n1, params_);
    }
    tree_.assign(rate_);
  }

  Configuration cfg_;
  Params params_;
  NeighborTable neighbors_;
  std::vector<int> n1_;
  std::vector<double> rate_;
  FenwickTree tree_;
  std::array<std::int64_t, 3> counts_{};
  double t_ = 0.0;
  std::uint64_t events_ = 0;
  Xoshiro256PlusPlus rng_;
};

}  // namespace rumor
