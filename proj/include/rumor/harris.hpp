#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/lattice.hpp"
#include "rumor/model.hpp"
#include "rumor/rng.hpp"
#include "rumor/trajectory.hpp"

namespace rumor {

// Mark kinds of the graphical construction. Infect marks (rate lambda) and
// Stifle marks (rate alpha) live on ordered neighbor pairs; Death marks
// (rate 1) live on sites.
enum class MarkKind : std::uint8_t { Infect = 0, Stifle = 1, Death = 2 };

inline const char* mark_name(MarkKind k) {
  switch (k) {
    case MarkKind::Infect: return "N1";
    case MarkKind::Stifle: return "N2";
    case MarkKind::Death: return "D";
  }
  return "?";
}

struct Arrival {
  double t;
  MarkKind kind;
  SiteIndex src;
  SiteIndex dst;  // equals src for Death marks
};

// All Poisson arrivals on [0, t_max], sorted by (t, kind, src, dst) so that
// simultaneous arrivals (a measure-zero event) are ordered deterministically.
// Each elementary process draws from its own seed derived from
// (seed, kind, src, dst); the merged stream is independent of generation
// order, and the Infect/Death sub-streams do not change when alpha does.
struct ArrivalStream {
  std::vector<Arrival> arrivals;
  double t_max = 0.0;
};

namespace detail {

inline void append_poisson_arrivals(std::vector<Arrival>& out, MarkKind kind,
                                    SiteIndex src, SiteIndex dst, double rate,
                                    double t_max, std::uint64_t master_seed) {
  if (!(rate > 0.0)) return;
  Xoshiro256PlusPlus gen(derive_stream_seed(
      master_seed, static_cast<std::uint64_t>(kind),
      static_cast<std::uint64_t>(src), static_cast<std::uint64_t>(dst)));
  double t = gen.exponential(rate);
  while (t <= t_max) {
    out.push_back({t, kind, src, dst});
    t += gen.exponential(rate);
  }
}

}  // namespace detail

inline ArrivalStream generate_arrivals(const Lattice& lat, const Params& params,
                                       double t_max, std::uint64_t seed) {
  params.validate();
  if (!(t_max >= 0.0)) throw ConfigError("t_max must be >= 0");
  ArrivalStream stream;
  stream.t_max = t_max;
  const SiteIndex n = lat.site_count();
  const double pair_rate = params.lambda + params.alpha;
  const auto expected = static_cast<std::size_t>(
      t_max * (static_cast<double>(n) * (1.0 + 2.0 * lat.dim() * pair_rate)) + 64.0);
  stream.arrivals.reserve(expected);
  for (SiteIndex x = 0; x < n; ++x) {
    detail::append_poisson_arrivals(stream.arrivals, MarkKind::Death, x, x, 1.0,
                                    t_max, seed);
    for (SiteIndex y : lat.neighbors(x)) {
      detail::append_poisson_arrivals(stream.arrivals, MarkKind::Infect, x, y,
                                      params.lambda, t_max, seed);
      detail::append_poisson_arrivals(stream.arrivals, MarkKind::Stifle, x, y,
                                      params.alpha, t_max, seed);
    }
  }
  std::sort(stream.arrivals.begin(), stream.arrivals.end(),
            [](const Arrival& a, const Arrival& b) {
              if (a.t != b.t) return a.t < b.t;
              if (a.kind != b.kind) return a.kind < b.kind;
              if (a.src != b.src) return a.src < b.src;
              return a.dst < b.dst;
            });
  return stream;
}

namespace detail {

// The change an arrival causes, if any: (site, new state).
using Effect = std::optional<std::pair<SiteIndex, SiteState>>;

inline Effect rumor_effect(const Configuration& eta, const Arrival& a) {
  switch (a.kind) {
    case MarkKind::Infect:
      if (eta.state(a.src) == SiteState::Spreader &&
          eta.state(a.dst) == SiteState::Ignorant)
        return {{a.dst, SiteState::Spreader}};
      return std::nullopt;
    case MarkKind::Stifle:
      if (eta.state(a.src) == SiteState::Spreader &&
          eta.state(a.dst) == SiteState::Spreader)
        return {{a.dst, SiteState::Stifler}};
      return std::nullopt;
    case MarkKind::Death:
      if (eta.state(a.src) != SiteState::Ignorant)
        return {{a.src, SiteState::Ignorant}};
      return std::nullopt;
  }
  return std::nullopt;
}

// Contact rules on the same marks: Infect propagates Spreaders, Death removes
// them, Stifle marks are ignored entirely.
inline Effect contact_effect(const Configuration& xi, const Arrival& a) {
  switch (a.kind) {
    case MarkKind::Infect:
      if (xi.state(a.src) == SiteState::Spreader &&
          xi.state(a.dst) == SiteState::Ignorant)
        return {{a.dst, SiteState::Spreader}};
      return std::nullopt;
    case MarkKind::Stifle:
      return std::nullopt;
    case MarkKind::Death:
      if (xi.state(a.src) == SiteState::Spreader)
        return {{a.src, SiteState::Ignorant}};
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

// Applies one mark to the rumor configuration; marks whose preconditions do
// not hold are ignored. Returns whether the state changed.
inline bool apply_arrival_rumor(Configuration& eta, const Arrival& a) {
  if (const auto effect = detail::rumor_effect(eta, a)) {
    eta.set_state(effect->first, effect->second);
    return true;
  }
  return false;
}

inline bool apply_arrival_contact(Configuration& xi, const Arrival& a) {
  if (const auto effect = detail::contact_effect(xi, a)) {
    xi.set_state(effect->first, effect->second);
    return true;
  }
  return false;
}

// The contact start state for the coupling: Spreaders stay occupied, Stiflers
// are dropped.
inline Configuration contact_initial_from(const Configuration& eta0) {
  Configuration xi(eta0.lattice());
  for (SiteIndex x = 0; x < eta0.lattice().site_count(); ++x)
    if (eta0.state(x) == SiteState::Spreader) xi.set_state(x, SiteState::Spreader);
  return xi;
}

struct HarrisRun {
  Trajectory trajectory;
  Configuration final_state;
  std::uint64_t arrivals_processed = 0;
};

namespace detail {

template <typename EffectFn>
HarrisRun run_stream(const Configuration& start, const Params& params,
                     double t_max, std::uint64_t seed, const RunOptions& opts,
                     EffectFn&& effect_of) {
  const ArrivalStream stream = generate_arrivals(start.lattice(), params, t_max, seed);
  Configuration state = start;
  auto counts = state.counts();
  TrajectoryRecorder rec(opts, 0.0, counts);
  std::uint64_t processed = 0;
  double stop = t_max;
  // An empty process (no Spreaders, no Stiflers) is constant under every
  // mark, so the loop can end there.
  bool empty = counts[1] == 0 && counts[2] == 0;
  if (empty && opts.stop_on_extinction) stop = 0.0;
  for (const Arrival& a : stream.arrivals) {
    if (empty) break;
    ++processed;
    if (const auto effect = effect_of(state, a)) {
      const SiteState from = state.state(effect->first);
      rec.before_change(a.t, counts);
      state.set_state(effect->first, effect->second);
      --counts[state_code(from)];
      ++counts[state_code(effect->second)];
      rec.after_change(a.t, counts);
      rec.event(a.t, effect->first, from, effect->second);
      if (counts[1] == 0 && counts[2] == 0) {
        empty = true;
        if (opts.stop_on_extinction) stop = a.t;
      }
    }
  }
  HarrisRun run{rec.finish(stop, counts), std::move(state), processed};
  return run;
}

}  // namespace detail

// Rumor process driven by its arrival stream. Distributionally equivalent to
// GillespieEngine; with a shared seed it is the coupling's rumor marginal.
inline HarrisRun run_harris(const Configuration& eta0, const Params& params,
                            double t_max, std::uint64_t seed,
                            const RunOptions& opts = {}) {
  return detail::run_stream(eta0, params, t_max, seed, opts, detail::rumor_effect);
}

// Contact process driven by the same stream layout (Stifle marks ignored).
// The result depends only on the Infect and Death sub-streams.
inline HarrisRun run_contact(const Configuration& xi0, const Params& params,
                             double t_max, std::uint64_t seed,
                             const RunOptions& opts = {}) {
  return detail::run_stream(xi0, params, t_max, seed, opts, detail::contact_effect);
}

struct DominanceViolation {
  double t;
  SiteIndex site;
};

struct CoupledRun {
  Trajectory rumor;
  Trajectory contact;  // stifler slot always zero
  Configuration rumor_final;
  Configuration contact_final;
  std::uint64_t arrivals_processed = 0;
  std::vector<DominanceViolation> violations;  // must stay empty
};

// Drives the rumor process and the contact process on one shared arrival
// stream. The contact start state is eta0 with Stiflers dropped. After every
// arrival, every site is checked for dominance: a rumor Spreader must be
// occupied in the contact process. Violations are collected, never thrown;
// any entry indicates an implementation bug.
inline CoupledRun run_coupled(const Configuration& eta0, const Params& params,
                              double t_max, std::uint64_t seed,
                              const RunOptions& opts = {}) {
  const ArrivalStream stream = generate_arrivals(eta0.lattice(), params, t_max, seed);
  Configuration eta = eta0;
  Configuration xi = contact_initial_from(eta0);
  auto eta_counts = eta.counts();
  auto xi_counts = xi.counts();
  TrajectoryRecorder eta_rec(opts, 0.0, eta_counts);
  TrajectoryRecorder xi_rec(opts, 0.0, xi_counts);
  std::vector<DominanceViolation> violations;
  std::uint64_t processed = 0;
  const SiteIndex n = eta0.lattice().site_count();
  double stop = t_max;
  bool quiescent = eta_counts[1] == 0 && eta_counts[2] == 0 && xi_counts[1] == 0;
  if (quiescent && opts.stop_on_extinction) stop = 0.0;

  for (const Arrival& a : stream.arrivals) {
    if (quiescent) break;
    ++processed;
    if (const auto effect = detail::rumor_effect(eta, a)) {
      const SiteState from = eta.state(effect->first);
      eta_rec.before_change(a.t, eta_counts);
      eta.set_state(effect->first, effect->second);
      --eta_counts[state_code(from)];
      ++eta_counts[state_code(effect->second)];
      eta_rec.after_change(a.t, eta_counts);
      eta_rec.event(a.t, effect->first, from, effect->second);
    }
    if (const auto effect = detail::contact_effect(xi, a)) {
      const SiteState from = xi.state(effect->first);
      xi_rec.before_change(a.t, xi_counts);
      xi.set_state(effect->first, effect->second);
      --xi_counts[state_code(from)];
      ++xi_counts[state_code(effect->second)];
      xi_rec.after_change(a.t, xi_counts);
      xi_rec.event(a.t, effect->first, from, effect->second);
    }
    for (SiteIndex x = 0; x < n; ++x) {
      if (eta.state(x) == SiteState::Spreader && xi.state(x) != SiteState::Spreader)
        violations.push_back({a.t, x});
    }
    // Nothing can change once both processes are empty.
    if (eta_counts[1] == 0 && eta_counts[2] == 0 && xi_counts[1] == 0) {
      stop = a.t;
      break;
    }
  }

  CoupledRun run{eta_rec.finish(stop, eta_counts), xi_rec.finish(stop, xi_counts),
                 std::move(eta), std::move(xi), processed, std::move(violations)};
  return run;
}

}  // namespace rumor
