#pragma once

#include <array>
#include <cmath>
#include <string>

#include "rumor/errors.hpp"
#include "rumor/lattice.hpp"

namespace rumor {

// Model parameters. The forgetting rate of spreaders and stiflers is fixed
// at one; it sets the unit of time.
struct Params {
  double lambda = 0.0;  // spreading rate, per spreader neighbor
  double alpha = 0.0;   // stifling rate, per spreader neighbor

  void validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
      throw ConfigError("lambda must be finite and >= 0");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
      throw ConfigError("alpha must be finite and >= 0");
  }
};

// n1(x, eta): the number of nearest neighbors of x in state Spreader.
inline int count_spreader_neighbors(const Configuration& cfg, SiteIndex x) {
  int n1 = 0;
  for (SiteIndex y : cfg.lattice().neighbors(x))
    if (cfg.state(y) == SiteState::Spreader) ++n1;
  return n1;
}

// Exit rates of one site, indexed by the target state. Fixed entry order
// (to Ignorant, to Spreader, to Stifler); impossible moves carry rate 0.
struct RateTable {
  std::array<double, 3> to{0.0, 0.0, 0.0};

  double operator[](SiteState target) const { return to[state_code(target)]; }
  double total() const { return to[0] + to[1] + to[2]; }
};

// Rate table of site x in its current state:
//   Ignorant -> Spreader at lambda * n1
//   Spreader -> Ignorant at 1,  Spreader -> Stifler at alpha * n1
//   Stifler  -> Ignorant at 1
// Every other move, in particular Ignorant -> Stifler and
// Stifler -> Spreader, has rate zero.
inline RateTable site_rates(const Configuration& cfg, const Params& params, SiteIndex x) {
  cfg.lattice().require_valid(x);
  RateTable table;
  switch (cfg.state(x)) {
    case SiteState::Ignorant:
      table.to[state_code(SiteState::Spreader)] =
          params.lambda * count_spreader_neighbors(cfg, x);
      break;
    case SiteState::Spreader:
      table.to[state_code(SiteState::Ignorant)] = 1.0;
      table.to[state_code(SiteState::Stifler)] =
          params.alpha * count_spreader_neighbors(cfg, x);
      break;
    case SiteState::Stifler:
      table.to[state_code(SiteState::Ignorant)] = 1.0;
      break;
  }
  return table;
}

// Same rates computed from (state, n1) without touching the configuration;
// the engines keep n1 incrementally and call this per update.
inline double site_exit_rate(SiteState s, int n1, const Params& params) {
  switch (s) {
    case SiteState::Ignorant: return params.lambda * n1;
    case SiteState::Spreader: return 1.0 + params.alpha * n1;
    case SiteState::Stifler: return 1.0;
  }
  return 0.0;
}

// The moves the model can ever make: 0->1, 1->0, 1->2, 2->0.
inline bool transition_allowed(SiteState from, SiteState to) {
  if (from == SiteState::Ignorant) return to == SiteState::Spreader;
  if (from == SiteState::Spreader)
    return to == SiteState::Ignorant || to == SiteState::Stifler;
  return to == SiteState::Ignorant;  // Stifler
}

// Copy of cfg with the single move applied. Structurally impossible moves
// (e.g. Ignorant -> Stifler) are rejected regardless of rates.
inline Configuration apply_transition(const Configuration& cfg, SiteIndex x, SiteState to) {
  cfg.lattice().require_valid(x);
  const SiteState from = cfg.state(x);
  if (!transition_allowed(from, to))
    throw InvariantError("impossible transition " + std::to_string(state_code(from)) +
                         " -> " + std::to_string(state_code(to)) + " at site " +
                         std::to_string(x));
  Configuration out = cfg;
  out.set_state(x, to);
  return out;
}

}  // namespace rumor
