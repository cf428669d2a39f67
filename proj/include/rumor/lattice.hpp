#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rumor/errors.hpp"

namespace rumor {

// Site states of the rumor process. Ignorants can learn the rumor, spreaders
// transmit it, stiflers know it but no longer transmit.
enum class SiteState : std::uint8_t { Ignorant = 0, Spreader = 1, Stifler = 2 };

inline int state_code(SiteState s) { return static_cast<int>(s); }

inline SiteState state_from_code(int code) {
  if (code < 0 || code > 2) throw ConfigError("site state must be 0, 1 or 2");
  return static_cast<SiteState>(code);
}

enum class Boundary {
  Periodic,         // neighbors wrap modulo side
  FrozenIgnorant,   // sites outside the box are permanently Ignorant; no
                    // events cross the boundary
};

inline std::string boundary_name(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "frozen_ignorant";
}

inline Boundary boundary_from_name(const std::string& name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "frozen_ignorant") return Boundary::FrozenIgnorant;
  throw ConfigError("unknown boundary '" + name + "' (expected periodic or frozen_ignorant)");
}

using SiteIndex = std::int64_t;

// Finite d-dimensional box of side^d sites. Site indices are row-major with
// axis 0 fastest: index = c[0] + side*c[1] + side^2*c[2] + ...
// Under Periodic a side of at least 3 is required so the two neighbors of a
// site along an axis are distinct; FrozenIgnorant allows side >= 1.
class Lattice {
 public:
  static constexpr SiteIndex kMaxSites = 100'000'000;

  Lattice() : Lattice(1, 3, Boundary::Periodic) {}

  Lattice(int dim, int side, Boundary boundary)
      : dim_(dim), side_(side), boundary_(boundary) {
    if (dim_ < 1) throw ConfigError("lattice dimension must be >= 1");
    const int min_side = boundary_ == Boundary::Periodic ? 3 : 1;
    if (side_ < min_side)
      throw ConfigError("side must be >= " + std::to_string(min_side) +
                        " under " + boundary_name(boundary_) + " boundary");
    count_ = 1;
    for (int a = 0; a < dim_; ++a) {
      if (count_ > kMaxSites / side_)
        throw CapacityError("lattice has more than " + std::to_string(kMaxSites) + " sites");
      count_ *= side_;
    }
  }

  int dim() const { return dim_; }
  int side() const { return side_; }
  Boundary boundary() const { return boundary_; }
  SiteIndex site_count() const { return count_; }

  bool valid(SiteIndex x) const { return x >= 0 && x < count_; }

  void require_valid(SiteIndex x) const {
    if (!valid(x)) throw ConfigError("invalid site index " + std::to_string(x));
  }

  std::vector<int> coords(SiteIndex index) const {
    require_valid(index);
    std::vector<int> c(dim_);
    for (int a = 0; a < dim_; ++a) {
      c[a] = static_cast<int>(index % side_);
      index /= side_;
    }
    return c;
  }

  SiteIndex index_of(const std::vector<int>& coords) const {
    if (static_cast<int>(coords.size()) != dim_)
      throw ConfigError("coordinate arity does not match lattice dimension");
    SiteIndex index = 0;
    for (int a = dim_ - 1; a >= 0; --a) {
      if (coords[a] < 0 || coords[a] >= side_)
        throw ConfigError("coordinate out of range");
      index = index * side_ + coords[a];
    }
    return index;
  }

  // The nearest neighbors of x in axis order (-e0, +e0, -e1, +e1, ...).
  // Periodic wraps; FrozenIgnorant omits neighbors outside the box, so the
  // result can have fewer than 2*dim entries.
  std::vector<SiteIndex> neighbors(SiteIndex x) const {
    require_valid(x);
    std::vector<SiteIndex> out;
    out.reserve(2 * dim_);
    SiteIndex stride = 1;
    SiteIndex rest = x;
    for (int a = 0; a < dim_; ++a) {
      const int c = static_cast<int>(rest % side_);
      rest /= side_;
      if (boundary_ == Boundary::Periodic) {
        const int minus = c == 0 ? side_ - 1 : c - 1;
        const int plus = c == side_ - 1 ? 0 : c + 1;
        out.push_back(x + (minus - c) * stride);
        out.push_back(x + (plus - c) * stride);
      } else {
        if (c > 0) out.push_back(x - stride);
        if (c < side_ - 1) out.push_back(x + stride);
      }
      stride *= side_;
    }
    return out;
  }

  // Site whose coordinates are all side/2; the canonical place to drop a
  // single initial spreader.
  SiteIndex center() const {
    SiteIndex index = 0;
    for (int a = dim_ - 1; a >= 0; --a) index = index * side_ + side_ / 2;
    return index;
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  int dim_;
  int side_;
  Boundary boundary_;
  SiteIndex count_;
};

// Flattened neighbor lists, built once per lattice for the hot loops.
class NeighborTable {
 public:
  explicit NeighborTable(const Lattice& lat) {
    const SiteIndex n = lat.site_count();
    offset_.resize(static_cast<std::size_t>(n) + 1, 0);
    flat_.reserve(static_cast<std::size_t>(n) * 2 * lat.dim());
    for (SiteIndex x = 0; x < n; ++x) {
      for (SiteIndex y : lat.neighbors(x)) flat_.push_back(y);
      offset_[static_cast<std::size_t>(x) + 1] = flat_.size();
    }
  }

  std::span<const SiteIndex> of(SiteIndex x) const {
    const auto lo = offset_[static_cast<std::size_t>(x)];
    const auto hi = offset_[static_cast<std::size_t>(x) + 1];
    return {flat_.data() + lo, hi - lo};
  }

 private:
  std::vector<SiteIndex> flat_;
  std::vector<std::size_t> offset_;
};

// A full assignment of states to the sites of a lattice.
class Configuration {
 public:
  explicit Configuration(const Lattice& lat, SiteState fill = SiteState::Ignorant)
      : lattice_(lat),
        states_(static_cast<std::size_t>(lat.site_count()), fill) {}

  const Lattice& lattice() const { return lattice_; }

  SiteState state(SiteIndex x) const { return states_[static_cast<std::size_t>(x)]; }

  void set_state(SiteIndex x, SiteState s) { states_[static_cast<std::size_t>(x)] = s; }

  SiteState at(SiteIndex x) const {
    lattice_.require_valid(x);
    return state(x);
  }

  std::span<const SiteState> states() const { return states_; }

  std::array<std::int64_t, 3> counts() const {
    std::array<std::int64_t, 3> c{0, 0, 0};
    for (SiteState s : states_) ++c[state_code(s)];
    return c;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Lattice lattice_;
  std::vector<SiteState> states_;
};

}  // namespace rumor
