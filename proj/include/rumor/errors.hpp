#pragma once

#include <stdexcept>
#include <string>

namespace rumor {

// Invalid user-supplied parameters or malformed config/input files.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal consistency check failed: rate bookkeeping, an impossible
// transition, or a coupling dominance violation.
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

// A request exceeds a hard size limit (oracle state space, lattice size).
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rumor
