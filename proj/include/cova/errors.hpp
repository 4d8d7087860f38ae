#pragma once

#include <stdexcept>
#include <string>

namespace cova {

/// Raised when a request needs a weight space beyond the configured truncation.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A rational quantity that must be integral (divided power, lattice
/// coordinate, specialization to a ring) was not.
struct IntegralityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A statement that holds as a theorem failed on concrete data; this always
/// points at a construction bug.
struct TheoremViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cova
