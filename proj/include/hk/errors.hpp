#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Error taxonomy mirrors the CLI exit codes: Error/InvalidInput map to
// usage (2), BudgetError and NoStabilizationError to inconclusive (3).

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed data: mixed dimensions, ring mismatches, bad arguments.
struct InvalidInput : Error {
  using Error::Error;
};

struct DimensionMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct RingMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};

/// Quotient has infinite length; carries the uncapped direction.
struct InfiniteLength : Error {
  explicit InfiniteLength(const std::string& what, int coordinate = -1)
      : Error(what), coordinate(coordinate) {}
  int coordinate;
};

/// Toric m-primary certificate not found within the search cap.
struct CannotCertify : Error {
  using Error::Error;
};

/// Enumeration or sampling budget exceeded; carries how far we got.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what, long completed = 0)
      : Error(what), completed(completed) {}
  long completed;
};

/// Hilbert-Samuel fit failed to verify within k_max.
struct NoStabilization : Error {
  using Error::Error;
};

/// Two independent computations disagreed: a bug trap, never user error.
struct InternalConsistency : Error {
  using Error::Error;
};

struct ParseError : InvalidInput {
  using InvalidInput::InvalidInput;
};

}  // namespace hk
