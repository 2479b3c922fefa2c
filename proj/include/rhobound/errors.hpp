#pragma once

#include <stdexcept>
#include <string>

namespace rhobound {

// A query needed primes beyond the sieve limit. The fix is to rebuild the
// oracle with a larger limit; the engine never extrapolates.
class OracleLimitError : public std::runtime_error {
 public:
  explicit OracleLimitError(const std::string& what) : std::runtime_error(what) {}
};

// The pipeline reached a state the underlying theorems rule out (e.g. an
// upper bound refined below a certified lower bound). Always a bug.
class InconsistencyError : public std::logic_error {
 public:
  explicit InconsistencyError(const std::string& what) : std::logic_error(what) {}
};

// A floating-point comparison landed inside the guard band; the result is
// reported as inconclusive instead of being forced to pass or fail.
class InconclusiveError : public std::runtime_error {
 public:
  explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rhobound
