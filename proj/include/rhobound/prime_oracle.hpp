#pragma once

#include <optional>
#include <ostream>
#include <vector>

namespace rhobound {

// Exact prime counting over [0, limit], backed by a sieve of Eratosthenes.
// Every inequality the rest of the engine checks reduces to calls into this
// class, so queries past the limit throw OracleLimitError loudly rather than
// extrapolate. Immutable once built; safe to share across threads.
class PrimeOracle {
 public:
  explicit PrimeOracle(long long limit);

  long long limit() const { return limit_; }
  long long prime_count() const { return static_cast<long long>(primes_.size()); }
  const std::vector<long long>& primes() const { return primes_; }

  // pi(x), the number of primes <= x. Defined as 0 for every x < 2, negative
  // x included, so callers can evaluate it uniformly. Requires x <= limit.
  long long pi(long long x) const;

  // The m-th prime, 1-based: nth_prime(1) == 2.
  long long nth_prime(long long m) const;

  // Largest x with pi(x) <= m, i.e. p_{m+1} - 1 for 0 <= m < prime_count().
  // Empty for m < 0: pi is never negative, so no x qualifies.
  std::optional<long long> max_x_with_pi_at_most(long long m) const;

  bool is_prime(long long x) const;

  // Debug dump of "m <tab> p_m" lines.
  void dump_primes(std::ostream& out) const;

 private:
  long long limit_;
  std::vector<long long> primes_;
};

// Rosser-Schoenfeld analytic upper bound pi(x) <= c * x / log x for x >= 2.
inline constexpr double kRosserSchoenfeldC = 1.25506;
inline constexpr long long kRsValidityFloor = 2;

double rs_pi_upper(double x);

}  // namespace rhobound
