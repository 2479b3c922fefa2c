#include "rhobound/prime_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "rhobound/errors.hpp"

namespace rhobound {

PrimeOracle::PrimeOracle(long long limit) : limit_(limit) {
  if (limit < 2) {
    throw std::invalid_argument("PrimeOracle: limit must be >= 2, got " +
                                std::to_string(limit));
  }
  // Plain Eratosthenes; byte flags are plenty fast for the limits used here.
  std::vector<std::uint8_t> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (long long p = 2; p * p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (long long m = p * p; m <= limit; m += p) {
      composite[static_cast<std::size_t>(m)] = 1;
    }
  }
  double estimate = limit >= 17 ? 1.2 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) : 16.0;
  primes_.reserve(static_cast<std::size_t>(estimate));
  for (long long x = 2; x <= limit; ++x) {
    if (!composite[static_cast<std::size_t>(x)]) primes_.push_back(x);
  }
}

long long PrimeOracle::pi(long long x) const {
  if (x > limit_) {
    throw OracleLimitError("pi(" + std::to_string(x) + ") exceeds sieve limit " +
                           std::to_string(limit_) + "; rebuild with a larger limit");
  }
  if (x < 2) return 0;
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
  return static_cast<long long>(it - primes_.begin());
}

long long PrimeOracle::nth_prime(long long m) const {
  if (m < 1) {
    throw std::invalid_argument("nth_prime: index must be >= 1, got " + std::to_string(m));
  }
  if (m > prime_count()) {
    throw OracleLimitError("nth_prime(" + std::to_string(m) + "): only " +
                           std::to_string(prime_count()) + " primes <= " +
                           std::to_string(limit_) + "; rebuild with a larger limit");
  }
  return primes_[static_cast<std::size_t>(m - 1)];
}

std::optional<long long> PrimeOracle::max_x_with_pi_at_most(long long m) const {
  if (m < 0) return std::nullopt;
  if (m >= prime_count()) {
    throw OracleLimitError("max_x_with_pi_at_most(" + std::to_string(m) +
                           ") needs the prime after p_" + std::to_string(m) +
                           ", beyond sieve limit " + std::to_string(limit_));
  }
  // pi(p_{m+1} - 1) == m and pi climbs to m + 1 at p_{m+1} itself.
  return primes_[static_cast<std::size_t>(m)] - 1;
}

bool PrimeOracle::is_prime(long long x) const {
  if (x > limit_) {
    throw OracleLimitError("is_prime(" + std::to_string(x) + ") exceeds sieve limit " +
                           std::to_string(limit_));
  }
  if (x < 2) return false;
  return std::binary_search(primes_.begin(), primes_.end(), x);
}

void PrimeOracle::dump_primes(std::ostream& out) const {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    out << (i + 1) << '\t' << primes_[i] << '\n';
  }
}

double rs_pi_upper(double x) {
  if (x < static_cast<double>(kRsValidityFloor)) {
    throw std::invalid_argument("rs_pi_upper is only valid for x >= 2");
  }
  return kRosserSchoenfeldC * x / std::log(x);
}

}  // namespace rhobound
