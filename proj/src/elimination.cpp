#include "rhobound/elimination.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rhobound/errors.hpp"

namespace rhobound {

namespace {

void require_n(long long n, const char* where) {
  if (n < 5) {
    throw std::invalid_argument(std::string(where) + ": n must be >= 5, got " +
                                std::to_string(n));
  }
}

}  // namespace

long long slack_threshold(long long n, long long k, const PrimeOracle& oracle) {
  require_n(n, "slack_threshold");
  if (k < 2 * n) {
    throw std::invalid_argument("slack_threshold: k must be >= 2n");
  }
  long long budget = k - 4 * n - 1;
  if (budget < 0) return -1;
  // Largest x with pi(x) <= budget, shifted back to lambda coordinates. The
  // window start k - 3n may be < 2 or even negative; pi(x) = 0 there, so no
  // special case is needed.
  long long max_x = *oracle.max_x_with_pi_at_most(budget);
  return std::max(-1LL, max_x - (k - 3 * n));
}

bool residual_check(long long n, long long k, long long slack_limit,
                    const PrimeOracle& oracle) {
  require_n(n, "residual_check");
  if (slack_limit < -1) {
    throw std::invalid_argument("residual_check: slack limit must be >= -1");
  }
  return 4 * n - slack_limit <= k - oracle.pi(k);
}

EliminationWitness eliminable(long long n, long long k, const PrimeOracle& oracle,
                              RefineRule rule) {
  require_n(n, "eliminable");
  if (k <= 2 * n) {
    throw std::invalid_argument("eliminable: candidate k must exceed the lower bound 2n");
  }
  EliminationWitness w;
  w.n = n;
  w.k = k;
  w.pi_budget = k - 4 * n - 1;
  w.slack_limit = rule == RefineRule::kDirect ? -1 : slack_threshold(n, k, oracle);
  if (rule == RefineRule::kFull && w.pi_budget >= 0) {
    w.pi_next = oracle.pi(k - 3 * n + w.slack_limit + 1);
    if (w.slack_limit >= 0) w.pi_window = oracle.pi(k - 3 * n + w.slack_limit);
  }
  w.pi_k = oracle.pi(k);
  w.residual_holds = residual_check(n, k, w.slack_limit, oracle);
  w.eliminated = w.residual_holds;
  return w;
}

RefineResult refine_upper(long long n, long long seed_upper, long long lower,
                          const PrimeOracle& oracle, RefineRule rule) {
  require_n(n, "refine_upper");
  if (lower < 2 * n) {
    throw std::invalid_argument("refine_upper: lower bound below 2n");
  }
  if (seed_upper < lower) {
    throw std::invalid_argument("refine_upper: seed below the lower bound");
  }
  RefineResult result;
  result.upper = seed_upper;
  if (seed_upper == lower) return result;  // nothing above the lower bound to attack
  for (long long k = seed_upper;; --k) {
    if (k == lower) {
      throw InconsistencyError(
          "refine_upper: every candidate in (" + std::to_string(lower) + ", " +
          std::to_string(seed_upper) + "] eliminated at n = " + std::to_string(n) +
          "; contradicts the certified lower bound");
    }
    EliminationWitness w = eliminable(n, k, oracle, rule);
    result.witnesses.push_back(w);
    if (!w.eliminated) {
      result.upper = k;
      break;
    }
  }
  return result;
}

}  // namespace rhobound
