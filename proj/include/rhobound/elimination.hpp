#pragma once

#include <vector>

#include "rhobound/prime_oracle.hpp"

namespace rhobound {

// Candidate elimination for upper bounds on rho(n), the largest number of
// distinct primes that can divide the order of a finite solvable group whose
// element orders each involve at most n distinct primes.
//
// A candidate value k for rho(n) is attacked through a slack parameter
// lambda >= 0. For lambda up to a threshold L, the windowed prime-count
// condition
//
//     pi(k - 3n + lambda) <= k - (4n + 1)
//
// forces a contradiction directly; for every lambda > L the residual
// comparison
//
//     4n - L <= k - pi(k)
//
// does. When the residual comparison holds, no lambda survives and the
// candidate k is eliminated: rho(n) <= k - 1.

// Which elimination rule refine_upper applies.
//   kFull:   slack window + residual comparison.
//   kDirect: residual comparison at L = -1 only, i.e. eliminate k whenever
//            pi(k) + 4n <= k - 1. The coarser single-step refinement; kept
//            so prior bounds derived from it can be replayed.
enum class RefineRule { kFull, kDirect };

// One elimination attempt, with every pi evaluation on record so a checker
// can re-verify the comparisons without re-deriving L.
struct EliminationWitness {
  long long n = 0;
  long long k = 0;           // candidate value of rho(n)
  long long pi_budget = 0;   // k - (4n + 1), cap on the windowed pi values
  long long slack_limit = 0; // L: largest lambda satisfying the window, -1 if none
  long long pi_window = 0;   // pi(k - 3n + L); 0 and unused when L == -1
  long long pi_next = 0;     // pi(k - 3n + L + 1); 0 and unused when pi_budget < 0
  long long pi_k = 0;        // pi(k)
  bool residual_holds = false;
  bool eliminated = false;   // residual_holds, by construction

  bool operator==(const EliminationWitness&) const = default;
};

// Largest slack lambda >= 0 with pi(k - 3n + lambda) <= k - (4n + 1), or -1
// when no such lambda exists. A negative budget short-circuits to -1 with no
// pi query, since pi is never negative. Requires n >= 5 and k >= 2n.
long long slack_threshold(long long n, long long k, const PrimeOracle& oracle);

// The residual comparison 4n - L <= k - pi(k) covering every slack above L.
// At L == -1 this degenerates to pi(k) + 4n <= k - 1. Requires n >= 5, L >= -1.
bool residual_check(long long n, long long k, long long slack_limit,
                    const PrimeOracle& oracle);

// Full witness for one candidate. Requires n >= 5 and k > 2n (candidates at
// or below the certified lower bound are never attacked).
EliminationWitness eliminable(long long n, long long k, const PrimeOracle& oracle,
                              RefineRule rule = RefineRule::kFull);

struct RefineResult {
  long long upper = 0;  // first non-eliminated candidate
  std::vector<EliminationWitness> witnesses;  // seed down to upper, inclusive
};

// Starting at k = seed_upper, eliminate candidates downward and return the
// first k that survives. The stop-at-first-survivor rule is mandatory:
// eliminability is not monotone in k, and rho(n) <= k is only certified once
// every value in (k, seed_upper] has been eliminated. Throws
// InconsistencyError if the chain reaches the lower bound, a state the
// bounds being theorems rules out.
RefineResult refine_upper(long long n, long long seed_upper, long long lower,
                          const PrimeOracle& oracle,
                          RefineRule rule = RefineRule::kFull);

}  // namespace rhobound
