#pragma once

#include <functional>
#include <map>
#include <vector>

#include "rhobound/elimination.hpp"
#include "rhobound/prime_oracle.hpp"
#include "rhobound/rational.hpp"

namespace rhobound {

// Rules that can contribute a bound to an entry. kQuadraticImproved
// (n(n+3)/2 - 9 for n >= 9) is a consequence of the pipeline and is checked
// as a property, never used as a seed; feeding it back in would be circular.
enum class Rule {
  kBase,
  kRecursion,
  kQuadratic,
  kQuadraticImproved,
  kElimination,
};

const char* rule_name(Rule rule);

struct RuleApplication {
  Rule rule;
  long long value;

  bool operator==(const RuleApplication&) const = default;
};

// Best-known bounds on rho(n) for one n, with the full derivation attached.
struct BoundEntry {
  long long n = 0;
  long long lower = 0;
  long long upper = 0;
  // Seed breakdown, populated for n >= 5 (zero for base entries).
  long long quadratic = 0;
  long long recursion = 0;
  long long seed = 0;
  std::vector<RuleApplication> provenance;          // every rule application, in order
  std::vector<EliminationWitness> witnesses;        // the refinement chain
};

// Exact values rho(1..4) = 2, 5, 8, 12, taken as axioms: their proofs are
// group-theoretic and carry no data this engine could recheck.
std::map<long long, long long> base_values();

// rho(n) <= rho(n-1) + n + 1, re-indexed from rho(n+1) <= rho(n) + n + 2.
// Requires n >= 2.
long long recursion_upper(long long prev_upper, long long n);

// rho(n) <= n(n+3)/2 - 2, valid for n >= 4 only.
long long quadratic_upper(long long n);

// rho(n) >= slope * n. slope = 2 is unconditional; slope = 3 is accepted
// only as an explicitly flagged hypothetical and never feeds certified
// output.
long long lower_bound(long long n, int slope);

// Bounds for n = 1..n_max, built by the deterministic pipeline: base values,
// then for each n >= 5 the seed min(quadratic, recursion) refined by
// elimination. Construction is sequential in n (the recursion rule chains
// entries); the result is immutable.
class Ledger {
 public:
  using EntryCallback = std::function<void(const BoundEntry&)>;

  Ledger() = default;

  static Ledger build(long long n_max, const PrimeOracle& oracle,
                      RefineRule rule = RefineRule::kFull,
                      const EntryCallback& on_entry = {});

  long long n_max() const { return n_max_; }
  const BoundEntry& entry(long long n) const;

 private:
  long long n_max_ = 0;
  std::vector<BoundEntry> entries_;  // index 0 unused; entries_[n] holds n
};

struct LinearRow {
  long long n = 0;
  long long upper = 0;
  bool pass = false;
  bool equality = false;
};

struct LinearReport {
  bool pass = false;
  Rational max_ratio;
  long long max_at = 0;                 // smallest n attaining max_ratio
  std::vector<long long> equality_set;  // n with upper(n) == K * n exactly
  std::vector<LinearRow> rows;
};

// Checks upper(n) <= K * n for every ledger entry, in exact rational
// arithmetic. Reports the equality set and the worst ratio.
LinearReport verify_linear(const Ledger& ledger, const Rational& K);

}  // namespace rhobound
