#include "rhobound/bound_ledger.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rhobound/errors.hpp"

namespace rhobound {

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::kBase: return "base";
    case Rule::kRecursion: return "recursion";
    case Rule::kQuadratic: return "quadratic";
    case Rule::kQuadraticImproved: return "quadratic_improved";
    case Rule::kElimination: return "elimination";
  }
  return "unknown";
}

std::map<long long, long long> base_values() {
  return {{1, 2}, {2, 5}, {3, 8}, {4, 12}};
}

long long recursion_upper(long long prev_upper, long long n) {
  if (n < 2) {
    throw std::invalid_argument("recursion_upper: n must be >= 2");
  }
  return prev_upper + n + 1;
}

long long quadratic_upper(long long n) {
  if (n < 4) {
    throw std::invalid_argument("quadratic_upper: only valid for n >= 4, got " +
                                std::to_string(n));
  }
  return n * (n + 3) / 2 - 2;
}

long long lower_bound(long long n, int slope) {
  if (n < 1) {
    throw std::invalid_argument("lower_bound: n must be >= 1");
  }
  if (slope != 2 && slope != 3) {
    throw std::invalid_argument("lower_bound: slope must be 2 or 3, got " +
                                std::to_string(slope));
  }
  return static_cast<long long>(slope) * n;
}

Ledger Ledger::build(long long n_max, const PrimeOracle& oracle, RefineRule rule,
                     const EntryCallback& on_entry) {
  if (n_max < 4) {
    throw std::invalid_argument("Ledger::build: n_max must be >= 4, got " +
                                std::to_string(n_max));
  }
  Ledger ledger;
  ledger.n_max_ = n_max;
  ledger.entries_.resize(static_cast<std::size_t>(n_max) + 1);

  for (const auto& [n, value] : base_values()) {
    BoundEntry& e = ledger.entries_[static_cast<std::size_t>(n)];
    e.n = n;
    e.lower = value;
    e.upper = value;
    e.provenance.push_back({Rule::kBase, value});
    if (on_entry) on_entry(e);
  }

  for (long long n = 5; n <= n_max; ++n) {
    BoundEntry& e = ledger.entries_[static_cast<std::size_t>(n)];
    e.n = n;
    e.lower = lower_bound(n, 2);
    e.quadratic = quadratic_upper(n);
    e.recursion = recursion_upper(ledger.entries_[static_cast<std::size_t>(n - 1)].upper, n);
    e.seed = std::min(e.quadratic, e.recursion);
    e.provenance.push_back({Rule::kQuadratic, e.quadratic});
    e.provenance.push_back({Rule::kRecursion, e.recursion});

    RefineResult refined = refine_upper(n, e.seed, e.lower, oracle, rule);
    e.upper = refined.upper;
    e.witnesses = std::move(refined.witnesses);
    e.provenance.push_back({Rule::kElimination, e.upper});

    if (e.upper < e.lower) {
      throw InconsistencyError("Ledger::build: upper bound " + std::to_string(e.upper) +
                               " fell below lower bound " + std::to_string(e.lower) +
                               " at n = " + std::to_string(n));
    }
    if (on_entry) on_entry(e);
  }
  return ledger;
}

const BoundEntry& Ledger::entry(long long n) const {
  if (n < 1 || n > n_max_) {
    throw std::out_of_range("Ledger::entry: n = " + std::to_string(n) +
                            " outside [1, " + std::to_string(n_max_) + "]");
  }
  return entries_[static_cast<std::size_t>(n)];
}

LinearReport verify_linear(const Ledger& ledger, const Rational& K) {
  LinearReport report;
  report.pass = true;
  for (long long n = 1; n <= ledger.n_max(); ++n) {
    const BoundEntry& e = ledger.entry(n);
    Rational ratio(e.upper, n);
    LinearRow row;
    row.n = n;
    row.upper = e.upper;
    row.pass = ratio <= K;
    row.equality = ratio == K;
    if (!row.pass) report.pass = false;
    if (row.equality) report.equality_set.push_back(n);
    if (n == 1 || ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.max_at = n;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace rhobound
