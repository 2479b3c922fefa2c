#pragma once

#include <vector>

#include "rhobound/asymptotic.hpp"
#include "rhobound/bound_ledger.hpp"
#include "rhobound/rational.hpp"

namespace rhobound {

// The linear solvable-group bound feeds a quartic bound for arbitrary finite
// groups: rho_g(n) <= n^4 * f(n), where with C(n) = upper(n) / n
//
//     f(n) = 28 C(n) + C(n)^2 / n^2 + C(n) / n^3.
//
// f is evaluated in exact rational arithmetic; the certified constant must
// not depend on rounding. The n = 1 case is covered separately by the known
// fact rho_g(1) <= 4, recorded as an axiom.
inline constexpr long long kGeneralGroupN1Bound = 4;

// Exact f(n, C) for n >= 2, C >= 0.
Rational f_value_exact(long long n, const Rational& C);

// Double-precision f for display and large-n sanity checks.
double f_value(long long n, double C);

struct CorollaryRow {
  long long n = 0;
  Rational C;
  Rational f;
};

struct CorollaryReport {
  std::vector<CorollaryRow> per_n;  // n = 2 .. n0 - 1, from ledger C(n)
  Rational sup_value;               // max f over per_n (tail_bound if per_n empty)
  long long sup_at = 0;             // smallest n attaining sup_value
  Rational tail_bound;              // f(n0, K): dominates f(n, C(n)) for n >= n0
  long long tail_n0 = 0;
  Rational tail_C;                  // = K
  bool tail_dominates = false;      // tail_bound > sup_value (ledger too coarse)
  long long constant = 0;           // ceil(max(sup_value, tail_bound))
  long long n1_bound = kGeneralGroupN1Bound;
};

// Evaluates f over the ledger range [2, n0 - 1] and bounds the tail by
// f(n0, K), valid because the crossover certifies C(n) <= K for n >= n0 and
// f decreases in n for fixed C. Refuses to certify when the ledger is
// shorter than the crossover requires.
CorollaryReport certify_corollary(const Ledger& ledger, const CrossoverResult& crossover);

}  // namespace rhobound
