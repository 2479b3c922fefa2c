#pragma once

#include "rhobound/rational.hpp"

namespace rhobound {

// Every strict floating-point inequality in this module must hold by at
// least this margin, or the operation reports inconclusive instead of
// pass/fail. The margins that matter in practice are ~3e-4, far above
// double rounding noise, so plain doubles plus this guard suffice.
inline constexpr double kMarginGuard = 1e-9;

// The analytic tail bound 4 / (1 - c / log(slope * n)): once rho(n) >=
// slope * n is known, rho(n) <= pi(rho(n)) + 4n and pi(x) <= c x / log x
// rearrange to rho(n) <= tail_value(n) * n. Rejects arguments where the
// denominator is <= 0 (the bound is vacuous there).
double tail_value(long long n, double c, int slope);

struct CrossoverResult {
  Rational K;               // target ratio
  double c = 0.0;           // analytic pi constant
  int slope = 2;            // coefficient in rho(n) >= slope * n
  long long n0 = 0;         // minimal n with tail_value(n) < K
  double value_at_n0 = 0.0;
  double margin = 0.0;      // K - value_at_n0
  bool before_defined = false;  // tail_value(n0 - 1) exists and is positive
  double value_before = 0.0;    // tail_value(n0 - 1) when defined
  double margin_before = 0.0;   // value_before - K when defined
};

// Minimal integer n0 with tail_value(n0, c, slope) < K. The closed form
// slope * n0 > exp(c K / (K - 4)) only seeds the search; certification comes
// from direct evaluation at n0 and n0 - 1, each side holding by at least
// kMarginGuard (otherwise InconclusiveError). Rejects K <= 4, for which no
// crossover exists.
CrossoverResult find_crossover(const Rational& K, double c, int slope);

// True iff tail_value is strictly decreasing on a sampled grid from n0 to
// n_probe. log(slope * n) increases with n, so once the denominator is
// positive the value decreases for all larger n; the grid makes the claim
// directly checkable. Requires n_probe > n0.
bool tail_monotone_check(long long n0, long long n_probe, double c, int slope);

}  // namespace rhobound
