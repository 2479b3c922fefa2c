#include "rhobound/asymptotic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhobound/errors.hpp"

namespace rhobound {

namespace {

bool tail_defined(long long n, double c, int slope) {
  if (n < 1 || static_cast<double>(slope) * static_cast<double>(n) < 2.0) return false;
  double lg = std::log(static_cast<double>(slope) * static_cast<double>(n));
  return 1.0 - c / lg > 0.0;
}

}  // namespace

double tail_value(long long n, double c, int slope) {
  if (slope < 1) {
    throw std::invalid_argument("tail_value: slope must be >= 1");
  }
  if (n < 1 || static_cast<double>(slope) * static_cast<double>(n) < 2.0) {
    throw std::invalid_argument("tail_value: requires slope * n >= 2");
  }
  double lg = std::log(static_cast<double>(slope) * static_cast<double>(n));
  double denom = 1.0 - c / lg;
  if (denom <= 0.0) {
    throw std::invalid_argument("tail_value: denominator <= 0 at n = " + std::to_string(n) +
                                "; the bound is vacuous there");
  }
  return 4.0 / denom;
}

CrossoverResult find_crossover(const Rational& K, double c, int slope) {
  if (slope != 2 && slope != 3) {
    throw std::invalid_argument("find_crossover: slope must be 2 or 3");
  }
  if (K <= Rational(4)) {
    throw std::invalid_argument("find_crossover: no crossover exists for K <= 4");
  }
  double kd = K.to_double();

  // Closed-form seed: slope * n must exceed exp(c K / (K - 4)).
  double threshold = std::exp(c * kd / (kd - 4.0));
  long long n0 = static_cast<long long>(std::floor(threshold / slope)) + 1;
  if (n0 < 1) n0 = 1;

  // Certify by direct evaluation: walk to the exact boundary.
  while (n0 > 1 && tail_defined(n0 - 1, c, slope) && tail_value(n0 - 1, c, slope) < kd) {
    --n0;
  }
  while (!tail_defined(n0, c, slope) || tail_value(n0, c, slope) >= kd) {
    ++n0;
  }

  CrossoverResult result;
  result.K = K;
  result.c = c;
  result.slope = slope;
  result.n0 = n0;
  result.value_at_n0 = tail_value(n0, c, slope);
  result.margin = kd - result.value_at_n0;
  if (result.margin < kMarginGuard) {
    throw InconclusiveError("find_crossover: margin " + std::to_string(result.margin) +
                            " at n0 = " + std::to_string(n0) + " is below the guard band");
  }
  result.before_defined = n0 > 1 && tail_defined(n0 - 1, c, slope);
  if (result.before_defined) {
    result.value_before = tail_value(n0 - 1, c, slope);
    result.margin_before = result.value_before - kd;
    if (result.value_before < kd) {
      throw InconsistencyError("find_crossover: n0 not minimal");
    }
    if (result.margin_before < kMarginGuard) {
      throw InconclusiveError("find_crossover: margin " + std::to_string(result.margin_before) +
                              " at n0 - 1 = " + std::to_string(n0 - 1) +
                              " is below the guard band");
    }
  }
  return result;
}

bool tail_monotone_check(long long n0, long long n_probe, double c, int slope) {
  if (n_probe <= n0) {
    throw std::invalid_argument("tail_monotone_check: probe must exceed n0");
  }
  double prev = tail_value(n0, c, slope);  // validates the left endpoint

  // Geometric grid from n0 to n_probe; ~16 intermediate points keep adjacent
  // values far enough apart that strict comparison is meaningful.
  std::vector<long long> grid;
  double ratio = std::pow(static_cast<double>(n_probe) / static_cast<double>(n0), 1.0 / 16.0);
  double x = static_cast<double>(n0);
  for (int i = 0; i < 16; ++i) {
    x *= ratio;
    long long xi = static_cast<long long>(x);
    if (xi > n0 && xi < n_probe && (grid.empty() || xi > grid.back())) grid.push_back(xi);
  }
  grid.push_back(n_probe);

  for (long long n : grid) {
    double v = tail_value(n, c, slope);
    if (!(v < prev)) return false;
    prev = v;
  }
  return true;
}

}  // namespace rhobound
