#include "rhobound/corollary.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rhobound/errors.hpp"

namespace rhobound {

Rational f_value_exact(long long n, const Rational& C) {
  if (n < 2) {
    throw std::invalid_argument("f_value_exact: n must be >= 2; n = 1 is covered by "
                                "rho_g(1) <= " + std::to_string(kGeneralGroupN1Bound));
  }
  if (C < Rational(0)) {
    throw std::invalid_argument("f_value_exact: C must be >= 0");
  }
  if (n > 2'000'000) {
    throw std::overflow_error("f_value_exact: n^3 exceeds 64 bits; use f_value");
  }
  Rational n2(n * n);
  Rational n3(n * n * n);
  return Rational(28) * C + C * C / n2 + C / n3;
}

double f_value(long long n, double C) {
  if (n < 2) {
    throw std::invalid_argument("f_value: n must be >= 2");
  }
  if (C < 0.0) {
    throw std::invalid_argument("f_value: C must be >= 0");
  }
  double nn = static_cast<double>(n);
  return 28.0 * C + C * C / (nn * nn) + C / (nn * nn * nn);
}

CorollaryReport certify_corollary(const Ledger& ledger, const CrossoverResult& crossover) {
  long long n0 = crossover.n0;
  if (ledger.n_max() < n0 - 1) {
    throw std::invalid_argument("certify_corollary: ledger reaches n = " +
                                std::to_string(ledger.n_max()) +
                                " but the crossover needs entries up to " +
                                std::to_string(n0 - 1));
  }
  CorollaryReport report;
  report.tail_n0 = n0;
  report.tail_C = crossover.K;
  report.tail_bound = f_value_exact(n0, crossover.K);

  for (long long n = 2; n <= n0 - 1; ++n) {
    CorollaryRow row;
    row.n = n;
    row.C = Rational(ledger.entry(n).upper, n);
    row.f = f_value_exact(n, row.C);
    if (report.per_n.empty() || row.f > report.sup_value) {
      report.sup_value = row.f;
      report.sup_at = n;
    }
    report.per_n.push_back(row);
  }
  if (report.per_n.empty()) {
    report.sup_value = report.tail_bound;
    report.sup_at = n0;
  }

  report.tail_dominates = report.tail_bound > report.sup_value;
  Rational global_sup = std::max(report.sup_value, report.tail_bound);
  report.constant = global_sup.ceil();
  return report;
}

}  // namespace rhobound
