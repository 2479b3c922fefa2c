#include "rhobound/bound_ledger.hpp"

#include <map>
#include <stdexcept>

#include "doctest.h"
#include "rhobound/errors.hpp"
#include "rhobound/prime_oracle.hpp"

using namespace rhobound;

TEST_CASE("base values are the four exact ones") {
  std::map<long long, long long> expected{{1, 2}, {2, 5}, {3, 8}, {4, 12}};
  CHECK(base_values() == expected);
}

TEST_CASE("recursion rule arithmetic") {
  CHECK(recursion_upper(12, 5) == 18);
  CHECK(recursion_upper(45, 10) == 56);
  CHECK(recursion_upper(0, 2) == 3);
  CHECK_THROWS_AS(recursion_upper(10, 1), std::invalid_argument);
}

TEST_CASE("quadratic rule arithmetic and validity floor") {
  CHECK(quadratic_upper(4) == 12);
  CHECK(quadratic_upper(5) == 18);
  CHECK(quadratic_upper(6) == 25);
  CHECK(quadratic_upper(7) == 33);
  CHECK(quadratic_upper(8) == 42);
  CHECK(quadratic_upper(9) == 52);
  CHECK(quadratic_upper(10) == 63);
  CHECK_THROWS_AS(quadratic_upper(3), std::invalid_argument);
}

TEST_CASE("lower bound slopes") {
  CHECK(lower_bound(7, 2) == 14);
  CHECK(lower_bound(266, 2) == 532);
  CHECK(lower_bound(266, 3) == 798);  // hypothetical slope, flagged by callers
  CHECK_THROWS_AS(lower_bound(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound(0, 2), std::invalid_argument);
}

TEST_CASE("pipeline reproduces the refined table") {
  PrimeOracle oracle(100'000);
  Ledger ledger = Ledger::build(12, oracle);

  for (const auto& [n, v] : base_values()) {
    CHECK(ledger.entry(n).lower == v);
    CHECK(ledger.entry(n).upper == v);
  }
  CHECK(ledger.entry(5).upper == 18);
  CHECK(ledger.entry(6).upper == 25);
  CHECK(ledger.entry(7).upper == 33);
  CHECK(ledger.entry(8).upper == 40);
  CHECK(ledger.entry(9).upper == 45);
  CHECK(ledger.entry(10).upper == 49);
  CHECK(ledger.entry(11).upper == 53);
  CHECK(ledger.entry(12).upper == 57);
}

TEST_CASE("entry provenance tracks every rule and upper is the running min") {
  PrimeOracle oracle(100'000);
  Ledger ledger = Ledger::build(12, oracle);

  const BoundEntry& e9 = ledger.entry(9);
  REQUIRE(e9.provenance.size() == 3);
  CHECK(e9.provenance[0] == RuleApplication{Rule::kQuadratic, 52});
  CHECK(e9.provenance[1] == RuleApplication{Rule::kRecursion, 50});
  CHECK(e9.provenance[2] == RuleApplication{Rule::kElimination, 45});
  CHECK(e9.seed == 50);
  for (const RuleApplication& app : e9.provenance) {
    CHECK(e9.upper <= app.value);
  }
  CHECK(ledger.entry(1).provenance == std::vector<RuleApplication>{{Rule::kBase, 2}});
}

TEST_CASE("ledger invariants hold out to 265") {
  PrimeOracle oracle(1'000'000);
  Ledger ledger = Ledger::build(265, oracle);

  for (long long n = 5; n <= 265; ++n) {
    const BoundEntry& e = ledger.entry(n);
    REQUIRE(e.upper <= ledger.entry(n - 1).upper + n + 1);
    REQUIRE(e.upper <= quadratic_upper(n));
    REQUIRE(e.upper >= 2 * n);
    REQUIRE(e.upper <= e.seed);  // refinement never increases the seed
    REQUIRE(e.lower <= e.upper);
  }
  for (long long n = 9; n <= 265; ++n) {
    REQUIRE(ledger.entry(n).upper <= n * (n + 3) / 2 - 9);
  }
}

TEST_CASE("construction is deterministic") {
  PrimeOracle oracle(50'000);
  Ledger a = Ledger::build(40, oracle);
  Ledger b = Ledger::build(40, oracle);
  REQUIRE(a.n_max() == b.n_max());
  for (long long n = 1; n <= a.n_max(); ++n) {
    const BoundEntry& ea = a.entry(n);
    const BoundEntry& eb = b.entry(n);
    REQUIRE(ea.upper == eb.upper);
    REQUIRE(ea.lower == eb.lower);
    REQUIRE(ea.provenance == eb.provenance);
    REQUIRE(ea.witnesses == eb.witnesses);
  }
}

TEST_CASE("entry callback streams entries in order") {
  PrimeOracle oracle(10'000);
  std::vector<long long> seen;
  Ledger::build(8, oracle, RefineRule::kFull,
                [&](const BoundEntry& e) { seen.push_back(e.n); });
  CHECK(seen == std::vector<long long>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("linear verification at K = 5 out to 265") {
  PrimeOracle oracle(1'000'000);
  Ledger ledger = Ledger::build(265, oracle);
  LinearReport report = verify_linear(ledger, Rational(5));
  CHECK(report.pass);
  CHECK(report.equality_set == std::vector<long long>{8, 9});
  CHECK(report.max_ratio == Rational(5));
  CHECK(report.max_at == 8);
}

TEST_CASE("linear verification fails at K = 4") {
  PrimeOracle oracle(100'000);
  Ledger ledger = Ledger::build(12, oracle);
  LinearReport report = verify_linear(ledger, Rational(4));
  CHECK_FALSE(report.pass);
  bool failed_at_8 = false;
  for (const LinearRow& row : report.rows) {
    if (row.n == 8 && !row.pass) failed_at_8 = true;
  }
  CHECK(failed_at_8);  // 40 > 32
}

TEST_CASE("tiny ledger passes trivially") {
  PrimeOracle oracle(100);
  Ledger ledger = Ledger::build(4, oracle);
  LinearReport report = verify_linear(ledger, Rational(5));
  CHECK(report.pass);
  CHECK(report.rows[0].pass);  // 2 <= 5
}

TEST_CASE("direct rule reproduces the coarser n = 9 bound") {
  PrimeOracle oracle(100'000);
  Ledger ledger = Ledger::build(9, oracle, RefineRule::kDirect);
  CHECK(ledger.entry(8).upper == 42);  // direct rule cannot improve n = 8
  CHECK(ledger.entry(9).upper == 51);
}

TEST_CASE("build rejects bad inputs") {
  PrimeOracle oracle(1'000);
  CHECK_THROWS_AS(Ledger::build(3, oracle), std::invalid_argument);
  Ledger ledger = Ledger::build(6, oracle);
  CHECK_THROWS_AS(ledger.entry(0), std::out_of_range);
  CHECK_THROWS_AS(ledger.entry(7), std::out_of_range);
}
