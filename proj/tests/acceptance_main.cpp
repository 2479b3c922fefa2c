// Acceptance suite: replays every headline claim end to end and prints one
// pass/fail line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rhobound/asymptotic.hpp"
#include "rhobound/bound_ledger.hpp"
#include "rhobound/certificate.hpp"
#include "rhobound/checker.hpp"
#include "rhobound/commands.hpp"
#include "rhobound/corollary.hpp"
#include "rhobound/elimination.hpp"
#include "rhobound/prime_oracle.hpp"
#include "trial_division.hpp"

using namespace rhobound;

namespace {

int g_failures = 0;

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void require(bool condition, const std::string& detail) {
    if (!condition && problems_.size() < 8) problems_.push_back(detail);
    if (!condition) ++problem_count_;
  }

  void finish() {
    if (problem_count_ == 0) {
      std::printf("[PASS] %s\n", name_.c_str());
      return;
    }
    ++g_failures;
    std::printf("[FAIL] %s (%zu problem%s)\n", name_.c_str(), problem_count_,
                problem_count_ == 1 ? "" : "s");
    for (const std::string& p : problems_) std::printf("       %s\n", p.c_str());
  }

 private:
  std::string name_;
  std::vector<std::string> problems_;
  std::size_t problem_count_ = 0;
};

void run(const std::string& name, const std::function<void(Criterion&)>& body) {
  Criterion c(name);
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  c.finish();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  std::printf("acceptance: bound certification pipeline\n");

  PrimeOracle oracle(1'000'000);
  Ledger ledger265 = Ledger::build(265, oracle);

  run("1. exact base values rho(1..4) = 2, 5, 8, 12", [&](Criterion& c) {
    const long long expected[] = {0, 2, 5, 8, 12};
    for (long long n = 1; n <= 4; ++n) {
      const BoundEntry& e = ledger265.entry(n);
      c.require(e.lower == expected[n] && e.upper == expected[n],
                "entry " + std::to_string(n) + " is [" + std::to_string(e.lower) + ", " +
                    std::to_string(e.upper) + "]");
    }
  });

  run("2. initial quadratic bounds (5,18) (6,25) (7,33) (8,42) (9,52) (10,63)",
      [&](Criterion& c) {
        const std::pair<long long, long long> expected[] = {{5, 18}, {6, 25}, {7, 33},
                                                            {8, 42}, {9, 52}, {10, 63}};
        for (auto [n, v] : expected) {
          c.require(quadratic_upper(n) == v,
                    "quadratic_upper(" + std::to_string(n) + ") != " + std::to_string(v));
        }
      });

  run("3. refined table (8,40) (9,45) (10,49) (11,53) (12,57) in under 1 s",
      [&](Criterion& c) {
        auto start = std::chrono::steady_clock::now();
        Ledger ledger = Ledger::build(12, oracle);
        double elapsed = seconds_since(start);
        const std::pair<long long, long long> expected[] = {{8, 40}, {9, 45}, {10, 49},
                                                            {11, 53}, {12, 57}};
        for (auto [n, v] : expected) {
          c.require(ledger.entry(n).upper == v,
                    "upper(" + std::to_string(n) + ") = " +
                        std::to_string(ledger.entry(n).upper) + ", want " + std::to_string(v));
        }
        c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
      });

  run("4. n = 9 walkthrough: k = 51 gives L = 22 and 14 <= 36; 46..51 all "
      "eliminated; k = 45 gives L = 4 and 32 > 31",
      [&](Criterion& c) {
        EliminationWitness w51 = eliminable(9, 51, oracle);
        c.require(w51.slack_limit == 22, "L at 51 is " + std::to_string(w51.slack_limit));
        c.require(4 * 9 - w51.slack_limit == 14, "left side at 51");
        c.require(w51.k - w51.pi_k == 36, "right side at 51");
        c.require(w51.eliminated, "51 not eliminated");
        for (long long k = 46; k <= 51; ++k) {
          c.require(eliminable(9, k, oracle).eliminated,
                    "k = " + std::to_string(k) + " not eliminated");
        }
        EliminationWitness w45 = eliminable(9, 45, oracle);
        c.require(w45.slack_limit == 4, "L at 45 is " + std::to_string(w45.slack_limit));
        c.require(4 * 9 - w45.slack_limit == 32, "left side at 45");
        c.require(w45.k - w45.pi_k == 31, "right side at 45");
        c.require(!w45.eliminated, "45 wrongly eliminated");
      });

  run("5. upper(n) <= 5n for all n <= 265, equality exactly at {8, 9}, under 10 s",
      [&](Criterion& c) {
        auto start = std::chrono::steady_clock::now();
        PrimeOracle fresh(1'000'000);
        Ledger ledger = Ledger::build(265, fresh);
        LinearReport report = verify_linear(ledger, Rational(5));
        double elapsed = seconds_since(start);
        c.require(report.pass, "a ratio exceeds 5");
        c.require(report.equality_set == std::vector<long long>{8, 9},
                  "equality set is not {8, 9}");
        c.require(elapsed < 10.0, "took " + std::to_string(elapsed) + " s");
      });

  run("6. crossover at 266: value in (4.9995, 5) with 1e-9 margins, 265 still >= 5, "
      "slope-3 value 4.925041 +- 1e-5",
      [&](Criterion& c) {
        CrossoverResult x = find_crossover(Rational(5), kRosserSchoenfeldC, 2);
        c.require(x.n0 == 266, "n0 = " + std::to_string(x.n0));
        c.require(x.value_at_n0 > 4.9995 && x.value_at_n0 < 5.0,
                  "value " + format_real(x.value_at_n0));
        c.require(x.margin >= 1e-9, "margin below guard");
        c.require(x.before_defined && x.value_before >= 5.0, "value at 265 not >= 5");
        c.require(x.margin_before >= 1e-9, "margin at 265 below guard");
        double slope3 = tail_value(266, kRosserSchoenfeldC, 3);
        c.require(std::fabs(slope3 - 4.925041) <= 1e-5,
                  "slope-3 value " + format_real(slope3));
      });

  run("7. improved quadratic: upper(n) <= n(n+3)/2 - 9 for 9 <= n <= 265",
      [&](Criterion& c) {
        for (long long n = 9; n <= 265; ++n) {
          c.require(ledger265.entry(n).upper <= n * (n + 3) / 2 - 9,
                    "fails at n = " + std::to_string(n));
        }
      });

  run("8. corollary: f(2,7) = 209.125 exactly; pipeline sup = 140 + 25/64 + 5/512 "
      "<= 140.41 at n = 8; constant 141",
      [&](Criterion& c) {
        c.require(f_value_exact(2, Rational(7)) == Rational(1673, 8), "f(2,7) != 1673/8");
        c.require(Rational(1673, 8).to_double() == 209.125, "1673/8 != 209.125");
        CrossoverResult x = find_crossover(Rational(5), kRosserSchoenfeldC, 2);
        CorollaryReport report = certify_corollary(ledger265, x);
        c.require(report.sup_value == Rational(71885, 512),
                  "sup = " + report.sup_value.str());
        c.require(report.sup_value == Rational(140) + Rational(25, 64) + Rational(5, 512),
                  "sup decomposition");
        c.require(report.sup_at == 8, "sup at n = " + std::to_string(report.sup_at));
        c.require(report.sup_value <= Rational(14041, 100), "sup above 140.41");
        c.require(report.constant == 141, "constant = " + std::to_string(report.constant));
      });

  run("9. oracle properties: trial division to 1e4, analytic bound to the limit, "
      "inverse-pi identities for all m",
      [&](Criterion& c) {
        TrialPiTable trial(10'000);
        for (long long x = 0; x <= 10'000; ++x) {
          if (oracle.pi(x) != trial(x)) {
            c.require(false, "pi(" + std::to_string(x) + ") disagrees with trial division");
            break;
          }
        }
        for (long long x = 2; x <= oracle.limit(); ++x) {
          if (!(static_cast<double>(oracle.pi(x)) <= rs_pi_upper(static_cast<double>(x)))) {
            c.require(false, "analytic bound fails at x = " + std::to_string(x));
            break;
          }
        }
        for (long long m = 0; m < oracle.prime_count(); ++m) {
          long long x = *oracle.max_x_with_pi_at_most(m);
          bool ok = oracle.pi(x) == m &&
                    (x + 1 > oracle.limit() || oracle.pi(x + 1) == m + 1);
          if (!ok) {
            c.require(false, "inverse-pi identity fails at m = " + std::to_string(m));
            break;
          }
        }
      });

  run("10. engine properties: brute-force slack equivalence and downward closure "
      "for 5 <= n <= 50, non-monotone pair at n = 13",
      [&](Criterion& c) {
        TrialPiTable trial(12'000);
        for (long long n = 5; n <= 50; ++n) {
          for (long long k = 2 * n + 1; k <= quadratic_upper(n); ++k) {
            long long budget = k - 4 * n - 1;
            long long brute = -1;
            if (budget >= 0) {
              long long lambda = 0;
              while (trial(k - 3 * n + lambda) <= budget) ++lambda;
              brute = lambda - 1;
            }
            long long L = slack_threshold(n, k, oracle);
            if (L != brute) {
              c.require(false, "slack mismatch at n = " + std::to_string(n) +
                                   ", k = " + std::to_string(k));
              break;
            }
            if (L >= 0 && budget >= 0) {
              bool closed = trial(k - 3 * n) <= budget && trial(k - 3 * n + L) <= budget &&
                            trial(k - 3 * n + L + 1) > budget;
              if (!closed) {
                c.require(false, "window not downward closed at n = " + std::to_string(n) +
                                     ", k = " + std::to_string(k));
                break;
              }
            }
            bool direct = trial(k) + 4 * n <= k - 1;
            if (residual_check(n, k, -1, oracle) != direct) {
              c.require(false, "L = -1 residual differs from the direct rule at n = " +
                                   std::to_string(n) + ", k = " + std::to_string(k));
              break;
            }
          }
        }
        long long brute64 = -1, brute63 = -1;
        {
          long long lambda = 0;
          while (trial(64 - 39 + lambda) <= 64 - 53) ++lambda;
          brute64 = lambda - 1;
          lambda = 0;
          while (trial(63 - 39 + lambda) <= 63 - 53) ++lambda;
          brute63 = lambda - 1;
        }
        bool elim64 = 4 * 13 - brute64 <= 64 - trial(64);
        bool elim63 = 4 * 13 - brute63 <= 63 - trial(63);
        c.require(elim64 && eliminable(13, 64, oracle).eliminated,
                  "k = 64 should be eliminable at n = 13");
        c.require(!elim63 && !eliminable(13, 63, oracle).eliminated,
                  "k = 63 should survive at n = 13");
      });

  run("11. certificate: emit/check round trip passes and a mutated field is caught",
      [&](Criterion& c) {
        RunConfig config;  // defaults reproduce the full pipeline
        auto path = std::filesystem::temp_directory_path() / "rhobound_acceptance.cert";
        config.certificate_path = path.string();
        std::ostringstream out, err;
        int rc = run_verify(config, out, err);
        c.require(rc == 0, "verify exited with " + std::to_string(rc));

        std::ifstream in(path);
        Certificate cert = parse_certificate(in);
        CheckReport clean = check_certificate(cert);
        c.require(clean.ok, "fresh certificate did not re-check");

        std::size_t target = 0;
        for (std::size_t i = 0; i < cert.records.size(); ++i) {
          if (std::holds_alternative<CertElim>(cert.records[i])) target = i;
        }
        c.require(target != 0, "no elimination records in the certificate");
        std::get<CertElim>(cert.records[target]).w.pi_k += 1;
        CheckReport mutated = check_certificate(cert);
        c.require(!mutated.ok, "mutation not detected");
        bool named = false;
        for (const CheckIssue& issue : mutated.issues) {
          if (issue.record == target + 1) named = true;
        }
        c.require(named, "mutation not attributed to the right record");
      });

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  }
  return g_failures;
}
