#include "rhobound/checker.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>

#include "rhobound/errors.hpp"
#include "rhobound/prime_oracle.hpp"

namespace rhobound {

namespace {

constexpr double kGuard = 1e-9;

double tail_formula(long long n, double c, int slope) {
  double lg = std::log(static_cast<double>(slope) * static_cast<double>(n));
  return 4.0 / (1.0 - c / lg);
}

bool tail_formula_defined(long long n, double c, int slope) {
  if (n < 1 || slope * n < 2) return false;
  double lg = std::log(static_cast<double>(slope) * static_cast<double>(n));
  return 1.0 - c / lg > 0.0;
}

std::optional<double> parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Walk state while replaying a certificate in pipeline order.
struct Replay {
  const Certificate& cert;
  CheckReport report;

  CertHeader header;
  double c = 0.0;
  std::unique_ptr<PrimeOracle> oracle;

  std::map<long long, long long> upper;   // certified upper bounds seen so far
  long long bases_seen = 0;
  long long current_n = 0;                // n of the open elimination chain
  long long expected_k = 0;               // next candidate the chain must record
  long long chain_seed = 0;
  const CertElim* last_elim = nullptr;
  std::size_t last_elim_index = 0;

  const CertCrossover* crossover = nullptr;
  bool crossover_ok = false;
  std::vector<std::pair<long long, Rational>> f_rows;  // (n, f) replayed
  Rational f_sup;
  long long f_sup_at = 0;
  long long next_corollary_n = 2;
  const CertCorollaryTail* tail = nullptr;
  Rational tail_f;
  bool tail_ok = false;
  const CertCorollarySup* sup = nullptr;
  bool sup_ok = false;

  explicit Replay(const Certificate& c_) : cert(c_) {}

  void fail(std::size_t index, const std::string& message) {
    report.issues.push_back({index + 1, message});
  }
};

void close_chain(Replay& r, std::size_t index) {
  if (r.current_n == 0) return;
  if (r.last_elim == nullptr) {
    r.fail(index, "n = " + std::to_string(r.current_n) + ": seed without elimination records");
  } else if (r.last_elim->w.eliminated) {
    r.fail(r.last_elim_index,
           "n = " + std::to_string(r.current_n) +
               ": chain ends on an eliminated candidate; the surviving k is missing");
  } else {
    long long n = r.current_n;
    long long final_upper = r.last_elim->w.k;
    if (final_upper < 2 * n) {
      r.fail(r.last_elim_index, "upper bound below the lower bound 2n");
    }
    r.upper[n] = final_upper;
  }
  r.current_n = 0;
  r.last_elim = nullptr;
}

void replay_base(Replay& r, std::size_t i, const CertBase& b) {
  static const std::map<long long, long long> kBase = {{1, 2}, {2, 5}, {3, 8}, {4, 12}};
  if (b.n != r.bases_seen + 1 || b.n > 4) {
    r.fail(i, "base records must cover n = 1..4 in order; got n = " + std::to_string(b.n));
    return;
  }
  auto it = kBase.find(b.n);
  if (it == kBase.end() || it->second != b.value) {
    r.fail(i, "base value for n = " + std::to_string(b.n) + " must be " +
                  std::to_string(it == kBase.end() ? -1 : it->second) + ", got " +
                  std::to_string(b.value));
    return;
  }
  ++r.bases_seen;
  r.upper[b.n] = b.value;
}

void replay_seed(Replay& r, std::size_t i, const CertSeed& s) {
  close_chain(r, i);
  if (r.bases_seen != 4) {
    r.fail(i, "seed record before the base records are complete");
  }
  long long n = s.n;
  long long expected_n = r.upper.empty() ? 5 : r.upper.rbegin()->first + 1;
  if (n != expected_n) {
    r.fail(i, "seed for n = " + std::to_string(n) + "; expected n = " +
                  std::to_string(expected_n));
  }
  long long quad = n * (n + 3) / 2 - 2;
  if (s.quadratic != quad) {
    r.fail(i, "quadratic bound must be " + std::to_string(quad) + ", got " +
                  std::to_string(s.quadratic));
  }
  auto prev = r.upper.find(n - 1);
  if (prev == r.upper.end()) {
    r.fail(i, "no upper bound on record for n - 1");
  } else {
    long long rec = prev->second + n + 1;
    if (s.recursion != rec) {
      r.fail(i, "recursion bound must be " + std::to_string(rec) + ", got " +
                    std::to_string(s.recursion));
    }
  }
  if (s.seed != std::min(s.quadratic, s.recursion)) {
    r.fail(i, "seed must be min(quadratic, recursion)");
  }
  r.current_n = n;
  r.chain_seed = s.seed;
  r.expected_k = s.seed;
}

void replay_elim(Replay& r, std::size_t i, const CertElim& e) {
  const EliminationWitness& w = e.w;
  if (r.current_n == 0 || w.n != r.current_n) {
    r.fail(i, "elimination record outside an open chain for its n");
    return;
  }
  if (w.k != r.expected_k) {
    r.fail(i, "candidates must descend by 1 from the seed; expected k = " +
                  std::to_string(r.expected_k) + ", got " + std::to_string(w.k));
  }
  long long n = w.n;
  long long k = w.k;
  long long budget = k - 4 * n - 1;
  if (w.pi_budget != budget) {
    r.fail(i, "budget must be k - 4n - 1 = " + std::to_string(budget));
  }

  auto pi = [&](long long x) { return r.oracle->pi(x); };
  try {
    if (r.header.rule == RefineRule::kDirect) {
      if (w.slack_limit != -1) {
        r.fail(i, "direct-rule witnesses must record L = -1");
      }
      if (w.pi_window != 0 || w.pi_next != 0) {
        r.fail(i, "direct-rule witnesses carry no window pi values");
      }
    } else if (budget < 0) {
      if (w.slack_limit != -1) r.fail(i, "negative budget forces L = -1");
      if (w.pi_window != 0 || w.pi_next != 0) {
        r.fail(i, "negative budget records no pi values");
      }
    } else if (w.slack_limit == -1) {
      if (w.pi_window != 0) r.fail(i, "L = -1 leaves pi_window unused (must be 0)");
      long long fresh = pi(k - 3 * n);
      if (w.pi_next != fresh) {
        r.fail(i, "pi(k - 3n) is " + std::to_string(fresh) + ", recorded " +
                      std::to_string(w.pi_next));
      }
      if (!(fresh > budget)) {
        r.fail(i, "L = -1 requires pi(k - 3n) > budget");
      }
    } else if (w.slack_limit >= 0) {
      long long fresh_window = pi(k - 3 * n + w.slack_limit);
      long long fresh_next = pi(k - 3 * n + w.slack_limit + 1);
      if (w.pi_window != fresh_window) {
        r.fail(i, "pi at the window end is " + std::to_string(fresh_window) +
                      ", recorded " + std::to_string(w.pi_window));
      }
      if (w.pi_next != fresh_next) {
        r.fail(i, "pi past the window is " + std::to_string(fresh_next) + ", recorded " +
                      std::to_string(w.pi_next));
      }
      if (!(fresh_window <= budget)) r.fail(i, "window condition fails at L");
      if (!(fresh_next > budget)) r.fail(i, "window condition still holds at L + 1");
    } else {
      r.fail(i, "L must be >= -1");
    }

    long long fresh_pi_k = pi(k);
    if (w.pi_k != fresh_pi_k) {
      r.fail(i, "pi(k) is " + std::to_string(fresh_pi_k) + ", recorded " +
                    std::to_string(w.pi_k));
    }
    bool residual = 4 * n - w.slack_limit <= k - fresh_pi_k;
    if (w.residual_holds != residual) {
      r.fail(i, "residual comparison replays as " + std::string(residual ? "true" : "false"));
    }
    if (w.eliminated != w.residual_holds) {
      r.fail(i, "eliminated flag must equal the residual comparison");
    }
  } catch (const OracleLimitError& ex) {
    r.fail(i, std::string("pi query beyond the recorded sieve limit: ") + ex.what());
  }

  r.last_elim = &e;
  r.last_elim_index = i;
  --r.expected_k;
}

void replay_crossover(Replay& r, std::size_t i, const CertCrossover& x) {
  close_chain(r, i);
  r.crossover = &x;
  bool ok = true;
  auto flag = [&](const std::string& m) {
    r.fail(i, m);
    ok = false;
  };
  if (x.K != r.header.K) flag("crossover K differs from the header");
  if (x.slope != r.header.slope) flag("crossover slope differs from the header");
  if (x.c != r.header.c) flag("crossover c differs from the header");
  double kd = x.K.to_double();
  if (!tail_formula_defined(x.n0, r.c, x.slope)) {
    flag("tail value undefined at n0");
    r.crossover_ok = false;
    return;
  }
  double v0 = tail_formula(x.n0, r.c, x.slope);
  auto recorded_value = parse_double(x.value);
  auto recorded_margin = parse_double(x.margin);
  if (!recorded_value || std::fabs(*recorded_value - v0) > kGuard) {
    flag("tail value at n0 replays as " + format_real(v0));
  }
  double margin = kd - v0;
  if (!recorded_margin || std::fabs(*recorded_margin - margin) > kGuard) {
    flag("margin at n0 replays as " + format_real(margin));
  }
  if (margin < kGuard) flag("margin at n0 is below the guard band");
  bool before_defined = x.n0 > 1 && tail_formula_defined(x.n0 - 1, r.c, x.slope);
  if (x.prev_defined != before_defined) {
    flag("prev_defined replays differently");
  } else if (before_defined) {
    double vb = tail_formula(x.n0 - 1, r.c, x.slope);
    auto rec_vb = parse_double(x.value_prev);
    auto rec_mb = parse_double(x.margin_prev);
    if (!rec_vb || std::fabs(*rec_vb - vb) > kGuard) {
      flag("tail value at n0 - 1 replays as " + format_real(vb));
    }
    if (!rec_mb || std::fabs(*rec_mb - (vb - kd)) > kGuard) {
      flag("margin at n0 - 1 replays as " + format_real(vb - kd));
    }
    if (vb - kd < kGuard) flag("n0 is not a certified minimum");
  } else {
    if (x.value_prev != "na" || x.margin_prev != "na") {
      flag("undefined predecessor must record na");
    }
  }
  if (x.probe <= x.n0) {
    flag("monotonicity probe must exceed n0");
  } else {
    double prev = v0;
    bool decreasing = true;
    double ratio = std::pow(static_cast<double>(x.probe) / static_cast<double>(x.n0), 1.0 / 16.0);
    double pos = static_cast<double>(x.n0);
    std::vector<long long> grid;
    for (int step = 0; step < 16; ++step) {
      pos *= ratio;
      long long xi = static_cast<long long>(pos);
      if (xi > x.n0 && xi < x.probe && (grid.empty() || xi > grid.back())) grid.push_back(xi);
    }
    grid.push_back(x.probe);
    for (long long n : grid) {
      double v = tail_formula(n, r.c, x.slope);
      if (!(v < prev)) {
        decreasing = false;
        break;
      }
      prev = v;
    }
    if (x.monotone != decreasing) flag("monotone flag replays differently");
    if (!decreasing) ok = false;
  }
  r.crossover_ok = ok;
}

Rational replay_f(long long n, const Rational& C) {
  Rational n2(n * n);
  Rational n3(n * n * n);
  return Rational(28) * C + C * C / n2 + C / n3;
}

void replay_corollary_row(Replay& r, std::size_t i, const CertCorollaryRow& row) {
  close_chain(r, i);
  if (r.crossover == nullptr) {
    r.fail(i, "corollary rows require a preceding crossover record");
    return;
  }
  if (row.n != r.next_corollary_n) {
    r.fail(i, "corollary rows must cover n = 2.." + std::to_string(r.crossover->n0 - 1) +
                  " in order; expected n = " + std::to_string(r.next_corollary_n));
  }
  auto it = r.upper.find(row.n);
  if (it == r.upper.end()) {
    r.fail(i, "no certified upper bound for n = " + std::to_string(row.n));
    return;
  }
  Rational expected_c(it->second, row.n);
  if (row.C != expected_c) {
    r.fail(i, "C must be " + expected_c.str() + ", got " + row.C.str());
  }
  Rational f = replay_f(row.n, row.C);
  if (row.f != f) {
    r.fail(i, "f replays as " + f.str());
  }
  auto dec = parse_double(row.f_dec);
  if (!dec || std::fabs(*dec - f.to_double()) > kGuard) {
    r.fail(i, "decimal field disagrees with the exact value");
  }
  if (r.f_rows.empty() || f > r.f_sup) {
    r.f_sup = f;
    r.f_sup_at = row.n;
  }
  r.f_rows.emplace_back(row.n, f);
  ++r.next_corollary_n;
}

void replay_corollary_tail(Replay& r, std::size_t i, const CertCorollaryTail& t) {
  close_chain(r, i);
  r.tail = &t;
  bool ok = true;
  if (r.crossover == nullptr) {
    r.fail(i, "corollary tail requires a preceding crossover record");
    return;
  }
  if (t.n0 != r.crossover->n0) {
    r.fail(i, "tail n0 differs from the crossover");
    ok = false;
  }
  if (t.C != r.header.K) {
    r.fail(i, "tail C must equal K");
    ok = false;
  }
  Rational f = replay_f(t.n0, t.C);
  if (t.f != f) {
    r.fail(i, "tail f replays as " + f.str());
    ok = false;
  }
  auto dec = parse_double(t.f_dec);
  if (!dec || std::fabs(*dec - f.to_double()) > kGuard) {
    r.fail(i, "decimal field disagrees with the exact value");
    ok = false;
  }
  r.tail_f = f;
  r.tail_ok = ok;
}

void replay_corollary_sup(Replay& r, std::size_t i, const CertCorollarySup& s) {
  close_chain(r, i);
  r.sup = &s;
  bool ok = true;
  auto flag = [&](const std::string& m) {
    r.fail(i, m);
    ok = false;
  };
  if (r.tail == nullptr || !r.tail_ok) {
    flag("corollary sup requires a checked tail record");
    r.sup_ok = false;
    return;
  }
  if (r.crossover != nullptr) {
    long long expected_rows = std::max(0LL, r.crossover->n0 - 2);
    if (static_cast<long long>(r.f_rows.size()) != expected_rows) {
      flag("corollary rows incomplete: " + std::to_string(r.f_rows.size()) + " of " +
           std::to_string(expected_rows));
    }
  }
  Rational sup = r.f_rows.empty() ? r.tail_f : r.f_sup;
  long long sup_at = r.f_rows.empty() ? r.tail->n0 : r.f_sup_at;
  if (s.sup != sup) flag("sup replays as " + sup.str());
  if (s.sup_at != sup_at) flag("sup_at replays as " + std::to_string(sup_at));
  auto dec = parse_double(s.sup_dec);
  if (!dec || std::fabs(*dec - sup.to_double()) > kGuard) {
    flag("decimal field disagrees with the exact value");
  }
  bool dominates = r.tail_f > sup;
  if (s.tail_dominates != dominates) flag("tail_dominates replays differently");
  if (s.n1_bound != 4) flag("n1_bound must be 4");
  Rational global = std::max(sup, r.tail_f);
  if (s.constant != global.ceil()) {
    flag("constant replays as " + std::to_string(global.ceil()));
  }
  r.sup_ok = ok;
}

void replay_footer(Replay& r, std::size_t i, const CertFooter& f) {
  close_chain(r, i);

  // Completeness: every n in [1, n_max] must have a certified upper bound.
  bool complete = r.bases_seen == 4;
  for (long long n = 1; complete && n <= r.header.n_max; ++n) {
    if (r.upper.find(n) == r.upper.end()) {
      r.fail(i, "no records certify n = " + std::to_string(n) +
                    "; the footer is unsupported");
      complete = false;
    }
  }

  bool linear_ok = complete;
  std::vector<long long> equality;
  Rational max_ratio;
  bool have_ratio = false;
  for (const auto& [n, u] : r.upper) {
    Rational ratio(u, n);
    if (ratio > r.header.K) linear_ok = false;
    if (ratio == r.header.K) equality.push_back(n);
    if (!have_ratio || ratio > max_ratio) {
      max_ratio = ratio;
      have_ratio = true;
    }
  }

  bool corollary_ok = r.sup != nullptr && r.sup_ok && r.tail_ok;
  bool pass = complete && linear_ok && r.crossover_ok && corollary_ok;
  std::string verdict = pass ? "pass" : "fail";
  if (f.verdict != verdict) {
    r.fail(i, "footer verdict '" + f.verdict + "' is unsupported; records replay as '" +
                  verdict + "'");
  }
  if (f.equality != equality) {
    r.fail(i, "equality set replays differently");
  }
  if (have_ratio && f.max_ratio != max_ratio) {
    r.fail(i, "max ratio replays as " + max_ratio.str());
  }
  long long constant = r.sup != nullptr ? r.sup->constant : 0;
  if (f.constant != constant) {
    r.fail(i, "footer constant disagrees with the corollary records");
  }
  if (f.conditional != (r.header.slope == 3)) {
    r.fail(i, "conditional flag must mark exactly the slope = 3 runs");
  }
}

}  // namespace

CheckReport check_certificate(const Certificate& cert) {
  Replay r(cert);
  const auto& records = cert.records;

  if (records.empty()) {
    r.fail(std::size_t(-1), "empty certificate");
    r.report.ok = false;
    return r.report;
  }
  if (!std::holds_alternative<CertHeader>(records.front())) {
    r.fail(0, "first record must be the header");
    r.report.ok = false;
    return r.report;
  }
  if (!std::holds_alternative<CertFooter>(records.back())) {
    r.fail(records.size() - 1, "last record must be the footer");
  }

  r.header = std::get<CertHeader>(records.front());
  if (r.header.format != 1) r.fail(0, "unsupported format version");
  if (r.header.slope != 2 && r.header.slope != 3) r.fail(0, "slope must be 2 or 3");
  if (r.header.n_max < 4) r.fail(0, "n_max must be >= 4");
  auto c = parse_double(r.header.c);
  if (!c || *c <= 0.0) {
    r.fail(0, "c must be a positive decimal");
    r.report.ok = false;
    return r.report;
  }
  r.c = *c;
  try {
    r.oracle = std::make_unique<PrimeOracle>(r.header.sieve_limit);
  } catch (const std::exception& e) {
    r.fail(0, std::string("cannot rebuild the oracle: ") + e.what());
    r.report.ok = false;
    return r.report;
  }

  for (std::size_t i = 1; i < records.size(); ++i) {
    const CertRecord& record = records[i];
    bool is_last = i + 1 == records.size();
    if (std::holds_alternative<CertHeader>(record)) {
      r.fail(i, "duplicate header");
      continue;
    }
    if (std::holds_alternative<CertFooter>(record) && !is_last) {
      r.fail(i, "footer before the end of the records");
      continue;
    }
    std::visit(
        [&](const auto& rec) {
          using T = std::decay_t<decltype(rec)>;
          if constexpr (std::is_same_v<T, CertBase>) {
            replay_base(r, i, rec);
          } else if constexpr (std::is_same_v<T, CertSeed>) {
            replay_seed(r, i, rec);
          } else if constexpr (std::is_same_v<T, CertElim>) {
            replay_elim(r, i, rec);
          } else if constexpr (std::is_same_v<T, CertCrossover>) {
            replay_crossover(r, i, rec);
          } else if constexpr (std::is_same_v<T, CertCorollaryRow>) {
            replay_corollary_row(r, i, rec);
          } else if constexpr (std::is_same_v<T, CertCorollaryTail>) {
            replay_corollary_tail(r, i, rec);
          } else if constexpr (std::is_same_v<T, CertCorollarySup>) {
            replay_corollary_sup(r, i, rec);
          } else if constexpr (std::is_same_v<T, CertFooter>) {
            replay_footer(r, i, rec);
          }
        },
        record);
  }
  if (!std::holds_alternative<CertFooter>(records.back())) {
    // Already reported; still close any open chain for complete diagnostics.
    close_chain(r, records.size() - 1);
  }

  r.report.records_checked = records.size();
  r.report.ok = r.report.issues.empty();
  return r.report;
}

}  // namespace rhobound
