#include "rhobound/commands.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "rhobound/asymptotic.hpp"
#include "rhobound/bound_ledger.hpp"
#include "rhobound/certificate.hpp"
#include "rhobound/checker.hpp"
#include "rhobound/corollary.hpp"
#include "rhobound/errors.hpp"
#include "rhobound/prime_oracle.hpp"

namespace rhobound {

namespace {

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string provenance_summary(const BoundEntry& e) {
  std::string s;
  for (std::size_t i = 0; i < e.provenance.size(); ++i) {
    if (i) s += ';';
    s += rule_name(e.provenance[i].rule);
    s += ':';
    s += std::to_string(e.provenance[i].value);
  }
  return s;
}

void print_table_row(std::ostream& out, OutputFormat format, const BoundEntry& e) {
  Rational ratio(e.upper, e.n);
  switch (format) {
    case OutputFormat::kText:
      out << std::setw(5) << e.n << std::setw(8) << e.lower << std::setw(8) << e.upper
          << std::setw(10) << ratio.str() << "  " << provenance_summary(e) << '\n';
      break;
    case OutputFormat::kTsv:
      out << e.n << '\t' << e.lower << '\t' << e.upper << '\t' << ratio.str() << '\t'
          << provenance_summary(e) << '\n';
      break;
    case OutputFormat::kRecords:
      out << "bound n=" << e.n << " lower=" << e.lower << " upper=" << e.upper
          << " C=" << ratio.str() << " provenance=" << provenance_summary(e) << '\n';
      break;
  }
}

void print_table_heading(std::ostream& out, OutputFormat format) {
  if (format == OutputFormat::kText) {
    out << std::setw(5) << "n" << std::setw(8) << "lower" << std::setw(8) << "upper"
        << std::setw(10) << "C(n)" << "  provenance\n";
  } else if (format == OutputFormat::kTsv) {
    out << "n\tlower\tupper\tC\tprovenance\n";
  }
}

struct PipelineOutcome {
  std::optional<CrossoverResult> crossover;
  std::string crossover_note;  // why absent, when absent
  bool monotone = false;
  long long probe = 0;
  Ledger ledger;
  LinearReport linear;
  bool improved_quadratic_ok = true;
  long long improved_quadratic_fail_n = 0;
  std::optional<CorollaryReport> corollary;
  long long depth = 0;
  bool pass = false;
  std::vector<std::string> failures;
};

// The shared verify/corollary pipeline. Streams certificate records through
// `writer` as they are produced when one is attached.
PipelineOutcome run_pipeline(const RunConfig& config, CertificateWriter* writer) {
  PipelineOutcome p;

  if (config.K > Rational(4)) {
    p.crossover = find_crossover(config.K, kRosserSchoenfeldC, config.slope);
  } else {
    p.crossover_note = "no analytic crossover exists for K <= 4";
    p.failures.push_back("crossover: " + p.crossover_note);
  }

  p.depth = config.n_max;
  if (p.crossover) p.depth = std::max(p.depth, p.crossover->n0 - 1);

  PrimeOracle oracle(config.sieve_limit);

  if (writer) {
    CertHeader header;
    header.version = kToolVersion;
    header.format = 1;
    header.sieve_limit = config.sieve_limit;
    header.n_max = p.depth;
    header.K = config.K;
    header.c = format_real(kRosserSchoenfeldC);
    header.slope = config.slope;
    header.rule = config.rule;
    header.timestamp = utc_timestamp();
    writer->write(header);
  }

  auto emit_entry = [&](const BoundEntry& e) {
    if (!writer) return;
    if (e.n <= 4) {
      writer->write(CertBase{e.n, e.upper});
      return;
    }
    writer->write(CertSeed{e.n, e.quadratic, e.recursion, e.seed});
    for (const EliminationWitness& w : e.witnesses) writer->write(CertElim{w});
  };
  p.ledger = Ledger::build(p.depth, oracle, config.rule, emit_entry);

  p.linear = verify_linear(p.ledger, config.K);
  if (!p.linear.pass) {
    for (const LinearRow& row : p.linear.rows) {
      if (!row.pass) {
        p.failures.push_back("linear: upper(" + std::to_string(row.n) + ") = " +
                             std::to_string(row.upper) + " exceeds K*n = " +
                             (config.K * Rational(row.n)).str());
        break;  // name the first offender; the table shows the rest
      }
    }
  }

  // Consequence of the full pipeline (it needs the refined n = 9 value),
  // checked rather than assumed. The direct rule cannot reach it.
  if (config.rule == RefineRule::kFull) {
    for (long long n = 9; n <= p.depth; ++n) {
      if (p.ledger.entry(n).upper > n * (n + 3) / 2 - 9) {
        p.improved_quadratic_ok = false;
        p.improved_quadratic_fail_n = n;
        p.failures.push_back("improved quadratic bound fails at n = " + std::to_string(n));
        break;
      }
    }
  }

  if (p.crossover) {
    p.probe = std::max<long long>(1'000'000, 4 * p.crossover->n0);
    p.monotone = tail_monotone_check(p.crossover->n0, p.probe, kRosserSchoenfeldC,
                                     config.slope);
    if (!p.monotone) p.failures.push_back("tail value is not decreasing past n0");

    if (writer) {
      CertCrossover x;
      x.K = p.crossover->K;
      x.c = format_real(kRosserSchoenfeldC);
      x.slope = p.crossover->slope;
      x.n0 = p.crossover->n0;
      x.value = format_real(p.crossover->value_at_n0);
      x.margin = format_real(p.crossover->margin);
      x.prev_defined = p.crossover->before_defined;
      x.value_prev = p.crossover->before_defined ? format_real(p.crossover->value_before) : "na";
      x.margin_prev = p.crossover->before_defined ? format_real(p.crossover->margin_before) : "na";
      x.probe = p.probe;
      x.monotone = p.monotone;
      writer->write(x);
    }

    // When K sits above the ledger's real ratios the tail term f(n0, K)
    // can dominate; ceil(max(sup, tail)) is the certified constant either way.
    p.corollary = certify_corollary(p.ledger, *p.crossover);
    if (writer) {
      for (const CorollaryRow& row : p.corollary->per_n) {
        writer->write(CertCorollaryRow{row.n, row.C, row.f, format_real(row.f.to_double())});
      }
      writer->write(CertCorollaryTail{p.corollary->tail_n0, p.corollary->tail_C,
                                      p.corollary->tail_bound,
                                      format_real(p.corollary->tail_bound.to_double())});
      writer->write(CertCorollarySup{p.corollary->sup_value,
                                     format_real(p.corollary->sup_value.to_double()),
                                     p.corollary->sup_at, p.corollary->tail_dominates,
                                     p.corollary->n1_bound, p.corollary->constant});
    }
  }

  p.pass = p.failures.empty();

  if (writer) {
    CertFooter footer;
    footer.verdict = p.pass ? "pass" : "fail";
    footer.equality = p.linear.equality_set;
    footer.max_ratio = p.linear.max_ratio;
    footer.constant = p.corollary ? p.corollary->constant : 0;
    footer.conditional = config.slope == 3;
    writer->write(footer);
  }
  return p;
}

int map_exception(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  if (dynamic_cast<const InconsistencyError*>(&e)) return kExitInconsistent;
  if (dynamic_cast<const InconclusiveError*>(&e)) return kExitCheckFailed;
  if (dynamic_cast<const OracleLimitError*>(&e)) return kExitUsage;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
  if (dynamic_cast<const std::out_of_range*>(&e)) return kExitUsage;
  return kExitCheckFailed;
}

const char* conditional_note(int slope) {
  return slope == 3 ? " (conditional on rho(n) >= 3n)" : "";
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "text") return OutputFormat::kText;
  if (name == "tsv") return OutputFormat::kTsv;
  if (name == "records") return OutputFormat::kRecords;
  throw std::invalid_argument("unknown output format '" + name + "'");
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream cert_stream;
    std::optional<CertificateWriter> writer;
    if (!config.certificate_path.empty()) {
      cert_stream.open(config.certificate_path, std::ios::trunc);
      if (!cert_stream) {
        err << "error: cannot open certificate path '" << config.certificate_path << "'\n";
        return kExitUsage;
      }
      writer.emplace(cert_stream);
    }

    PipelineOutcome p = run_pipeline(config, writer ? &*writer : nullptr);

    if (p.crossover) {
      out << "crossover: K=" << config.K << " slope=" << config.slope
          << " n0=" << p.crossover->n0 << " value=" << format_real(p.crossover->value_at_n0)
          << " margin=" << format_real(p.crossover->margin)
          << conditional_note(config.slope) << "  [pass]\n";
      out << "tail: decreasing on [" << p.crossover->n0 << ", " << p.probe << "]  ["
          << (p.monotone ? "pass" : "FAIL") << "]\n";
    } else {
      out << "crossover: " << p.crossover_note << "  [FAIL]\n";
    }

    out << "ledger: built n = 1.." << p.depth << " (sieve limit " << config.sieve_limit
        << ", rule " << refine_rule_name(config.rule) << ")\n";
    out << "linear: upper(n) <= " << config.K << "*n for n = 1.." << p.depth;
    if (p.linear.pass) {
      out << "; equality at {";
      for (std::size_t i = 0; i < p.linear.equality_set.size(); ++i) {
        out << (i ? "," : "") << p.linear.equality_set[i];
      }
      out << "}; max ratio " << p.linear.max_ratio << " at n = " << p.linear.max_at
          << "  [pass]\n";
    } else {
      out << "  [FAIL]\n";
      for (const LinearRow& row : p.linear.rows) {
        if (!row.pass) {
          out << "  upper(" << row.n << ") = " << row.upper << " > "
              << (config.K * Rational(row.n)).str() << '\n';
        }
      }
    }
    if (config.rule == RefineRule::kFull) {
      out << "improved quadratic: upper(n) <= n(n+3)/2 - 9 for n = 9.." << p.depth
          << "  [" << (p.improved_quadratic_ok ? "pass" : "FAIL") << "]\n";
    }

    if (p.corollary) {
      out << "corollary: sup f = " << p.corollary->sup_value << " = "
          << format_real(p.corollary->sup_value.to_double()) << " at n = "
          << p.corollary->sup_at << "; tail bound " << format_real(p.corollary->tail_bound.to_double())
          << (p.corollary->tail_dominates ? " (sets the constant)" : "")
          << "; rho_g(n) <= " << p.corollary->constant << "*n^4"
          << conditional_note(config.slope) << "  [pass]\n";
    }

    if (!config.certificate_path.empty()) {
      out << "certificate: " << config.certificate_path << '\n';
    }
    out << "verdict: " << (p.pass ? "pass" : "fail") << conditional_note(config.slope)
        << '\n';
    if (!p.pass) {
      for (const std::string& f : p.failures) err << "failed check: " << f << '\n';
    }
    return p.pass ? kExitPass : kExitCheckFailed;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

int run_table(const RunConfig& config, long long from, long long to, std::ostream& out,
              std::ostream& err) {
  try {
    if (from < 1 || from > to) {
      throw std::invalid_argument("table: need 1 <= from <= to");
    }
    PrimeOracle oracle(config.sieve_limit);
    Ledger ledger = Ledger::build(std::max<long long>(4, to), oracle, config.rule);
    print_table_heading(out, config.format);
    for (long long n = from; n <= to; ++n) {
      print_table_row(out, config.format, ledger.entry(n));
    }
    return kExitPass;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

int run_crossover(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    CrossoverResult x = find_crossover(config.K, kRosserSchoenfeldC, config.slope);
    out << "K=" << x.K << " c=" << format_real(x.c) << " slope=" << x.slope
        << " n0=" << x.n0 << " value=" << format_real(x.value_at_n0)
        << " margin=" << format_real(x.margin);
    if (x.before_defined) {
      out << " value_prev=" << format_real(x.value_before)
          << " margin_prev=" << format_real(x.margin_before);
    }
    out << conditional_note(config.slope) << '\n';
    return kExitPass;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

int run_corollary(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    PipelineOutcome p = run_pipeline(config, nullptr);
    if (!p.crossover || !p.corollary) {
      err << "error: " << p.crossover_note << "; cannot certify the quartic bound\n";
      return kExitCheckFailed;
    }
    if (config.format == OutputFormat::kText) {
      out << std::setw(5) << "n" << std::setw(12) << "C(n)" << std::setw(18) << "f(n)" << '\n';
    } else if (config.format == OutputFormat::kTsv) {
      out << "n\tC\tf\tf_dec\n";
    }
    for (const CorollaryRow& row : p.corollary->per_n) {
      switch (config.format) {
        case OutputFormat::kText:
          out << std::setw(5) << row.n << std::setw(12) << row.C.str() << std::setw(18)
              << format_real(row.f.to_double()) << '\n';
          break;
        case OutputFormat::kTsv:
          out << row.n << '\t' << row.C.str() << '\t' << row.f.str() << '\t'
              << format_real(row.f.to_double()) << '\n';
          break;
        case OutputFormat::kRecords:
          out << "corollary n=" << row.n << " C=" << row.C.str() << " f=" << row.f.str()
              << " f_dec=" << format_real(row.f.to_double()) << '\n';
          break;
      }
    }
    out << "n = 1 case: rho_g(1) <= " << p.corollary->n1_bound << " (known bound)\n";
    out << "tail: f(" << p.corollary->tail_n0 << ", " << p.corollary->tail_C << ") = "
        << format_real(p.corollary->tail_bound.to_double()) << '\n';
    out << "sup: " << p.corollary->sup_value << " = "
        << format_real(p.corollary->sup_value.to_double()) << " at n = " << p.corollary->sup_at
        << '\n';
    out << "constant: rho_g(n) <= " << p.corollary->constant << "*n^4 for all n >= 1"
        << conditional_note(config.slope) << '\n';
    if (!p.linear.pass) {
      err << "warning: the linear range check failed; the constant is not certified\n";
      return kExitCheckFailed;
    }
    return kExitPass;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

int run_check_certificate(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read certificate '" << path << "'\n";
    return kExitUsage;
  }
  try {
    Certificate cert = parse_certificate(in);
    CheckReport report = check_certificate(cert);
    if (report.ok) {
      out << "certificate OK: " << report.records_checked << " records re-checked\n";
      return kExitPass;
    }
    std::size_t shown = 0;
    for (const CheckIssue& issue : report.issues) {
      if (shown++ == 20) {
        err << "... " << (report.issues.size() - 20) << " more issues\n";
        break;
      }
      err << "record " << issue.record << ": " << issue.message << '\n';
    }
    err << "certificate FAILED: " << report.issues.size() << " issue(s) in "
        << report.records_checked << " records\n";
    return kExitCheckFailed;
  } catch (const CertParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    return map_exception(e, err);
  }
}

}  // namespace rhobound
