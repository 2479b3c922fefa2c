#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "rhobound/elimination.hpp"
#include "rhobound/rational.hpp"

namespace rhobound {

// Certificates are line-delimited text: one record per line, space-separated
// key=value fields in a fixed order per record type. The encoding is
// canonical — emit, parse, re-emit is byte-identical — so certificates can
// be diffed and checked as streams. Real-valued fields are carried as
// decimal strings with 12 significant digits; where an exact rational
// exists it is serialized alongside and the checker compares the rational.
//
//   header version=0.1.0 format=1 sieve_limit=... n_max=... K=... c=...
//          slope=... rule=... timestamp=...
//   base n=... value=...
//   seed n=... quadratic=... recursion=... seed=...
//   elim n=... k=... budget=... L=... pi_window=... pi_next=... pi_k=...
//        residual=... eliminated=...
//   crossover K=... c=... slope=... n0=... value=... margin=...
//             prev_defined=... value_prev=... margin_prev=... probe=...
//             monotone=...
//   corollary n=... C=... f=... f_dec=...
//   corollary_tail n0=... C=... f=... f_dec=...
//   corollary_sup sup=... sup_dec=... sup_at=... tail_dominates=...
//                 n1_bound=... constant=...
//   footer verdict=... equality=... max_ratio=... constant=... conditional=...

struct CertHeader {
  std::string version;
  int format = 1;
  long long sieve_limit = 0;
  long long n_max = 0;
  Rational K;
  std::string c;  // decimal string, e.g. "1.25506"
  int slope = 2;
  RefineRule rule = RefineRule::kFull;
  std::string timestamp;  // ISO 8601 UTC; excluded from equality comparisons
};

struct CertBase {
  long long n = 0;
  long long value = 0;
};

struct CertSeed {
  long long n = 0;
  long long quadratic = 0;
  long long recursion = 0;
  long long seed = 0;
};

struct CertElim {
  EliminationWitness w;
};

struct CertCrossover {
  Rational K;
  std::string c;
  int slope = 2;
  long long n0 = 0;
  std::string value;        // tail value at n0
  std::string margin;       // K - value
  bool prev_defined = false;
  std::string value_prev;   // "na" when !prev_defined
  std::string margin_prev;  // "na" when !prev_defined
  long long probe = 0;
  bool monotone = false;
};

struct CertCorollaryRow {
  long long n = 0;
  Rational C;
  Rational f;
  std::string f_dec;
};

struct CertCorollaryTail {
  long long n0 = 0;
  Rational C;
  Rational f;
  std::string f_dec;
};

struct CertCorollarySup {
  Rational sup;
  std::string sup_dec;
  long long sup_at = 0;
  bool tail_dominates = false;
  long long n1_bound = 0;
  long long constant = 0;
};

struct CertFooter {
  std::string verdict;  // "pass" or "fail"
  std::vector<long long> equality;
  Rational max_ratio;
  long long constant = 0;  // 0 when no corollary was certified
  bool conditional = false;  // slope = 3 runs hold only if rho(n) >= 3n
};

using CertRecord = std::variant<CertHeader, CertBase, CertSeed, CertElim, CertCrossover,
                                CertCorollaryRow, CertCorollaryTail, CertCorollarySup,
                                CertFooter>;

struct Certificate {
  std::vector<CertRecord> records;
};

class CertParseError : public std::runtime_error {
 public:
  CertParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// 12 significant digits, the canonical real encoding.
std::string format_real(double value);

const char* refine_rule_name(RefineRule rule);
RefineRule parse_refine_rule(const std::string& name);

std::string serialize_record(const CertRecord& record);
CertRecord parse_record(const std::string& line, std::size_t line_number);

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(std::istream& in);

// Streams records as they are produced, flushing per record so an aborted
// run still leaves an inspectable prefix.
class CertificateWriter {
 public:
  explicit CertificateWriter(std::ostream& out) : out_(out) {}
  void write(const CertRecord& record);

 private:
  std::ostream& out_;
};

}  // namespace rhobound
