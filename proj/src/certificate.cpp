#include "rhobound/certificate.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>

namespace rhobound {

namespace {

std::string ll_str(long long v) { return std::to_string(v); }

std::string bool_str(bool v) { return v ? "1" : "0"; }

std::string equality_str(const std::vector<long long>& set) {
  if (set.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) s += ',';
    s += ll_str(set[i]);
  }
  return s;
}

std::vector<long long> parse_equality(const std::string& text, std::size_t line) {
  std::vector<long long> set;
  if (text == "none") return set;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw CertParseError(line, "bad equality list element '" + item + "'");
    }
    set.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return set;
}

// Reads "key=value" tokens in the exact order the format fixes; any
// deviation is a parse error, which keeps the encoding canonical.
class FieldReader {
 public:
  FieldReader(const std::string& line, std::size_t line_number)
      : line_(line_number) {
    std::size_t pos = 0;
    while (pos < line.size()) {
      std::size_t space = line.find(' ', pos);
      std::string tok = line.substr(pos, space == std::string::npos ? std::string::npos
                                                                    : space - pos);
      if (tok.empty()) throw CertParseError(line_, "empty token (double space?)");
      tokens_.push_back(std::move(tok));
      if (space == std::string::npos) break;
      pos = space + 1;
    }
  }

  const std::string& type() const { return tokens_.at(0); }

  std::string take(const std::string& key) {
    if (next_ >= tokens_.size()) {
      throw CertParseError(line_, "missing field '" + key + "'");
    }
    const std::string& tok = tokens_[next_++];
    std::size_t eq = tok.find('=');
    if (eq == std::string::npos || tok.substr(0, eq) != key) {
      throw CertParseError(line_, "expected field '" + key + "', got '" + tok + "'");
    }
    return tok.substr(eq + 1);
  }

  long long take_ll(const std::string& key) {
    std::string v = take(key);
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw CertParseError(line_, "field '" + key + "' is not an integer: '" + v + "'");
    }
    return out;
  }

  int take_int(const std::string& key) { return static_cast<int>(take_ll(key)); }

  bool take_bool(const std::string& key) {
    std::string v = take(key);
    if (v == "0") return false;
    if (v == "1") return true;
    throw CertParseError(line_, "field '" + key + "' must be 0 or 1: '" + v + "'");
  }

  Rational take_rational(const std::string& key) {
    std::string v = take(key);
    try {
      return Rational::parse(v);
    } catch (const std::exception& e) {
      throw CertParseError(line_, "field '" + key + "': " + e.what());
    }
  }

  void done() {
    if (next_ != tokens_.size()) {
      throw CertParseError(line_, "unexpected trailing field '" + tokens_[next_] + "'");
    }
  }

 private:
  std::size_t line_;
  std::vector<std::string> tokens_;
  std::size_t next_ = 1;  // tokens_[0] is the record type
};

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

const char* refine_rule_name(RefineRule rule) {
  return rule == RefineRule::kDirect ? "direct" : "full";
}

RefineRule parse_refine_rule(const std::string& name) {
  if (name == "full") return RefineRule::kFull;
  if (name == "direct") return RefineRule::kDirect;
  throw std::invalid_argument("unknown refine rule '" + name + "'");
}

std::string serialize_record(const CertRecord& record) {
  struct Visitor {
    std::string operator()(const CertHeader& h) const {
      return "header version=" + h.version + " format=" + std::to_string(h.format) +
             " sieve_limit=" + ll_str(h.sieve_limit) + " n_max=" + ll_str(h.n_max) +
             " K=" + h.K.str() + " c=" + h.c + " slope=" + std::to_string(h.slope) +
             " rule=" + refine_rule_name(h.rule) + " timestamp=" + h.timestamp;
    }
    std::string operator()(const CertBase& b) const {
      return "base n=" + ll_str(b.n) + " value=" + ll_str(b.value);
    }
    std::string operator()(const CertSeed& s) const {
      return "seed n=" + ll_str(s.n) + " quadratic=" + ll_str(s.quadratic) +
             " recursion=" + ll_str(s.recursion) + " seed=" + ll_str(s.seed);
    }
    std::string operator()(const CertElim& e) const {
      const EliminationWitness& w = e.w;
      return "elim n=" + ll_str(w.n) + " k=" + ll_str(w.k) +
             " budget=" + ll_str(w.pi_budget) + " L=" + ll_str(w.slack_limit) +
             " pi_window=" + ll_str(w.pi_window) + " pi_next=" + ll_str(w.pi_next) +
             " pi_k=" + ll_str(w.pi_k) + " residual=" + bool_str(w.residual_holds) +
             " eliminated=" + bool_str(w.eliminated);
    }
    std::string operator()(const CertCrossover& x) const {
      return "crossover K=" + x.K.str() + " c=" + x.c +
             " slope=" + std::to_string(x.slope) + " n0=" + ll_str(x.n0) +
             " value=" + x.value + " margin=" + x.margin +
             " prev_defined=" + bool_str(x.prev_defined) + " value_prev=" + x.value_prev +
             " margin_prev=" + x.margin_prev + " probe=" + ll_str(x.probe) +
             " monotone=" + bool_str(x.monotone);
    }
    std::string operator()(const CertCorollaryRow& r) const {
      return "corollary n=" + ll_str(r.n) + " C=" + r.C.str() + " f=" + r.f.str() +
             " f_dec=" + r.f_dec;
    }
    std::string operator()(const CertCorollaryTail& t) const {
      return "corollary_tail n0=" + ll_str(t.n0) + " C=" + t.C.str() + " f=" + t.f.str() +
             " f_dec=" + t.f_dec;
    }
    std::string operator()(const CertCorollarySup& s) const {
      return "corollary_sup sup=" + s.sup.str() + " sup_dec=" + s.sup_dec +
             " sup_at=" + ll_str(s.sup_at) + " tail_dominates=" + bool_str(s.tail_dominates) +
             " n1_bound=" + ll_str(s.n1_bound) + " constant=" + ll_str(s.constant);
    }
    std::string operator()(const CertFooter& f) const {
      return "footer verdict=" + f.verdict + " equality=" + equality_str(f.equality) +
             " max_ratio=" + f.max_ratio.str() + " constant=" + ll_str(f.constant) +
             " conditional=" + bool_str(f.conditional);
    }
  };
  return std::visit(Visitor{}, record);
}

CertRecord parse_record(const std::string& line, std::size_t line_number) {
  FieldReader r(line, line_number);
  const std::string& type = r.type();
  if (type == "header") {
    CertHeader h;
    h.version = r.take("version");
    h.format = r.take_int("format");
    h.sieve_limit = r.take_ll("sieve_limit");
    h.n_max = r.take_ll("n_max");
    h.K = r.take_rational("K");
    h.c = r.take("c");
    h.slope = r.take_int("slope");
    try {
      h.rule = parse_refine_rule(r.take("rule"));
    } catch (const std::invalid_argument& e) {
      throw CertParseError(line_number, e.what());
    }
    h.timestamp = r.take("timestamp");
    r.done();
    return h;
  }
  if (type == "base") {
    CertBase b;
    b.n = r.take_ll("n");
    b.value = r.take_ll("value");
    r.done();
    return b;
  }
  if (type == "seed") {
    CertSeed s;
    s.n = r.take_ll("n");
    s.quadratic = r.take_ll("quadratic");
    s.recursion = r.take_ll("recursion");
    s.seed = r.take_ll("seed");
    r.done();
    return s;
  }
  if (type == "elim") {
    CertElim e;
    e.w.n = r.take_ll("n");
    e.w.k = r.take_ll("k");
    e.w.pi_budget = r.take_ll("budget");
    e.w.slack_limit = r.take_ll("L");
    e.w.pi_window = r.take_ll("pi_window");
    e.w.pi_next = r.take_ll("pi_next");
    e.w.pi_k = r.take_ll("pi_k");
    e.w.residual_holds = r.take_bool("residual");
    e.w.eliminated = r.take_bool("eliminated");
    r.done();
    return e;
  }
  if (type == "crossover") {
    CertCrossover x;
    x.K = r.take_rational("K");
    x.c = r.take("c");
    x.slope = r.take_int("slope");
    x.n0 = r.take_ll("n0");
    x.value = r.take("value");
    x.margin = r.take("margin");
    x.prev_defined = r.take_bool("prev_defined");
    x.value_prev = r.take("value_prev");
    x.margin_prev = r.take("margin_prev");
    x.probe = r.take_ll("probe");
    x.monotone = r.take_bool("monotone");
    r.done();
    return x;
  }
  if (type == "corollary") {
    CertCorollaryRow c;
    c.n = r.take_ll("n");
    c.C = r.take_rational("C");
    c.f = r.take_rational("f");
    c.f_dec = r.take("f_dec");
    r.done();
    return c;
  }
  if (type == "corollary_tail") {
    CertCorollaryTail t;
    t.n0 = r.take_ll("n0");
    t.C = r.take_rational("C");
    t.f = r.take_rational("f");
    t.f_dec = r.take("f_dec");
    r.done();
    return t;
  }
  if (type == "corollary_sup") {
    CertCorollarySup s;
    s.sup = r.take_rational("sup");
    s.sup_dec = r.take("sup_dec");
    s.sup_at = r.take_ll("sup_at");
    s.tail_dominates = r.take_bool("tail_dominates");
    s.n1_bound = r.take_ll("n1_bound");
    s.constant = r.take_ll("constant");
    r.done();
    return s;
  }
  if (type == "footer") {
    CertFooter f;
    f.verdict = r.take("verdict");
    if (f.verdict != "pass" && f.verdict != "fail") {
      throw CertParseError(line_number, "verdict must be pass or fail");
    }
    f.equality = parse_equality(r.take("equality"), line_number);
    f.max_ratio = r.take_rational("max_ratio");
    f.constant = r.take_ll("constant");
    f.conditional = r.take_bool("conditional");
    r.done();
    return f;
  }
  throw CertParseError(line_number, "unknown record type '" + type + "'");
}

std::string serialize_certificate(const Certificate& cert) {
  std::string out;
  for (const CertRecord& record : cert.records) {
    out += serialize_record(record);
    out += '\n';
  }
  return out;
}

Certificate parse_certificate(std::istream& in) {
  Certificate cert;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    cert.records.push_back(parse_record(line, line_number));
  }
  return cert;
}

void CertificateWriter::write(const CertRecord& record) {
  out_ << serialize_record(record) << '\n';
  out_.flush();
}

}  // namespace rhobound
