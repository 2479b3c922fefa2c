#include "rhobound/certificate.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "rhobound/checker.hpp"
#include "rhobound/commands.hpp"

using namespace rhobound;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Small pipeline configuration: everything past n0 - 1 = 35 is tail, so the
// full machinery runs while staying quick.
RunConfig small_config() {
  RunConfig config;
  config.K = Rational(17, 3);
  config.n_max = 4;
  config.sieve_limit = 100'000;
  return config;
}

Certificate generate(const RunConfig& config, const char* name, int expect_exit = 0) {
  RunConfig c = config;
  auto path = temp_file(name);
  c.certificate_path = path.string();
  std::ostringstream out, err;
  int rc = run_verify(c, out, err);
  REQUIRE(rc == expect_exit);
  std::ifstream in(path);
  REQUIRE(in.good());
  return parse_certificate(in);
}

std::string strip_timestamp(Certificate cert) {
  REQUIRE(std::holds_alternative<CertHeader>(cert.records.front()));
  std::get<CertHeader>(cert.records.front()).timestamp = "T";
  return serialize_certificate(cert);
}

}  // namespace

TEST_CASE("records survive a parse round trip verbatim") {
  RunConfig config = small_config();
  auto path = temp_file("rhobound_roundtrip.cert");
  config.certificate_path = path.string();
  std::ostringstream out, err;
  REQUIRE(run_verify(config, out, err) == 0);

  std::string original = read_file(path);
  REQUIRE_FALSE(original.empty());
  std::istringstream in(original);
  Certificate cert = parse_certificate(in);
  CHECK(serialize_certificate(cert) == original);
}

TEST_CASE("a freshly emitted certificate re-checks clean") {
  Certificate cert = generate(small_config(), "rhobound_check.cert");
  CheckReport report = check_certificate(cert);
  for (const CheckIssue& issue : report.issues) {
    MESSAGE("record " << issue.record << ": " << issue.message);
  }
  CHECK(report.ok);
  CHECK(report.records_checked == cert.records.size());

  const CertFooter& footer = std::get<CertFooter>(cert.records.back());
  CHECK(footer.verdict == "pass");
  // The full rule holds the worst ratio at 5 even against the looser target.
  CHECK(footer.max_ratio == Rational(5));
}

TEST_CASE("the default pipeline certificate re-checks clean") {
  RunConfig config;  // defaults: K = 5, n_max = 265, sieve 1e6
  Certificate cert = generate(config, "rhobound_default.cert");
  CheckReport report = check_certificate(cert);
  CHECK(report.ok);

  const CertFooter& footer = std::get<CertFooter>(cert.records.back());
  CHECK(footer.verdict == "pass");
  CHECK(footer.equality == std::vector<long long>{8, 9});
  CHECK(footer.max_ratio == Rational(5));
  CHECK(footer.constant == 141);
  CHECK_FALSE(footer.conditional);
}

TEST_CASE("a single perturbed field is detected and named") {
  Certificate cert = generate(small_config(), "rhobound_mutate.cert");
  std::size_t target = 0;
  for (std::size_t i = 0; i < cert.records.size(); ++i) {
    if (std::holds_alternative<CertElim>(cert.records[i])) {
      target = i;
    }
  }
  REQUIRE(target != 0);
  std::get<CertElim>(cert.records[target]).w.pi_k += 1;

  CheckReport report = check_certificate(cert);
  CHECK_FALSE(report.ok);
  bool named = false;
  for (const CheckIssue& issue : report.issues) {
    if (issue.record == target + 1) named = true;
  }
  CHECK(named);
}

TEST_CASE("a passing footer without supporting records is rejected") {
  Certificate cert = generate(small_config(), "rhobound_vacuous.cert");
  Certificate hollow;
  hollow.records.push_back(cert.records.front());
  hollow.records.push_back(cert.records.back());
  REQUIRE(std::get<CertFooter>(hollow.records.back()).verdict == "pass");

  CheckReport report = check_certificate(hollow);
  CHECK_FALSE(report.ok);
}

TEST_CASE("runs with identical config differ only in the timestamp") {
  Certificate a = generate(small_config(), "rhobound_det_a.cert");
  Certificate b = generate(small_config(), "rhobound_det_b.cert");
  CHECK(strip_timestamp(a) == strip_timestamp(b));
}

TEST_CASE("parse errors carry the offending line") {
  std::istringstream in("header version=0.1.0\nnot_a_record x=1\n");
  CHECK_THROWS_AS(parse_certificate(in), CertParseError);
  try {
    std::istringstream again("header version=0.1.0\nnot_a_record x=1\n");
    parse_certificate(again);
  } catch (const CertParseError& e) {
    CHECK(e.line() == 1);  // header line itself is incomplete
  }
}

TEST_CASE("verify exits nonzero when the target ratio is unreachable") {
  RunConfig config;
  config.K = Rational(4);
  config.n_max = 12;
  config.sieve_limit = 100'000;
  std::ostringstream out, err;
  int rc = run_verify(config, out, err);
  CHECK(rc == kExitCheckFailed);
  CHECK(out.str().find("upper(8) = 40") != std::string::npos);
  CHECK(out.str().find("verdict: fail") != std::string::npos);
}

TEST_CASE("the direct rule replays the historical 17/3 bound end to end") {
  RunConfig config = small_config();
  config.rule = RefineRule::kDirect;
  Certificate cert = generate(config, "rhobound_direct.cert");
  CHECK(check_certificate(cert).ok);

  const CertFooter& footer = std::get<CertFooter>(cert.records.back());
  CHECK(footer.verdict == "pass");
  CHECK(footer.max_ratio == Rational(17, 3));
  bool equality_at_9 = false;
  for (long long n : footer.equality) {
    if (n == 9) equality_at_9 = true;
  }
  CHECK(equality_at_9);
}

TEST_CASE("a mutated certificate fails through the command surface too") {
  RunConfig config = small_config();
  auto path = temp_file("rhobound_cmd.cert");
  config.certificate_path = path.string();
  std::ostringstream out, err;
  REQUIRE(run_verify(config, out, err) == 0);

  std::ostringstream ok_out, ok_err;
  CHECK(run_check_certificate(path.string(), ok_out, ok_err) == 0);

  std::string text = read_file(path);
  auto pos = text.find("pi_k=7");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "pi_k=8");
  auto bad_path = temp_file("rhobound_cmd_bad.cert");
  std::ofstream(bad_path) << text;

  std::ostringstream bad_out, bad_err;
  CHECK(run_check_certificate(bad_path.string(), bad_out, bad_err) == kExitCheckFailed);
  CHECK(bad_err.str().find("record") != std::string::npos);

  std::ostringstream miss_out, miss_err;
  CHECK(run_check_certificate("/nonexistent/rhobound.cert", miss_out, miss_err) ==
        kExitUsage);
}

TEST_CASE("table command prints the refined pairs in every format") {
  RunConfig config;
  config.sieve_limit = 100'000;
  for (OutputFormat format :
       {OutputFormat::kText, OutputFormat::kTsv, OutputFormat::kRecords}) {
    config.format = format;
    std::ostringstream out, err;
    REQUIRE(run_table(config, 8, 12, out, err) == 0);
    std::string text = out.str();
    CHECK(text.find("40") != std::string::npos);
    CHECK(text.find("45") != std::string::npos);
    CHECK(text.find("49") != std::string::npos);
    CHECK(text.find("53") != std::string::npos);
    CHECK(text.find("57") != std::string::npos);
  }
  std::ostringstream out, err;
  CHECK(run_table(config, 9, 8, out, err) == kExitUsage);
}

TEST_CASE("crossover command labels hypothetical-slope results") {
  RunConfig config;
  config.slope = 3;
  std::ostringstream out, err;
  REQUIRE(run_crossover(config, out, err) == 0);
  CHECK(out.str().find("conditional on rho(n) >= 3n") != std::string::npos);

  config.slope = 2;
  config.K = Rational(4);
  std::ostringstream out2, err2;
  CHECK(run_crossover(config, out2, err2) == kExitUsage);
}

TEST_CASE("corollary command reports the certified constant") {
  RunConfig config;
  config.sieve_limit = 1'000'000;
  std::ostringstream out, err;
  REQUIRE(run_corollary(config, out, err) == 0);
  CHECK(out.str().find("141") != std::string::npos);
  CHECK(out.str().find("140.400390625") != std::string::npos);
}
