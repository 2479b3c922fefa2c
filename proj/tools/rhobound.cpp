// rhobound: certify linear bounds on the number of distinct primes dividing
// the order of a finite solvable group, and the quartic bound for arbitrary
// finite groups that follows from them. See README.md for the method.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rhobound/certificate.hpp"
#include "rhobound/commands.hpp"
#include "rhobound/rational.hpp"

namespace {

struct CliOptions {
  rhobound::RunConfig config;
  std::string k_text = "5";
  std::string format_text = "text";
  std::string rule_text = "full";
  long long from = 1;
  long long to = 12;
  std::string cert_path;
};

void add_common_options(CLI::App* cmd, CliOptions& opts, bool with_pipeline_flags) {
  cmd->add_option("--sieve-limit", opts.config.sieve_limit,
                  "Sieve limit for exact prime counting (default overridable via "
                  "RHOBOUND_SIEVE_LIMIT)")
      ->check(CLI::Range(2LL, 1'000'000'000LL))
      ->capture_default_str();
  if (with_pipeline_flags) {
    cmd->add_option("--n-max", opts.config.n_max, "Ledger depth (extended to n0 - 1)")
        ->check(CLI::Range(4LL, 1'000'000LL))
        ->capture_default_str();
    cmd->add_option("--K", opts.k_text, "Target ratio, integer or rational (e.g. 17/3)")
        ->capture_default_str();
    cmd->add_option("--slope", opts.config.slope,
                    "Lower-bound slope: 2 unconditional, 3 hypothetical")
        ->check(CLI::IsMember({2, 3}))
        ->capture_default_str();
    cmd->add_option("--rule", opts.rule_text,
                    "Elimination rule: full (slack window + residual) or direct")
        ->check(CLI::IsMember({"full", "direct"}))
        ->capture_default_str();
    cmd->add_option("--format", opts.format_text, "Output format: text, tsv, records")
        ->check(CLI::IsMember({"text", "tsv", "records"}))
        ->capture_default_str();
  }
}

bool finalize(CliOptions& opts, std::ostream& err) {
  try {
    opts.config.K = rhobound::Rational::parse(opts.k_text);
    opts.config.format = rhobound::parse_output_format(opts.format_text);
    opts.config.rule = rhobound::parse_refine_rule(opts.rule_text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions opts;

  // Environment override for the default sieve limit; an explicit
  // --sieve-limit still wins. Malformed values are rejected loudly.
  if (const char* env = std::getenv("RHOBOUND_SIEVE_LIMIT")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 2) {
      std::cerr << "error: RHOBOUND_SIEVE_LIMIT='" << env << "' is not a valid limit\n";
      return rhobound::kExitUsage;
    }
    opts.config.sieve_limit = v;
  }

  CLI::App app{"Linear-bound certification for primes in element orders of finite solvable groups"};
  app.require_subcommand(1);

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the full pipeline and check every bound at the target ratio");
  add_common_options(verify, opts, true);
  verify->add_option("--out", opts.cert_path, "Write a re-checkable certificate here");

  CLI::App* table = app.add_subcommand("table", "Print certified bounds per n");
  add_common_options(table, opts, true);
  table->add_option("--from", opts.from, "First n")->capture_default_str();
  table->add_option("--to", opts.to, "Last n")->capture_default_str();

  CLI::App* crossover = app.add_subcommand(
      "crossover", "Solve for the n0 past which the analytic tail bound beats K");
  add_common_options(crossover, opts, true);

  CLI::App* corollary = app.add_subcommand(
      "corollary", "Evaluate the quartic bound for arbitrary finite groups");
  add_common_options(corollary, opts, true);

  std::string cert_file;
  CLI::App* check = app.add_subcommand("check-cert", "Re-validate a certificate file");
  check->add_option("path", cert_file, "Certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? rhobound::kExitPass : rhobound::kExitUsage;
  }

  if (!finalize(opts, std::cerr)) return rhobound::kExitUsage;
  opts.config.certificate_path = opts.cert_path;

  if (app.got_subcommand(verify)) {
    return rhobound::run_verify(opts.config, std::cout, std::cerr);
  }
  if (app.got_subcommand(table)) {
    return rhobound::run_table(opts.config, opts.from, opts.to, std::cout, std::cerr);
  }
  if (app.got_subcommand(crossover)) {
    return rhobound::run_crossover(opts.config, std::cout, std::cerr);
  }
  if (app.got_subcommand(corollary)) {
    return rhobound::run_corollary(opts.config, std::cout, std::cerr);
  }
  if (app.got_subcommand(check)) {
    return rhobound::run_check_certificate(cert_file, std::cout, std::cerr);
  }
  return rhobound::kExitUsage;
}
