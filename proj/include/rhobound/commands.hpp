#pragma once

#include <iosfwd>
#include <string>

#include "rhobound/rational.hpp"
#include "rhobound/elimination.hpp"

namespace rhobound {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconsistent = 3;

enum class OutputFormat { kText, kTsv, kRecords };

OutputFormat parse_output_format(const std::string& name);

struct RunConfig {
  long long n_max = 265;
  Rational K{5};
  long long sieve_limit = 1'000'000;
  int slope = 2;
  RefineRule rule = RefineRule::kFull;
  OutputFormat format = OutputFormat::kText;
  std::string certificate_path;  // empty: no certificate written
};

// Full pipeline: crossover, ledger to max(n_max, n0 - 1), linear range
// check, tail monotonicity, corollary. Writes a certificate when requested.
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

// Bound table rows for n in [from, to].
int run_table(const RunConfig& config, long long from, long long to, std::ostream& out,
              std::ostream& err);

// Crossover solve alone.
int run_crossover(const RunConfig& config, std::ostream& out, std::ostream& err);

// Quartic-bound evaluation over the pipeline's certified ratios.
int run_corollary(const RunConfig& config, std::ostream& out, std::ostream& err);

// Independent re-validation of a certificate file.
int run_check_certificate(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace rhobound
