#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rhobound/certificate.hpp"

namespace rhobound {

struct CheckIssue {
  std::size_t record = 0;  // 1-based index; equals the line number in a canonical file
  std::string message;
};

struct CheckReport {
  bool ok = false;
  std::size_t records_checked = 0;
  std::vector<CheckIssue> issues;
};

// Re-validates every recorded inequality against a freshly built prime
// oracle, replaying the comparisons directly from the record fields. This
// deliberately never calls slack_threshold or refine_upper: a bug in the
// engine cannot certify itself. The footer verdict is recomputed from the
// records, so a passing footer with missing or failing records is rejected.
CheckReport check_certificate(const Certificate& cert);

}  // namespace rhobound
