#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlsg/multigraph.hpp"

namespace nlsg {

struct CheckResult {
  std::string suite;
  std::string check;
  std::size_t instances = 0;
  std::size_t failures = 0;
  // Smallest (bound - value) seen, relative where that makes sense; negative
  // means a violation.
  double worst_margin = 0;
  std::string note;
  bool pass() const { return failures == 0 && instances > 0; }
};

struct VerifyOptions {
  std::size_t instances = 50;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

using NamedGraph = std::pair<std::string, Multigraph>;

// Small connected graphs shipped with the tool; data/corpus holds the same
// graphs as files.
std::vector<NamedGraph> default_corpus();

std::vector<std::string> suite_names();
// Runs one suite by name, or every suite for "all".
std::vector<CheckResult> run_suite(const std::string& name, const std::vector<NamedGraph>& corpus,
                                   const VerifyOptions& opt);

}  // namespace nlsg
