#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hreg {

struct SuiteSpec {
  std::string id;
  std::uint32_t scale = 0;   ///< 0 picks the suite default
  std::uint64_t seed = 0;
  std::uint32_t trials = 0;  ///< 0 picks the suite default
};

struct TrialRecord {
  std::uint32_t index = 0;
  std::string digest;   ///< FNV-1a of the canonical instance text
  std::string outcome;  ///< "pass", "fail" or "unknown"
  std::string detail;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint32_t scale = 0;
  std::uint32_t trials = 0;
  std::vector<TrialRecord> records;
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::string> caveats;
  bool pass = true;
  double wallSeconds = 0;
};

/// Registered suite ids, in registration order.
const std::vector<std::string>& suite_ids();

/// Throws Error{UnknownSuite} for an unregistered id. Trial i runs on seed
/// derive_seed(spec.seed, i).
Report run_suite(const SuiteSpec& spec);

/// Sorted keys, rationals as "p/q" strings. Wall time only when asked for,
/// so that default output is byte-identical across runs.
std::string report_json(const Report& report, bool withTiming = false);

}  // namespace hreg
