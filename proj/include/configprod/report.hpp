// Copyright 2026 The configprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configurations for the command-line driver, their serialization, and
// the report envelope wrapped around each pipeline's output.

#ifndef CONFIGPROD_REPORT_HPP_
#define CONFIGPROD_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "configprod/finset.hpp"
#include "configprod/pipeline.hpp"
#include "json.hpp"

namespace configprod {

inline constexpr const char* kToolVersion = "0.1.0";

/// Commands: verify-main, verify-orbit, verify-truncation, enumerate, check.
struct RunConfig {
  std::string command = "verify-main";
  std::uint32_t m = 1, n = 1;
  /// "sym", "trivial", or permutations in one-line notation separated by
  /// ';' (for example "2,1,3;1,3,2"). `group` acts on M, `group_n` on N.
  std::string group = "sym", group_n = "trivial";
  std::uint32_t max_degree = 2;
  std::uint32_t ell_min = 0, ell_max = 3;  // L ranges over r + ell_min .. r + ell_max
  std::uint32_t cap = 3;
  std::uint32_t probe_cap = 2;
  std::uint64_t budget = 400'000;
  bool certificates = true;
  bool parallel = true;
  std::string variant = "flat";
  std::string mutation = "none";
  std::uint64_t seed = 1;
  std::uint32_t k_max = 4;  // verify-truncation
  std::string what = "counts";  // enumerate: counts, selfic, boxfin, config, nerve
  std::uint32_t k = 3, l = 2;   // enumerate sizes
  std::string input;            // check
  std::string out;
  bool timings = false;
  bool allow_large = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Defaults of the given command (caps and bounds differ per command).
RunConfig default_config(const std::string& command);

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Usage errors; each names the flag to change.
std::vector<std::string> validate_config(const RunConfig& c);

/// Generators of a group on {1..degree} as described by RunConfig::group.
/// Empty means the full symmetric group. Throws std::invalid_argument.
std::vector<FinMap> parse_group(const std::string& spec, std::uint32_t degree);

/// {tool, version, config, status, report}. Throws std::invalid_argument on
/// usage errors (including bounds that are too small for the run).
Report run(const RunConfig& c);

/// 0 PASS, 1 FAIL, 2 INCONCLUSIVE.
int exit_code(Status s);
inline constexpr int kUsageExit = 3;

/// A few lines per verdict, for terminals.
std::string human_summary(const nlohmann::json& envelope);

}  // namespace configprod

#endif  // CONFIGPROD_REPORT_HPP_
