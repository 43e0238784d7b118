// Copyright 2026 The fpmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fpmod/json_io.hpp"
#include "fpmod/random_instances.hpp"

namespace fpmod {

struct HarnessConfig {
  std::uint64_t seed = 42;
  /// Instances per suite.
  std::size_t trials = 50;
  std::size_t max_gens = 3;
  long max_entry = 5;
  std::vector<RingDesc> rings = default_rings();
  std::size_t parallelism = 1;
  std::size_t horizon = 8;
  /// Empty means every registered suite.
  std::vector<std::string> suites;
  /// Test fixture hook: names a decider to corrupt inside the checks.
  std::string fault;
  /// Maximum number of candidate evaluations spent shrinking one failure.
  std::size_t shrink_budget = 400;

  static std::vector<RingDesc> default_rings();
  /// Throws InvalidInput when a bound is out of range.
  void validate() const;
};

enum class Verdict { Pass, Fail, Invalid };

using Counters = std::map<std::string, long>;

/// Signals a violated property inside a suite check.
class PropertyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws PropertyFailure with `what` unless `cond` holds.
void require(bool cond, const std::string& what);

struct Suite {
  std::string name;
  std::function<bool(const RingDesc&)> accepts;
  /// Instances are complete: the check reads nothing but the document.
  std::function<InputDoc(gen::Rng&, const RingDesc&, const HarnessConfig&)> generate;
  std::function<void(const InputDoc&, Counters&)> check;
};

/// Every registered suite, in report order.
const std::vector<Suite>& registered_suites();
const Suite& find_suite(const std::string& name);

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string message;
  Counters counters;
};

/// Runs one check; property failures, internal error codes and stray
/// exceptions are Fail, input error codes are Invalid.
Outcome evaluate(const Suite& s, const InputDoc& doc);

struct Shrunk {
  InputDoc doc;
  std::size_t steps = 0;
  std::string message;
};

/// Entry halving, then generator deletion, then relation deletion; the
/// first candidate that still fails is taken and the passes restart.
Shrunk shrink(const Suite& s, InputDoc doc, std::string message, std::size_t budget);

struct SuiteReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t invalid = 0;
  Counters counters;
  json failures = json::array();
};

struct HarnessReport {
  std::vector<SuiteReport> suites;
  std::size_t total_failures = 0;
  json to_json(const HarnessConfig& cfg) const;
};

/// Instance i of suite s is generated from derive_seed(seed, s.name, i) and
/// the ring cfg.rings filtered by s.accepts, cycled by index. Results are
/// aggregated in index order, so the report does not depend on parallelism.
HarnessReport run_harness(const HarnessConfig& cfg);

/// Re-runs the suite named in doc.params["suite"].
Outcome replay(const InputDoc& doc);

}  // namespace fpmod
