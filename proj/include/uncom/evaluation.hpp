// Copyright 2026 The uncom Authors.
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

#ifndef UNCOM_EVALUATION_HPP
#define UNCOM_EVALUATION_HPP

// Dataset evaluation. A dataset directory holds pairs of files
//   <name>.bundle.json   PerceptionBundle
//   <name>.gold.json     {"schema", "command": GroundedCommand, "labels": {...}}
// where labels place the bundle on each variation axis:
//   object:             "reference" | "deixis"
//   object_distractors: bool
//   target:             "reference" | "deixis" | "absolute_area" | "relative_area"
//   target_distractors: bool
//   clutter:            bool

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "uncom/pipeline.hpp"

namespace uncom {

inline constexpr double kIouThreshold = 0.5;

enum class ObjectAxis { Reference, Deixis };
enum class TargetAxis { Reference, Deixis, AbsoluteArea, RelativeArea };

struct VariationLabels {
  ObjectAxis object = ObjectAxis::Reference;
  bool object_distractors = false;
  TargetAxis target = TargetAxis::Reference;
  bool target_distractors = false;
  bool clutter = false;

  bool operator==(const VariationLabels&) const = default;
};

// Axis name -> value name, in a fixed axis order.
std::vector<std::pair<std::string, std::string>> axis_values(const VariationLabels& labels);
// Every value of every axis, for complete tables.
const std::vector<std::pair<std::string, std::vector<std::string>>>& all_axis_values();

struct GoldRecord {
  GroundedCommand command;
  VariationLabels labels;
};

Json encode(const VariationLabels& v);
Json encode(const GoldRecord& v);
void decode(const Json& j, const std::string& path, VariationLabels& out);
void decode(const Json& j, const std::string& path, GoldRecord& out);

// Same name and bbox IoU >= 0.5.
bool object_matches(const ObjectResult& gold, const ObjectResult& actual);
// Same kind; objects by IoU >= 0.5, empty cells by the actual cell center
// lying inside the gold polygon.
bool target_matches(const TargetResult& gold, const TargetResult& actual);

// (object, action, target) summary used in mismatch diffs.
Json command_triple(const GroundedCommand& cmd);

enum class OutcomeStatus { Pass, Fail, Error, Skipped };
std::string_view to_string(OutcomeStatus s);

struct BundleOutcome {
  std::string name;
  OutcomeStatus status = OutcomeStatus::Skipped;
  bool object_match = false;
  bool target_match = false;
  bool action_match = false;
  std::optional<VariationLabels> labels;
  std::string error_code;
  std::string message;
  Json diff;  // {"expected": triple, "actual": triple} on mismatch
};

struct AxisTally {
  int passed = 0;
  int total = 0;
};

struct EvalReport {
  std::vector<BundleOutcome> bundles;
  // axis -> value -> tally
  std::map<std::string, std::map<std::string, AxisTally>> axes;
  int evaluated = 0;
  int passed = 0;
  int skipped = 0;
  std::vector<std::string> warnings;

  double accuracy() const { return evaluated == 0 ? 0.0 : static_cast<double>(passed) / evaluated; }
};

using ProviderFactory = std::function<std::unique_ptr<PerceptionProvider>(const PerceptionBundle&)>;

// Replays each bundle through its own fixture provider.
ProviderFactory fixture_provider_factory();

// Grounds and scores one bundle against its gold record.
BundleOutcome evaluate_bundle(const std::string& name, const PerceptionBundle& bundle, const GoldRecord& gold,
                              PerceptionProvider& provider, const PipelineConfig& config);

// Evaluates every <name>.bundle.json in `dir` (sorted by name). Bundles
// without gold are skipped with a warning. Throws Io when `dir` is unreadable
// and InvariantViolation when the per-axis tallies do not sum to the totals.
EvalReport evaluate_dataset(const std::filesystem::path& dir, const PipelineConfig& config,
                            const ProviderFactory& factory = fixture_provider_factory());

// Throws InvariantViolation unless every axis sums to the overall counts.
void check_axis_totals(const EvalReport& report);

Json encode(const EvalReport& v);
std::string format_table(const EvalReport& report);

}  // namespace uncom

#endif  // UNCOM_EVALUATION_HPP
