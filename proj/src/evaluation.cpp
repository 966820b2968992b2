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

#include "uncom/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "uncom/polygon.hpp"

namespace uncom {

using namespace json_detail;

namespace {

const char* name_of(ObjectAxis a) { return a == ObjectAxis::Reference ? "reference" : "deixis"; }

const char* name_of(TargetAxis a) {
  switch (a) {
    case TargetAxis::Reference: return "reference";
    case TargetAxis::Deixis: return "deixis";
    case TargetAxis::AbsoluteArea: return "absolute_area";
    case TargetAxis::RelativeArea: return "relative_area";
  }
  return "reference";
}

const char* yes_no(bool b) { return b ? "Y" : "N"; }

}  // namespace

std::vector<std::pair<std::string, std::string>> axis_values(const VariationLabels& l) {
  return {{"object", name_of(l.object)},
          {"object_distractors", yes_no(l.object_distractors)},
          {"target", name_of(l.target)},
          {"target_distractors", yes_no(l.target_distractors)},
          {"clutter", yes_no(l.clutter)}};
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& all_axis_values() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> axes = {
      {"object", {"reference", "deixis"}},
      {"object_distractors", {"Y", "N"}},
      {"target", {"reference", "deixis", "absolute_area", "relative_area"}},
      {"target_distractors", {"Y", "N"}},
      {"clutter", {"Y", "N"}}};
  return axes;
}

Json encode(const VariationLabels& v) {
  return {{"object", name_of(v.object)},
          {"object_distractors", v.object_distractors},
          {"target", name_of(v.target)},
          {"target_distractors", v.target_distractors},
          {"clutter", v.clutter}};
}

Json encode(const GoldRecord& v) { return as_document({{"command", encode(v.command)}, {"labels", encode(v.labels)}}); }

void decode(const Json& j, const std::string& path, VariationLabels& out) {
  require_object(j, path);
  const std::string op = child(path, "object");
  const std::string o = get_string(field(j, path, "object"), op);
  if (o == "reference") out.object = ObjectAxis::Reference;
  else if (o == "deixis") out.object = ObjectAxis::Deixis;
  else throw Error(ErrorCode::SchemaMismatch, "unknown object axis value '" + o + "' at " + op, op);
  const std::string tp = child(path, "target");
  const std::string t = get_string(field(j, path, "target"), tp);
  bool known = false;
  for (TargetAxis a : {TargetAxis::Reference, TargetAxis::Deixis, TargetAxis::AbsoluteArea, TargetAxis::RelativeArea}) {
    if (t == name_of(a)) {
      out.target = a;
      known = true;
    }
  }
  if (!known) throw Error(ErrorCode::SchemaMismatch, "unknown target axis value '" + t + "' at " + tp, tp);
  out.object_distractors = get_bool(field(j, path, "object_distractors"), child(path, "object_distractors"));
  out.target_distractors = get_bool(field(j, path, "target_distractors"), child(path, "target_distractors"));
  out.clutter = get_bool(field(j, path, "clutter"), child(path, "clutter"));
}

void decode(const Json& j, const std::string& path, GoldRecord& out) {
  require_object(j, path);
  require_schema(j, path);
  decode(field(j, path, "command"), child(path, "command"), out.command);
  decode(field(j, path, "labels"), child(path, "labels"), out.labels);
}

bool object_matches(const ObjectResult& gold, const ObjectResult& actual) {
  return gold.name == actual.name && iou(gold.bbox, actual.bbox) >= kIouThreshold;
}

bool target_matches(const TargetResult& gold, const TargetResult& actual) {
  if (gold.kind != actual.kind) return false;
  if (gold.object && actual.object) return iou(gold.object->bbox, actual.object->bbox) >= kIouThreshold;
  if (gold.empty_cell && actual.empty_cell) {
    Polygon2 poly = gold.empty_cell->cell_polygon;
    if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    return contains(poly, actual.empty_cell->cell_center, 1e-9);
  }
  return false;
}

Json command_triple(const GroundedCommand& cmd) {
  Json target = {{"kind", std::string(to_string(cmd.target.kind))}};
  if (cmd.target.object) {
    target["name"] = cmd.target.object->name;
    target["bbox"] = encode(cmd.target.object->bbox);
  } else if (cmd.target.empty_cell) {
    target["cell_center"] = encode(cmd.target.empty_cell->cell_center);
    target["cell_polygon"] = encode(cmd.target.empty_cell->cell_polygon);
  }
  return {{"object", {{"name", cmd.object.name}, {"bbox", encode(cmd.object.bbox)}}},
          {"action", cmd.action},
          {"target", target}};
}

std::string_view to_string(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::Pass: return "pass";
    case OutcomeStatus::Fail: return "fail";
    case OutcomeStatus::Error: return "error";
    case OutcomeStatus::Skipped: return "skipped";
  }
  return "skipped";
}

ProviderFactory fixture_provider_factory() {
  return [](const PerceptionBundle& b) -> std::unique_ptr<PerceptionProvider> {
    return std::make_unique<FixtureProvider>(b);
  };
}

BundleOutcome evaluate_bundle(const std::string& name, const PerceptionBundle& bundle, const GoldRecord& gold,
                              PerceptionProvider& provider, const PipelineConfig& config) {
  BundleOutcome out;
  out.name = name;
  out.labels = gold.labels;
  try {
    const GroundingOutput g = ground(bundle, provider, config);
    out.object_match = object_matches(gold.command.object, g.command.object);
    out.target_match = target_matches(gold.command.target, g.command.target);
    out.action_match = gold.command.action == g.command.action;
    out.status = out.object_match && out.target_match ? OutcomeStatus::Pass : OutcomeStatus::Fail;
    if (out.status == OutcomeStatus::Fail || !out.action_match) {
      out.diff = {{"expected", command_triple(gold.command)}, {"actual", command_triple(g.command)}};
    }
  } catch (const Error& e) {
    out.status = OutcomeStatus::Error;
    out.error_code = std::string(to_string(e.code()));
    out.message = e.what();
    out.diff = {{"expected", command_triple(gold.command)}, {"actual", nullptr}};
  }
  return out;
}

void check_axis_totals(const EvalReport& report) {
  for (const auto& [axis, values] : report.axes) {
    int total = 0, passed = 0;
    for (const auto& [value, tally] : values) {
      total += tally.total;
      passed += tally.passed;
    }
    if (total != report.evaluated || passed != report.passed) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "axis '%s' sums to %d/%d but overall is %d/%d", axis.c_str(), passed, total,
                    report.passed, report.evaluated);
      throw Error(ErrorCode::InvariantViolation, buf);
    }
  }
}

EvalReport evaluate_dataset(const std::filesystem::path& dir, const PipelineConfig& config,
                            const ProviderFactory& factory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::Io, "dataset directory '" + dir.string() + "' is not readable");
  static constexpr std::string_view kBundleSuffix = ".bundle.json";
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    if (entry.is_regular_file() && file.size() > kBundleSuffix.size() && file.ends_with(kBundleSuffix)) {
      names.push_back(file.substr(0, file.size() - kBundleSuffix.size()));
    }
  }
  std::sort(names.begin(), names.end());

  EvalReport report;
  for (const auto& [axis, values] : all_axis_values()) {
    for (const auto& v : values) report.axes[axis][v] = {};
  }
  auto skip = [&](const std::string& name, const std::string& why) {
    BundleOutcome skipped;
    skipped.name = name;
    skipped.message = why;
    report.bundles.push_back(std::move(skipped));
    report.warnings.push_back("skipped " + name + ": " + why);
    ++report.skipped;
  };
  for (const auto& name : names) {
    const fs::path gold_path = dir / (name + ".gold.json");
    if (!fs::exists(gold_path)) {
      skip(name, "missing " + gold_path.filename().string());
      continue;
    }
    GoldRecord gold;
    try {
      gold = decode_json<GoldRecord>(read_text_file(gold_path.string()));
    } catch (const Error& e) {
      skip(name, std::string("unreadable gold: ") + e.what());
      continue;
    }
    BundleOutcome outcome;
    try {
      const PerceptionBundle bundle = load_bundle((dir / (name + std::string(kBundleSuffix))).string());
      auto provider = factory(bundle);
      outcome = evaluate_bundle(name, bundle, gold, *provider, config);
    } catch (const Error& e) {
      outcome.name = name;
      outcome.labels = gold.labels;
      outcome.status = OutcomeStatus::Error;
      outcome.error_code = std::string(to_string(e.code()));
      outcome.message = e.what();
    }
    ++report.evaluated;
    const bool pass = outcome.status == OutcomeStatus::Pass;
    if (pass) ++report.passed;
    for (const auto& [axis, value] : axis_values(gold.labels)) {
      auto& t = report.axes[axis][value];
      ++t.total;
      t.passed += pass ? 1 : 0;
    }
    report.bundles.push_back(std::move(outcome));
  }
  check_axis_totals(report);
  return report;
}

Json encode(const EvalReport& v) {
  Json bundles = Json::array();
  for (const auto& b : v.bundles) {
    Json o = {{"name", b.name}, {"status", std::string(to_string(b.status))}};
    if (b.status == OutcomeStatus::Pass || b.status == OutcomeStatus::Fail) {
      o["object_match"] = b.object_match;
      o["target_match"] = b.target_match;
      o["action_match"] = b.action_match;
    }
    if (b.labels) o["labels"] = encode(*b.labels);
    if (!b.error_code.empty()) o["error"] = {{"code", b.error_code}, {"message", b.message}};
    if (b.status == OutcomeStatus::Skipped) o["warning"] = b.message;
    if (!b.diff.is_null()) o["diff"] = b.diff;
    bundles.push_back(std::move(o));
  }
  Json axes = Json::object();
  for (const auto& [axis, values] : v.axes) {
    for (const auto& [value, t] : values) {
      axes[axis][value] = {{"passed", t.passed}, {"total", t.total}};
    }
  }
  return as_document({{"bundles", bundles},
                      {"axes", axes},
                      {"evaluated", v.evaluated},
                      {"passed", v.passed},
                      {"failed", v.evaluated - v.passed},
                      {"skipped", v.skipped},
                      {"accuracy", v.accuracy()},
                      {"warnings", v.warnings}});
}

std::string format_table(const EvalReport& r) {
  std::ostringstream s;
  std::size_t width = 6;
  for (const auto& b : r.bundles) width = std::max(width, b.name.size());
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %-7s  %-6s  %-6s  %s\n", static_cast<int>(width), "bundle", "status", "object",
                "target", "detail");
  s << line;
  for (const auto& b : r.bundles) {
    const bool scored = b.status == OutcomeStatus::Pass || b.status == OutcomeStatus::Fail;
    std::string detail = b.error_code.empty() ? b.message : b.error_code;
    if (scored && !b.action_match) detail = "action differs";
    std::snprintf(line, sizeof line, "%-*s  %-7s  %-6s  %-6s  %s\n", static_cast<int>(width), b.name.c_str(),
                  std::string(to_string(b.status)).c_str(), scored ? (b.object_match ? "ok" : "MISS") : "-",
                  scored ? (b.target_match ? "ok" : "MISS") : "-", detail.c_str());
    s << line;
  }
  s << "\n";
  std::snprintf(line, sizeof line, "%-20s  %-14s  %7s  %8s\n", "axis", "value", "passed", "accuracy");
  s << line;
  for (const auto& [axis, values] : all_axis_values()) {
    for (const auto& v : values) {
      const auto& t = r.axes.at(axis).at(v);
      char acc[16] = "-";
      if (t.total > 0) std::snprintf(acc, sizeof acc, "%.1f%%", 100.0 * t.passed / t.total);
      char frac[32];
      std::snprintf(frac, sizeof frac, "%d/%d", t.passed, t.total);
      std::snprintf(line, sizeof line, "%-20s  %-14s  %7s  %8s\n", axis.c_str(), v.c_str(), frac, acc);
      s << line;
    }
  }
  std::snprintf(line, sizeof line, "\noverall: %d/%d passed (%.1f%%), %d skipped\n", r.passed, r.evaluated,
                100.0 * r.accuracy(), r.skipped);
  s << line;
  return s.str();
}

}  // namespace uncom
