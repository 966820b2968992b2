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

#include "uncom/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "uncom/bridge.hpp"
#include "uncom/error.hpp"

namespace uncom {

using namespace json_detail;

// --- config -----------------------------------------------------------------

Json encode(const PipelineConfig& v) {
  return {{"site_grid", {{"rows", v.site_grid.rows}, {"cols", v.site_grid.cols}}},
          {"ray_semantics", v.ray_semantics == RaySemantics::Ray ? "ray" : "line"},
          {"direction_convention", v.direction_convention == DirectionConvention::Camera ? "camera" : "instructor"},
          {"score_floor", v.score_floor},
          {"generic_object_prompt", v.generic_object_prompt},
          {"container_prompt", v.container_prompt},
          {"table_prompt", v.table_prompt},
          {"extractor", v.extractor == ExtractorKind::Fallback ? "fallback" : "adapter"},
          {"aspect_ratio", v.aspect_ratio}};
}

namespace {

template <typename E>
E parse_choice(const Json& j, const std::string& path, std::initializer_list<std::pair<const char*, E>> choices) {
  const std::string s = get_string(j, path);
  for (const auto& [name, value] : choices) {
    if (s == name) return value;
  }
  throw Error(ErrorCode::SchemaMismatch, "unknown value '" + s + "' at " + path, path);
}

}  // namespace

void decode(const Json& j, const std::string& path, PipelineConfig& out) {
  require_object(j, path);
  static const std::set<std::string> known = {"site_grid", "ray_semantics", "direction_convention",
                                              "score_floor", "generic_object_prompt", "container_prompt",
                                              "table_prompt", "extractor", "aspect_ratio", "schema"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw Error(ErrorCode::SchemaMismatch, "unknown config key at " + child(path, it.key().c_str()),
                  child(path, it.key().c_str()));
    }
  }
  out = PipelineConfig{};
  if (const Json* g = optional_field(j, "site_grid")) {
    const std::string gp = child(path, "site_grid");
    if (const Json* r = optional_field(*g, "rows")) out.site_grid.rows = static_cast<int>(get_integer(*r, child(gp, "rows")));
    if (const Json* c = optional_field(*g, "cols")) out.site_grid.cols = static_cast<int>(get_integer(*c, child(gp, "cols")));
    if (out.site_grid.rows < 2 || out.site_grid.cols < 2) violated("rows, cols >= 2", gp);
  }
  if (const Json* v = optional_field(j, "ray_semantics")) {
    out.ray_semantics = parse_choice<RaySemantics>(*v, child(path, "ray_semantics"),
                                                   {{"ray", RaySemantics::Ray}, {"line", RaySemantics::Line}});
  }
  if (const Json* v = optional_field(j, "direction_convention")) {
    out.direction_convention = parse_choice<DirectionConvention>(
        *v, child(path, "direction_convention"),
        {{"camera", DirectionConvention::Camera}, {"instructor", DirectionConvention::Instructor}});
  }
  if (const Json* v = optional_field(j, "score_floor")) {
    out.score_floor = get_number(*v, child(path, "score_floor"));
    if (!(out.score_floor >= 0.0 && out.score_floor <= 1.0)) violated("score floor in [0,1]", child(path, "score_floor"));
  }
  auto prompt = [&](const char* key, std::string& slot) {
    if (const Json* v = optional_field(j, key)) {
      slot = get_string(*v, child(path, key));
      if (slot.empty()) violated("prompts non-empty", child(path, key));
    }
  };
  prompt("generic_object_prompt", out.generic_object_prompt);
  prompt("container_prompt", out.container_prompt);
  prompt("table_prompt", out.table_prompt);
  if (const Json* v = optional_field(j, "extractor")) {
    out.extractor = parse_choice<ExtractorKind>(*v, child(path, "extractor"),
                                                {{"fallback", ExtractorKind::Fallback}, {"adapter", ExtractorKind::Adapter}});
  }
  if (const Json* v = optional_field(j, "aspect_ratio")) {
    out.aspect_ratio = get_number(*v, child(path, "aspect_ratio"));
    if (!(out.aspect_ratio > 0.0)) violated("aspect_ratio > 0", child(path, "aspect_ratio"));
  }
}

void apply_override(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::SchemaMismatch, "override must look like key=value: '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    value = raw;
  }
  Json* node = &config;
  std::size_t from = 0;
  for (;;) {
    const auto dot = key.find('.', from);
    const std::string part = key.substr(from, dot == std::string::npos ? std::string::npos : dot - from);
    if (!node->is_object()) *node = Json::object();
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    from = dot + 1;
  }
}

// --- trace ------------------------------------------------------------------

TraceStep& PipelineTrace::add(std::string step, std::string inputs, std::string decision) {
  steps.push_back({std::move(step), std::move(inputs), std::move(decision), {}});
  return steps.back();
}

const TraceStep* PipelineTrace::find(std::string_view step) const {
  for (const auto& s : steps) {
    if (s.step == step) return &s;
  }
  return nullptr;
}

Json encode(const PipelineTrace& v) {
  Json steps = Json::array();
  for (const auto& s : v.steps) {
    Json alts = Json::array();
    for (const auto& c : s.alternatives) {
      alts.push_back({{"label", c.label},
                      {"bbox", encode(c.bbox)},
                      {"score", c.score},
                      {"ray_distance", c.ray_distance ? Json(*c.ray_distance) : Json(nullptr)},
                      {"selected", c.selected},
                      {"note", c.note}});
    }
    steps.push_back({{"step", s.step}, {"inputs", s.inputs}, {"decision", s.decision}, {"alternatives", alts}});
  }
  return as_document({{"steps", steps}});
}

// --- frame selection --------------------------------------------------------

FrameSelection select_frame(std::span<const FrameRef> frames, const Mention& mention) {
  if (frames.empty()) throw Error(ErrorCode::NoFrames, "bundle has no frames");
  for (const auto& f : frames) {
    if (f.timestamp >= mention.timespan.end) return {f.frame_id, false};
  }
  return {frames.back().frame_id, true};
}

// --- resolution -------------------------------------------------------------

std::string detector_prompt(std::string_view phrase) { return std::string(phrase) + "."; }

std::string_view to_string(TargetBranch b) {
  switch (b) {
    case TargetBranch::NamedObject: return "named_object";
    case TargetBranch::RelativeArea: return "relative_area";
    case TargetBranch::Container: return "container";
    case TargetBranch::AbsoluteArea: return "absolute_area";
  }
  return "named_object";
}

TargetBranch route_target(bool concrete, bool has_relation, bool container_found) {
  if (concrete) return has_relation ? TargetBranch::RelativeArea : TargetBranch::NamedObject;
  return container_found ? TargetBranch::Container : TargetBranch::AbsoluteArea;
}

namespace {

std::string describe(const Point2& p) {
  std::ostringstream s;
  s.precision(4);
  s << "(" << p.x() << ", " << p.y() << ")";
  return s.str();
}

struct Choice {
  Detection detection;
  bool no_gesture = false;
};

// Score-floor filter, then nearest-to-ray (or best score without a ray).
std::optional<Choice> choose_detection(const std::vector<Detection>& raw, const std::optional<PointingRay>& ray,
                                       const PipelineConfig& config, TraceStep* step) {
  std::vector<Detection> kept;
  std::vector<std::size_t> kept_index;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].score >= config.score_floor) {
      kept.push_back(raw[i]);
      kept_index.push_back(i);
    }
  }
  std::vector<TraceCandidate> candidates;
  for (const auto& d : raw) {
    TraceCandidate c{d.label, d.bbox, d.score, std::nullopt, false, ""};
    if (ray) c.ray_distance = distance_point_to_ray(*ray, d.bbox.center(), config.geometry());
    if (d.score < config.score_floor) c.note = "below score floor";
    candidates.push_back(std::move(c));
  }
  std::optional<Choice> out;
  if (!kept.empty()) {
    std::size_t pick = 0;
    bool no_gesture = !ray.has_value();
    if (ray) {
      pick = select_nearest_detection(*ray, kept, config.geometry()).index;
    } else {
      for (std::size_t i = 1; i < kept.size(); ++i) {
        if (kept[i].score > kept[pick].score) pick = i;
      }
    }
    out = Choice{kept[pick], no_gesture};
    candidates[kept_index[pick]].selected = true;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (k == pick) continue;
      candidates[kept_index[k]].note = ray ? "farther from pointing ray" : "lower score (no gesture)";
    }
  }
  if (step) step->alternatives = std::move(candidates);
  return out;
}

ObjectResult to_object_result(const ResolvedObject& r) {
  return ObjectResult{r.name, r.detection.bbox, {}, r.detection.frame_id};
}

std::optional<Detection> best_table(PerceptionProvider& provider, const std::string& frame_id,
                                    const PipelineConfig& config, PipelineTrace* trace) {
  const std::string prompt = detector_prompt(config.table_prompt);
  auto dets = provider.detect(frame_id, prompt);
  TraceStep scratch;
  TraceStep* step = trace ? &trace->add("table_detection", "prompt \"" + prompt + "\" on " + frame_id, "") : &scratch;
  auto choice = choose_detection(dets, std::nullopt, config, step);
  if (!choice) {
    step->decision = "no table above score floor";
    return std::nullopt;
  }
  step->decision = "table bbox chosen by score";
  return choice->detection;
}

std::vector<Detection> scene_objects(PerceptionProvider& provider, const std::string& frame_id,
                                     const PipelineConfig& config) {
  std::vector<Detection> out;
  for (auto& d : provider.detect(frame_id, detector_prompt(config.generic_object_prompt))) {
    if (d.score >= config.score_floor) out.push_back(std::move(d));
  }
  return out;
}

void trace_map(PipelineTrace* trace, const TableMap& map, std::size_t chosen, const std::string& how) {
  if (!trace) return;
  std::size_t occupied = 0;
  for (const auto& c : map.cells) occupied += c.occupied ? 1 : 0;
  std::ostringstream in;
  in << map.cells.size() << " cells, " << occupied << " occupied";
  trace->add("table_map", in.str(), how + "; cell " + std::to_string(chosen) + " at " + describe(map.cells[chosen].site));
}

}  // namespace

ResolvedObject resolve_object(const CommandElements& elements, const std::string& frame_id,
                              const std::optional<PointingRay>& ray, PerceptionProvider& provider,
                              const PipelineConfig& config, PipelineTrace* trace) {
  if (!elements.object) throw Error(ErrorCode::IncompleteCommand, "command names no object");
  const Mention& m = *elements.object;
  const bool concrete = m.concrete.value_or(classify_concreteness(m.text));
  const std::string prompt = detector_prompt(concrete ? m.text : config.generic_object_prompt);
  const auto dets = provider.detect(frame_id, prompt);
  TraceStep scratch;
  TraceStep* step = trace ? &trace->add("object_choice", "prompt \"" + prompt + "\" on " + frame_id, "") : &scratch;
  auto choice = choose_detection(dets, ray, config, step);
  if (!choice) {
    step->decision = "nothing above score floor";
    throw Error(ErrorCode::ObjectNotFound, "no detection for \"" + prompt + "\" on " + frame_id);
  }
  ResolvedObject r{concrete ? m.text : choice->detection.label, choice->detection, choice->no_gesture};
  step->decision = "selected \"" + r.name + "\" at " + describe(r.detection.bbox.center()) +
                   (r.no_gesture ? " by score (no_gesture)" : " nearest to pointing ray");
  return r;
}

ResolvedTarget resolve_target(const CommandElements& elements, const std::optional<SpatialRelation>& relation,
                              const std::string& frame_id, const std::optional<PointingRay>& ray,
                              PerceptionProvider& provider, const PipelineConfig& config, PipelineTrace* trace) {
  if (!elements.target) throw Error(ErrorCode::IncompleteCommand, "command names no target");
  const Mention& m = *elements.target;
  const bool concrete = m.concrete.value_or(classify_concreteness(m.text));
  ResolvedTarget out;
  TraceStep scratch;

  auto record_branch = [&](const std::string& why) {
    if (trace) trace->add("target_branch", "target \"" + m.text + "\"", std::string(to_string(out.branch)) + ": " + why);
  };

  std::vector<Detection> containers;
  if (!concrete) {
    for (auto& d : provider.detect(frame_id, detector_prompt(config.container_prompt))) containers.push_back(d);
  }
  const bool container_found = std::any_of(containers.begin(), containers.end(),
                                            [&](const Detection& d) { return d.score >= config.score_floor; });
  if (!concrete && trace) {
    const auto n = std::count_if(containers.begin(), containers.end(),
                                 [&](const Detection& d) { return d.score >= config.score_floor; });
    trace->add("container_probe", "prompt \"" + detector_prompt(config.container_prompt) + "\" on " + frame_id,
               std::to_string(n) + " container(s) above score floor");
  }
  out.branch = route_target(concrete, relation.has_value(), container_found);

  switch (out.branch) {
    case TargetBranch::NamedObject: {
      record_branch("concrete target, no spatial relation");
      const std::string prompt = detector_prompt(m.text);
      TraceStep* step = trace ? &trace->add("target_choice", "prompt \"" + prompt + "\" on " + frame_id, "") : &scratch;
      auto choice = choose_detection(provider.detect(frame_id, prompt), ray, config, step);
      if (!choice) {
        step->decision = "nothing above score floor";
        throw Error(ErrorCode::TargetNotFound, "no detection for \"" + prompt + "\" on " + frame_id);
      }
      out.object = ResolvedObject{m.text, choice->detection, choice->no_gesture};
      out.no_gesture = choice->no_gesture;
      step->decision = "selected \"" + m.text + "\" at " + describe(choice->detection.bbox.center());
      break;
    }
    case TargetBranch::RelativeArea: {
      record_branch("concrete target with relation '" + relation->phrase + "'");
      if (relation->kind == RelationKind::Between || relation->two_anchor) {
        throw Error(ErrorCode::BetweenUnsupported, "two-anchor relation 'between' is not supported");
      }
      const std::string anchor = strip_determiners(relation->anchor_text);
      if (anchor.empty()) throw Error(ErrorCode::TargetNotFound, "spatial relation has no anchor");
      const std::string prompt = detector_prompt(anchor);
      TraceStep* step = trace ? &trace->add("target_choice", "anchor prompt \"" + prompt + "\" on " + frame_id, "") : &scratch;
      auto choice = choose_detection(provider.detect(frame_id, prompt), ray, config, step);
      if (!choice) {
        step->decision = "anchor not found";
        throw Error(ErrorCode::TargetNotFound, "no detection for anchor \"" + prompt + "\" on " + frame_id);
      }
      step->decision = "anchor \"" + anchor + "\" at " + describe(choice->detection.bbox.center());
      out.no_gesture = choice->no_gesture;
      const auto table = best_table(provider, frame_id, config, trace);
      if (!table) throw Error(ErrorCode::TableNotFound, "no table detected on " + frame_id);
      auto objects = scene_objects(provider, frame_id, config);
      objects.push_back(choice->detection);
      TableMap map = build_table_map(*table, objects, config.site_grid);
      const std::size_t idx = find_empty_cell_directional(map, choice->detection, relation->kind, config.direction_convention);
      trace_map(trace, map, idx, "nearest empty cell " + std::string(to_string(relation->kind)) + " of anchor");
      out.cell = map.cells[idx];
      out.table_map = std::move(map);
      break;
    }
    case TargetBranch::Container: {
      record_branch("deictic target, container in view");
      TraceStep* step = trace ? &trace->add("target_choice", "prompt \"" + detector_prompt(config.container_prompt) + "\" on " + frame_id, "") : &scratch;
      auto choice = choose_detection(containers, ray, config, step);
      out.object = ResolvedObject{choice->detection.label, choice->detection, choice->no_gesture};
      out.no_gesture = choice->no_gesture;
      std::string decision = "container \"" + choice->detection.label + "\" at " + describe(choice->detection.bbox.center());
      if (ray) {
        decision += ", ray distance " + std::to_string(distance_point_to_ray(*ray, choice->detection.bbox.center(), config.geometry()));
      }
      step->decision = decision;
      break;
    }
    case TargetBranch::AbsoluteArea: {
      record_branch("deictic target, no container");
      if (!ray) throw Error(ErrorCode::NoHandDetected, "absolute-area target needs a pointing gesture");
      const auto table = best_table(provider, frame_id, config, trace);
      if (!table) throw Error(ErrorCode::TableNotFound, "no table detected on " + frame_id);
      const auto objects = scene_objects(provider, frame_id, config);
      const DepthMap depth = normalize_depth(provider.depth(frame_id));
      TableMap map = annotate_depth(build_table_map(*table, objects, config.site_grid), depth);
      const Ray3d ray3 = lift_ray_3d(*ray, depth);
      const CellSelection sel = select_cell_by_ray3d(map, ray3, config.ray_semantics);
      out.occupied_fallback = sel.occupied_fallback;
      trace_map(trace, map, sel.index,
                sel.occupied_fallback ? "every cell occupied; nearest cell to 3D ray (occupied_fallback)"
                                      : "empty cell nearest to 3D pointing ray");
      out.cell = map.cells[sel.index];
      out.table_map = std::move(map);
      break;
    }
  }
  return out;
}

// --- end to end -------------------------------------------------------------

namespace {

template <typename F>
auto in_step(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.step().empty()) throw;
    throw e.with_step(name);
  }
}

std::optional<PointingRay> analyze_hands(PerceptionProvider& provider, const std::string& frame_id, ZSign z_sign,
                                         PipelineTrace& trace, const std::string& role) {
  const auto hands = provider.hands(frame_id);
  if (hands.empty()) {
    trace.add("hand_choice", role + " frame " + frame_id + ": 0 hands", "no hand; no_gesture");
    return std::nullopt;
  }
  const HandObservation& hand = select_pointing_hand(hands, z_sign);
  const std::size_t which = static_cast<std::size_t>(&hand - hands.data());
  std::ostringstream in;
  in << role << " frame " << frame_id << ": " << hands.size() << " hand(s), fingertip z";
  for (const auto& h : hands) in << " " << h.index_tip().z;
  try {
    PointingRay ray = pointing_ray(hand);
    trace.add("hand_choice", in.str(),
              "hand " + std::to_string(which) + " (" + std::string(to_string(hand.handedness)) + ") closest to camera; ray from " +
                  describe(ray.origin()) + " toward " + describe(ray.direction()));
    return ray;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegeneratePointing) throw;
    trace.add("hand_choice", in.str(), "hand " + std::to_string(which) + " degenerate pointing; no_gesture");
    return std::nullopt;
  }
}

std::string describe_mention(const std::optional<Mention>& m) {
  if (!m) return "-";
  std::string s = "\"" + m->text + "\"";
  if (m->concrete) s += *m->concrete ? " (concrete)" : " (deictic)";
  return s;
}

}  // namespace

GroundingOutput ground(const PerceptionBundle& bundle, PerceptionProvider& provider, const PipelineConfig& config) {
  GroundingOutput out;
  PipelineTrace& trace = out.trace;
  std::set<std::string> flags;

  const Transcript transcript = in_step("transcription", [&] {
    return bundle.transcript ? *bundle.transcript : provider.transcribe(bundle.audio.value_or(""));
  });

  out.extraction = in_step("extraction", [&] {
    if (config.extractor == ExtractorKind::Adapter) {
      ProviderExtractionAdapter adapter(provider);
      return extract_via_adapter(transcript, adapter);
    }
    return extract_fallback(transcript);
  });
  const CommandElements& elements = out.extraction.elements;
  {
    std::string decision = "object " + describe_mention(elements.object) + ", action " +
                           describe_mention(elements.action) + ", target " + describe_mention(elements.target);
    if (out.extraction.relation) decision += ", relation " + std::string(to_string(out.extraction.relation->kind));
    decision += " [" + std::string(to_string(out.extraction.source)) + "]";
    trace.add("extraction", "\"" + transcript.text() + "\"", decision);
  }
  if (!out.extraction.fallback_reason.empty()) flags.insert("extraction_fallback");
  if (elements.ordering_violation()) flags.insert("ordering_violation");
  if (!elements.object) throw Error(ErrorCode::IncompleteCommand, "command names no object").with_step("extraction");
  if (!elements.target) throw Error(ErrorCode::IncompleteCommand, "command names no target").with_step("extraction");

  in_step("frame_selection", [&] {
    out.object_frame = select_frame(bundle.frames, *elements.object);
    out.target_frame = select_frame(bundle.frames, *elements.target);
    std::ostringstream in;
    in << "object word ends " << elements.object->timespan.end << " s, target word ends "
       << elements.target->timespan.end << " s";
    trace.add("frame_selection", in.str(),
              "object frame " + out.object_frame.frame_id + (out.object_frame.late_word ? " (late_word)" : "") +
                  ", target frame " + out.target_frame.frame_id + (out.target_frame.late_word ? " (late_word)" : ""));
    if (out.object_frame.late_word || out.target_frame.late_word) flags.insert("late_word");
  });

  in_step("hand_choice", [&] {
    out.object_ray = analyze_hands(provider, out.object_frame.frame_id, bundle.z_sign, trace, "object");
    out.target_ray = analyze_hands(provider, out.target_frame.frame_id, bundle.z_sign, trace, "target");
  });

  const ResolvedObject object = in_step("object_choice", [&] {
    return resolve_object(elements, out.object_frame.frame_id, out.object_ray, provider, config, &trace);
  });
  if (object.no_gesture) flags.insert("no_gesture");

  ResolvedTarget target = in_step("target_choice", [&] {
    return resolve_target(elements, out.extraction.relation, out.target_frame.frame_id, out.target_ray, provider,
                          config, &trace);
  });
  out.branch = target.branch;
  if (target.no_gesture) flags.insert("no_gesture");
  if (target.occupied_fallback) flags.insert("occupied_fallback");

  GroundedCommand& cmd = out.command;
  in_step("segmentation", [&] {
    cmd.object = to_object_result(object);
    const Point2 oc = object.detection.bbox.center();
    cmd.object.mask = provider.segment(object.detection.frame_id, oc);
    std::string decision = "object mask at " + describe(oc);
    if (target.object) {
      ObjectResult t = to_object_result(*target.object);
      const Point2 tc = target.object->detection.bbox.center();
      t.mask = provider.segment(target.object->detection.frame_id, tc);
      cmd.target = TargetResult::from_object(std::move(t));
      decision += ", target mask at " + describe(tc);
    } else {
      EmptyCellResult c{target.cell->polygon, target.cell->site, out.target_frame.frame_id};
      cmd.target = TargetResult::from_cell(std::move(c));
      decision += ", target is an empty cell";
    }
    trace.add("segmentation", "bbox-center point prompts", decision);
  });
  cmd.action = elements.action ? elements.action->text : std::string();
  cmd.flags.assign(flags.begin(), flags.end());
  out.table_map = std::move(target.table_map);
  return out;
}

Json annotation_json(const GroundingOutput& out) {
  const GroundedCommand& cmd = out.command;
  auto pointing = [](const std::optional<PointingRay>& r, const FrameSelection& f) {
    if (!r) return Json(nullptr);
    return Json{{"frame_id", f.frame_id}, {"base", encode(r->base)}, {"tip", encode(r->origin())}};
  };
  Json target = {{"kind", std::string(to_string(cmd.target.kind))}, {"branch", std::string(to_string(out.branch))}};
  if (cmd.target.object) {
    target["name"] = cmd.target.object->name;
    target["bbox"] = encode(cmd.target.object->bbox);
    target["frame_id"] = cmd.target.object->frame_id;
  } else if (cmd.target.empty_cell) {
    target["cell_polygon"] = encode(cmd.target.empty_cell->cell_polygon);
    target["cell_center"] = encode(cmd.target.empty_cell->cell_center);
    target["frame_id"] = cmd.target.empty_cell->frame_id;
  }
  const std::string target_name = cmd.target.object ? cmd.target.object->name : "empty cell";
  return as_document({{"caption", cmd.object.name + " - " + cmd.action + " - " + target_name},
                      {"object", {{"name", cmd.object.name}, {"bbox", encode(cmd.object.bbox)}, {"frame_id", cmd.object.frame_id}}},
                      {"target", target},
                      {"pointing", {{"object", pointing(out.object_ray, out.object_frame)},
                                    {"target", pointing(out.target_ray, out.target_frame)}}},
                      {"table_map", out.table_map ? encode(*out.table_map) : Json(nullptr)}});
}

}  // namespace uncom
