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

#ifndef UNCOM_PIPELINE_HPP
#define UNCOM_PIPELINE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uncom/core_model.hpp"
#include "uncom/extraction.hpp"
#include "uncom/gesture_geometry.hpp"
#include "uncom/json_codec.hpp"
#include "uncom/perception.hpp"
#include "uncom/table_map.hpp"

namespace uncom {

enum class ExtractorKind { Fallback, Adapter };

struct PipelineConfig {
  SiteGrid site_grid;
  RaySemantics ray_semantics = RaySemantics::Ray;
  DirectionConvention direction_convention = DirectionConvention::Camera;
  double score_floor = 0.3;
  std::string generic_object_prompt = "objects";
  std::string container_prompt = "container";
  std::string table_prompt = "table";
  ExtractorKind extractor = ExtractorKind::Fallback;
  double aspect_ratio = 1.0;

  GeometryOptions geometry() const { return {ray_semantics, aspect_ratio}; }
};

Json encode(const PipelineConfig& v);
void decode(const Json& j, const std::string& path, PipelineConfig& out);

// Applies "key=value" (dotted keys, JSON or bare-string values) to a config document.
void apply_override(Json& config, const std::string& assignment);

struct TraceCandidate {
  std::string label;
  BBox bbox;
  double score = 0.0;
  std::optional<double> ray_distance;
  bool selected = false;
  std::string note;  // why it was rejected, when it was
};

struct TraceStep {
  std::string step;
  std::string inputs;
  std::string decision;
  std::vector<TraceCandidate> alternatives;
};

struct PipelineTrace {
  std::vector<TraceStep> steps;

  TraceStep& add(std::string step, std::string inputs, std::string decision);
  const TraceStep* find(std::string_view step) const;
};

Json encode(const PipelineTrace& v);

// --- frame selection --------------------------------------------------------

struct FrameSelection {
  std::string frame_id;
  bool late_word = false;
};

// First frame at or after the end of the mention; the last frame (flagged)
// when the word ends after the recording. Throws NoFrames.
FrameSelection select_frame(std::span<const FrameRef> frames, const Mention& mention);

// --- resolution -------------------------------------------------------------

// Detector text prompt: the phrase followed by a period.
std::string detector_prompt(std::string_view phrase);

struct ResolvedObject {
  std::string name;
  Detection detection;
  bool no_gesture = false;
};

// Grounds the object mention in `frame_id`. Throws ObjectNotFound, IncompleteCommand.
ResolvedObject resolve_object(const CommandElements& elements, const std::string& frame_id,
                              const std::optional<PointingRay>& ray, PerceptionProvider& provider,
                              const PipelineConfig& config, PipelineTrace* trace = nullptr);

enum class TargetBranch { NamedObject, RelativeArea, Container, AbsoluteArea };

std::string_view to_string(TargetBranch b);

// (a) named target, (b) named anchor + spatial relation, (c) deictic target
// with a container in view, (d) deictic target on bare table.
TargetBranch route_target(bool concrete, bool has_relation, bool container_found);

struct ResolvedTarget {
  TargetBranch branch = TargetBranch::NamedObject;
  std::optional<ResolvedObject> object;  // branches a and c
  std::optional<VoronoiCell> cell;       // branches b and d
  std::optional<TableMap> table_map;     // branches b and d
  bool no_gesture = false;
  bool occupied_fallback = false;
};

// Throws TargetNotFound, TableNotFound, NoEmptyCell, BetweenUnsupported,
// NoHandDetected (branch d without a gesture), IncompleteCommand.
ResolvedTarget resolve_target(const CommandElements& elements, const std::optional<SpatialRelation>& relation,
                              const std::string& frame_id, const std::optional<PointingRay>& ray,
                              PerceptionProvider& provider, const PipelineConfig& config,
                              PipelineTrace* trace = nullptr);

// --- end to end -------------------------------------------------------------

struct GroundingOutput {
  GroundedCommand command;
  PipelineTrace trace;
  ExtractionResult extraction;
  FrameSelection object_frame;
  FrameSelection target_frame;
  std::optional<PointingRay> object_ray;
  std::optional<PointingRay> target_ray;
  std::optional<TableMap> table_map;
  TargetBranch branch = TargetBranch::NamedObject;
};

// Runs the whole decision flow. Errors propagate as uncom::Error with step() set.
GroundingOutput ground(const PerceptionBundle& bundle, PerceptionProvider& provider,
                       const PipelineConfig& config = {});

// Overlay data: object/target boxes, selected cell polygon, pointing segments.
Json annotation_json(const GroundingOutput& out);

}  // namespace uncom

#endif  // UNCOM_PIPELINE_HPP
