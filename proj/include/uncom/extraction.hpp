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

#ifndef UNCOM_EXTRACTION_HPP
#define UNCOM_EXTRACTION_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uncom/core_model.hpp"
#include "uncom/json_codec.hpp"

namespace uncom {

enum class RelationKind { Left, Right, Front, Behind, Beside, Near, NextTo, Between };

std::string_view to_string(RelationKind k);

struct SpatialRelation {
  std::string phrase;  // lexicon entry as matched, e.g. "next to"
  RelationKind kind = RelationKind::Near;
  std::string anchor_text;  // noun phrase the relation is measured against
  bool two_anchor = false;  // "between" takes two anchors
  bool incomplete = false;  // relation closes the utterance, no anchor

  bool operator==(const SpatialRelation&) const = default;
};

enum class ExtractionSource { Adapter, Fallback };

std::string_view to_string(ExtractionSource s);

struct ExtractionResult {
  CommandElements elements;
  std::optional<SpatialRelation> relation;
  ExtractionSource source = ExtractionSource::Fallback;
  // Why the adapter path was abandoned, when it was.
  std::string fallback_reason;

  bool operator==(const ExtractionResult&) const = default;
};

Json encode(const SpatialRelation& v);
Json encode(const ExtractionResult& v);

// Deterministic shallow grammar for the imperative tabletop register:
//   [verb [particle]] object-NP ("and" verb ["it"])* [connective] (target-NP | here | there)
// Throws EmptyTranscript or NoAction.
ExtractionResult extract_fallback(const Transcript& transcript);

// False iff the head word is a substitute word (this, that, it, here, ...).
bool classify_concreteness(std::string_view mention_text);
inline bool classify_concreteness(const Mention& m) { return classify_concreteness(m.text); }

// Longest-match scan of the spatial lexicon, action text first.
std::optional<SpatialRelation> detect_spatial_relation(std::string_view action_text,
                                                       std::string_view target_text);

// Text with leading determiners removed ("the other plate" -> "plate").
std::string strip_determiners(std::string_view text);

// Lowercased word list with surrounding punctuation removed.
std::vector<std::string> normalize_words(std::string_view text);

// --- language-model adapter -------------------------------------------------

// The two extraction prompts, sent verbatim and in order.
const std::array<std::string, 2>& extraction_prompts();

struct AdapterRequest {
  std::array<std::string, 2> prompts;
  Transcript transcript;
};

Json encode(const AdapterRequest& v);

// Transport to an external language model. Implementations throw
// Error{AdapterUnavailable} on transport failure and return the reply text otherwise.
class ExtractionAdapter {
 public:
  virtual ~ExtractionAdapter() = default;
  virtual std::string complete(const AdapterRequest& request) = 0;
  // Serial adapters get one request at a time from the engine.
  virtual bool concurrent() const { return false; }
};

struct AdapterPolicy {
  // Degrade to the fallback grammar when the adapter cannot be reached.
  bool fallback_on_unavailable = true;
};

ExtractionResult extract_via_adapter(const Transcript& transcript, ExtractionAdapter& adapter,
                                     const AdapterPolicy& policy = {});

// First balanced {...} object in free text, quotes respected. Empty when none.
std::string first_json_object(std::string_view text);

// Single-quoted pseudo-JSON to JSON. Apostrophes inside words are kept.
std::string requote_single_quotes(std::string_view text);

// Parses and validates a model reply against the transcript. Throws on failure.
CommandElements parse_adapter_reply(std::string_view reply, const Transcript& transcript);

}  // namespace uncom

#endif  // UNCOM_EXTRACTION_HPP
