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

#include "uncom/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "uncom/error.hpp"
#include "uncom/prompts.inc"

namespace uncom {

namespace {

const std::set<std::string, std::less<>> kVerbs = {
    "take",  "put",   "place", "pour",  "stack", "move",   "bring",  "give",
    "grab",  "pick",  "set",   "drop",  "push",  "hand",   "fetch",  "lift",
    "get",   "throw", "insert", "slide", "carry", "transfer", "lay", "hang"};

const std::set<std::string, std::less<>> kParticles = {"up", "down"};

const std::set<std::string, std::less<>> kDeterminers = {
    "the", "a", "an", "this", "that", "these", "those", "other", "another", "some", "my", "your"};

const std::set<std::string, std::less<>> kObjectPronouns = {"it", "them"};

const std::set<std::string, std::less<>> kDeicticAdverbs = {"here", "there"};

const std::set<std::string, std::less<>> kFiller = {"please", "um", "uh"};

const std::set<std::string, std::less<>> kSubstituteWords = {
    "this", "that", "it", "here", "there", "thing", "one", "something"};

// Trailing prepositional tails cut before taking the head word.
const std::set<std::string, std::less<>> kTailPrepositions = {
    "of", "on", "in", "at", "with", "from", "near", "next", "to", "behind",
    "beside", "between", "inside", "into", "under", "over"};

// Connective phrases continuing an action. Only the first `surface` words
// enter the action text ("on top of" reads "on top").
struct Connective {
  std::vector<std::string> words;
  std::size_t surface;
};

const std::vector<Connective> kConnectives = {
    {{"to", "the", "left", "of"}, 4}, {{"to", "the", "right", "of"}, 4},
    {{"on", "the", "left", "of"}, 4}, {{"on", "the", "right", "of"}, 4},
    {{"in", "front", "of"}, 3},       {{"on", "top", "of"}, 2},
    {{"on", "top"}, 2},               {{"inside", "of"}, 2},
    {{"next", "to"}, 2},              {{"left", "of"}, 2},
    {{"right", "of"}, 2},             {{"inside"}, 1},
    {{"into"}, 1},                    {{"onto"}, 1},
    {{"on"}, 1},                      {{"in"}, 1},
    {{"to"}, 1},                      {{"behind"}, 1},
    {{"beside"}, 1},                  {{"near"}, 1},
    {{"between"}, 1},                 {{"under"}, 1},
    {{"over"}, 1},                    {{"towards"}, 1},
    {{"toward"}, 1},                  {{"at"}, 1},
};

struct RelationEntry {
  std::vector<std::string> words;
  RelationKind kind;
};

const std::vector<RelationEntry> kRelations = {
    {{"in", "front", "of"}, RelationKind::Front}, {{"next", "to"}, RelationKind::NextTo},
    {{"left"}, RelationKind::Left},               {{"right"}, RelationKind::Right},
    {{"behind"}, RelationKind::Behind},           {{"beside"}, RelationKind::Beside},
    {{"near"}, RelationKind::Near},               {{"between"}, RelationKind::Between},
};

std::string join(const std::vector<std::string>& words, std::size_t from = 0,
                 std::size_t to = std::numeric_limits<std::size_t>::max()) {
  std::string out;
  to = std::min(to, words.size());
  for (std::size_t i = from; i < to; ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

std::string normalize_word(std::string_view raw) {
  std::string w;
  for (unsigned char c : raw) w += static_cast<char>(std::tolower(c));
  auto keep = [](unsigned char c) { return std::isalnum(c) != 0; };
  std::size_t b = 0;
  std::size_t e = w.size();
  while (b < e && !keep(static_cast<unsigned char>(w[b]))) ++b;
  while (e > b && !keep(static_cast<unsigned char>(w[e - 1]))) --e;
  return w.substr(b, e - b);
}

// Transcript word after normalization, remembering where it came from.
struct Token {
  std::string word;
  std::size_t source;
};

std::vector<Token> tokenize(const Transcript& t) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    // Whisper occasionally packs several words into one token.
    for (const auto& w : normalize_words(t.words[i].text)) {
      if (kFiller.count(w)) continue;
      out.push_back({w, i});
    }
  }
  return out;
}

bool matches_at(const std::vector<Token>& toks, std::size_t i, const std::vector<std::string>& words) {
  if (i + words.size() > toks.size()) return false;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (toks[i + k].word != words[k]) return false;
  }
  return true;
}

const Connective* match_connective(const std::vector<Token>& toks, std::size_t i) {
  const Connective* best = nullptr;
  for (const auto& c : kConnectives) {
    if (matches_at(toks, i, c.words) && (!best || c.words.size() > best->words.size())) best = &c;
  }
  return best;
}

Timespan span_of(const Transcript& t, const std::vector<std::size_t>& sources) {
  Timespan s{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (auto i : sources) {
    s.start = std::min(s.start, t.words[i].start);
    s.end = std::max(s.end, t.words[i].end);
  }
  return s;
}

std::optional<Mention> noun_phrase(const Transcript& t, const std::vector<Token>& toks,
                                   const std::vector<std::size_t>& idx) {
  if (idx.empty()) return std::nullopt;
  std::size_t first = 0;
  while (first + 1 < idx.size() && kDeterminers.count(toks[idx[first]].word)) ++first;
  std::vector<std::string> words;
  std::vector<std::size_t> sources;
  for (std::size_t k = first; k < idx.size(); ++k) {
    words.push_back(toks[idx[k]].word);
    sources.push_back(toks[idx[k]].source);
  }
  Mention m;
  m.text = join(words);
  m.timespan = span_of(t, sources);
  m.concrete = classify_concreteness(m.text);
  return m;
}

}  // namespace

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Left: return "left";
    case RelationKind::Right: return "right";
    case RelationKind::Front: return "front";
    case RelationKind::Behind: return "behind";
    case RelationKind::Beside: return "beside";
    case RelationKind::Near: return "near";
    case RelationKind::NextTo: return "next_to";
    case RelationKind::Between: return "between";
  }
  return "near";
}

std::string_view to_string(ExtractionSource s) {
  return s == ExtractionSource::Adapter ? "adapter" : "fallback";
}

Json encode(const SpatialRelation& v) {
  return {{"phrase", v.phrase},
          {"kind", std::string(to_string(v.kind))},
          {"anchor_text", v.anchor_text},
          {"two_anchor", v.two_anchor},
          {"incomplete", v.incomplete}};
}

Json encode(const ExtractionResult& v) {
  Json j = {{"elements", encode(v.elements)},
            {"relation", v.relation ? encode(*v.relation) : Json(nullptr)},
            {"source", std::string(to_string(v.source))}};
  if (!v.fallback_reason.empty()) j["fallback_reason"] = v.fallback_reason;
  if (v.elements.ordering_violation()) j["ordering_violation"] = true;
  return j;
}

std::vector<std::string> normalize_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      std::string w = normalize_word(text.substr(i, j - i));
      if (!w.empty()) out.push_back(std::move(w));
    }
    i = j;
  }
  return out;
}

std::string strip_determiners(std::string_view text) {
  auto words = normalize_words(text);
  std::size_t first = 0;
  while (first + 1 < words.size() && kDeterminers.count(words[first])) ++first;
  return join(words, first);
}

bool classify_concreteness(std::string_view mention_text) {
  auto words = normalize_words(strip_determiners(mention_text));
  if (words.empty()) return false;
  std::size_t end = words.size();
  for (std::size_t k = 1; k < words.size(); ++k) {
    if (kTailPrepositions.count(words[k])) {
      end = k;
      break;
    }
  }
  return kSubstituteWords.count(words[end - 1]) == 0;
}

std::optional<SpatialRelation> detect_spatial_relation(std::string_view action_text,
                                                       std::string_view target_text) {
  const auto target_words = normalize_words(target_text);
  auto scan = [](const std::vector<std::string>& words)
      -> std::optional<std::pair<std::size_t, const RelationEntry*>> {
    for (std::size_t i = 0; i < words.size(); ++i) {
      const RelationEntry* best = nullptr;
      for (const auto& e : kRelations) {
        if (i + e.words.size() > words.size()) continue;
        if (!std::equal(e.words.begin(), e.words.end(), words.begin() + static_cast<long>(i))) continue;
        if (!best || e.words.size() > best->words.size()) best = &e;
      }
      if (best) return std::make_pair(i, best);
    }
    return std::nullopt;
  };

  SpatialRelation rel;
  if (auto hit = scan(normalize_words(action_text))) {
    rel.kind = hit->second->kind;
    rel.phrase = join(hit->second->words);
    rel.anchor_text = join(target_words);
  } else if (auto thit = scan(target_words)) {
    rel.kind = thit->second->kind;
    rel.phrase = join(thit->second->words);
    std::size_t from = thit->first + thit->second->words.size();
    if (from < target_words.size() && target_words[from] == "of") ++from;
    rel.anchor_text = join(target_words, from);
  } else {
    return std::nullopt;
  }
  rel.two_anchor = rel.kind == RelationKind::Between;
  rel.incomplete = rel.anchor_text.empty();
  return rel;
}

ExtractionResult extract_fallback(const Transcript& transcript) {
  const auto toks = tokenize(transcript);
  if (toks.empty()) throw Error(ErrorCode::EmptyTranscript, "transcript has no words");

  std::size_t i = 0;
  while (i < toks.size() && !kVerbs.count(toks[i].word)) ++i;
  if (i == toks.size()) {
    throw Error(ErrorCode::NoAction, "no action verb in \"" + transcript.text() + "\"");
  }

  struct Segment {
    std::vector<std::string> words;
    std::vector<std::size_t> sources;
  };
  std::vector<Segment> segments;
  auto start_segment = [&](std::size_t at) {
    segments.push_back({{toks[at].word}, {toks[at].source}});
    std::size_t next = at + 1;
    if (next < toks.size() && kParticles.count(toks[next].word)) {
      segments.back().words.push_back(toks[next].word);
      segments.back().sources.push_back(toks[next].source);
      ++next;
    }
    return next;
  };

  enum class Phase { Object, Continuation, Target };
  Phase phase = Phase::Object;
  std::vector<std::size_t> object_idx;
  std::vector<std::size_t> target_idx;

  i = start_segment(i);
  while (i < toks.size()) {
    const std::string& w = toks[i].word;
    if (phase != Phase::Target) {
      if (w == "and" && i + 1 < toks.size() && kVerbs.count(toks[i + 1].word)) {
        i = start_segment(i + 1);
        if (i < toks.size() && kObjectPronouns.count(toks[i].word)) ++i;
        phase = Phase::Continuation;
        continue;
      }
      if (const Connective* c = match_connective(toks, i)) {
        for (std::size_t k = 0; k < c->surface; ++k) {
          segments.back().words.push_back(toks[i + k].word);
          segments.back().sources.push_back(toks[i + k].source);
        }
        i += c->words.size();
        phase = Phase::Target;
        continue;
      }
      if (kDeicticAdverbs.count(w)) {
        target_idx.push_back(i);
        break;
      }
    }
    if (phase == Phase::Object || (phase == Phase::Continuation && object_idx.empty())) {
      object_idx.push_back(i);
    } else {
      target_idx.push_back(i);
    }
    ++i;
  }

  ExtractionResult result;
  result.source = ExtractionSource::Fallback;
  result.elements.object = noun_phrase(transcript, toks, object_idx);
  result.elements.target = noun_phrase(transcript, toks, target_idx);

  Mention action;
  std::vector<std::size_t> action_sources;
  for (const auto& seg : segments) {
    if (!action.text.empty()) action.text += ", ";
    action.text += join(seg.words);
    action_sources.insert(action_sources.end(), seg.sources.begin(), seg.sources.end());
  }
  action.timespan = span_of(transcript, action_sources);
  result.elements.action = std::move(action);

  result.relation = detect_spatial_relation(
      result.elements.action->text, result.elements.target ? result.elements.target->text : "");
  return result;
}

// --- adapter ----------------------------------------------------------------

const std::array<std::string, 2>& extraction_prompts() {
  static const std::array<std::string, 2> prompts = {std::string(prompts::kExtractElements),
                                                     std::string(prompts::kRefineConcreteness)};
  return prompts;
}

Json encode(const AdapterRequest& v) {
  return as_document({{"prompts", Json::array({v.prompts[0], v.prompts[1]})},
                      {"transcript", encode(v.transcript)}});
}

std::string first_json_object(std::string_view text) {
  const auto open = text.find('{');
  if (open == std::string_view::npos) return {};
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return std::string(text.substr(open, i - open + 1));
    }
  }
  return {};
}

std::string requote_single_quotes(std::string_view text) {
  auto next_significant = [&](std::size_t i) -> char {
    for (++i; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) return text[i];
    }
    return '\0';
  };
  std::string out;
  enum class State { Outside, Double, Single } state = State::Outside;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    switch (state) {
      case State::Outside:
        if (c == '"') {
          state = State::Double;
          out += c;
        } else if (c == '\'') {
          state = State::Single;
          out += '"';
        } else if (text.substr(i, 4) == "True") {
          out += "true";
          i += 3;
        } else if (text.substr(i, 5) == "False") {
          out += "false";
          i += 4;
        } else if (text.substr(i, 4) == "None") {
          out += "null";
          i += 3;
        } else {
          out += c;
        }
        break;
      case State::Double:
        out += c;
        if (c == '\\' && i + 1 < text.size()) {
          out += text[++i];
        } else if (c == '"') {
          state = State::Outside;
        }
        break;
      case State::Single: {
        if (c == '\'') {
          const char n = next_significant(i);
          if (n == ',' || n == '}' || n == ']' || n == ':' || n == '\0') {
            out += '"';
            state = State::Outside;
          } else {
            out += c;
          }
        } else if (c == '"') {
          out += "\\\"";
        } else {
          out += c;
        }
        break;
      }
    }
  }
  return out;
}

namespace {

std::optional<Timespan> locate_words(const Transcript& t, const std::string& text) {
  const auto wanted = normalize_words(text);
  if (wanted.empty()) return std::nullopt;
  std::vector<std::size_t> sources;
  std::size_t from = 0;
  for (const auto& w : wanted) {
    bool found = false;
    for (std::size_t k = from; k < t.words.size(); ++k) {
      const auto parts = normalize_words(t.words[k].text);
      if (std::find(parts.begin(), parts.end(), w) != parts.end()) {
        sources.push_back(k);
        from = k;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return span_of(t, sources);
}

std::optional<Mention> adapter_mention(const Json& root, const char* key, const Transcript& t,
                                       bool with_concreteness) {
  const std::string path = std::string("$.") + key;
  auto it = root.find(key);
  if (it == root.end() || it->is_null()) return std::nullopt;
  const Json& v = *it;
  Mention m;
  std::optional<Timespan> span;
  std::optional<bool> concrete;
  if (v.is_string()) {
    m.text = v.get<std::string>();
  } else if (v.is_object()) {
    if (v.empty()) return std::nullopt;
    auto text = v.find("text");
    if (text == v.end() || text->is_null()) return std::nullopt;
    m.text = json_detail::get_string(*text, path + ".text");
    for (const char* tk : {"timestamp", "timespan"}) {
      auto ts = v.find(tk);
      if (ts == v.end() || ts->is_null()) continue;
      const std::string tp = path + "." + tk;
      if (!ts->is_array() || ts->size() != 2) {
        throw Error(ErrorCode::SchemaMismatch, "expected [start, end] at " + tp, tp);
      }
      span = Timespan{json_detail::get_number((*ts)[0], tp + "[0]"),
                      json_detail::get_number((*ts)[1], tp + "[1]")};
    }
    auto c = v.find("concrete");
    if (c != v.end() && !c->is_null()) {
      if (c->is_boolean()) {
        concrete = c->get<bool>();
      } else if (c->is_string() && (*c == "true" || *c == "false")) {
        concrete = *c == "true";
      } else {
        throw Error(ErrorCode::SchemaMismatch, "expected boolean at " + path + ".concrete",
                    path + ".concrete");
      }
    }
  } else {
    throw Error(ErrorCode::SchemaMismatch, "expected object or string at " + path, path);
  }

  auto trimmed = normalize_words(m.text);
  if (trimmed.empty()) return std::nullopt;
  m.text = join(trimmed);

  if (!span) span = locate_words(t, m.text);
  if (!span) {
    throw Error(ErrorCode::InvariantViolation,
                "mention text not found in transcript at " + path + ".text", path + ".text");
  }
  constexpr double kTol = 1e-6;
  if (span->end < span->start) json_detail::violated("end >= start", path + ".timestamp");
  if (span->start < t.start_time() - kTol || span->end > t.end_time() + kTol) {
    json_detail::violated("timespan within transcript extent", path + ".timestamp");
  }
  m.timespan = *span;
  if (with_concreteness) m.concrete = concrete ? *concrete : classify_concreteness(m.text);
  return m;
}

}  // namespace

CommandElements parse_adapter_reply(std::string_view reply, const Transcript& transcript) {
  const std::string object_text = first_json_object(reply);
  if (object_text.empty()) throw Error(ErrorCode::MalformedJson, "no JSON object in reply", "$");
  const Json root = parse_json(object_text);
  if (!root.is_object()) throw Error(ErrorCode::SchemaMismatch, "expected object at $", "$");
  CommandElements e;
  e.object = adapter_mention(root, "object", transcript, true);
  e.action = adapter_mention(root, "action", transcript, false);
  e.target = adapter_mention(root, "target", transcript, true);
  if (!e.any()) json_detail::violated("at least one mention present", "$");
  return e;
}

ExtractionResult extract_via_adapter(const Transcript& transcript, ExtractionAdapter& adapter,
                                     const AdapterPolicy& policy) {
  if (transcript.empty()) throw Error(ErrorCode::EmptyTranscript, "transcript has no words");
  AdapterRequest request{extraction_prompts(), transcript};

  auto degrade = [&](const std::string& reason) {
    ExtractionResult r = extract_fallback(transcript);
    r.fallback_reason = reason;
    return r;
  };

  std::string reply;
  try {
    reply = adapter.complete(request);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AdapterUnavailable || !policy.fallback_on_unavailable) throw;
    return degrade(std::string("AdapterUnavailable: ") + e.what());
  }

  CommandElements elements;
  try {
    elements = parse_adapter_reply(reply, transcript);
  } catch (const Error& first) {
    try {
      elements = parse_adapter_reply(requote_single_quotes(first_json_object(reply)), transcript);
    } catch (const Error& second) {
      return degrade(std::string(to_string(second.code())) + ": " + second.what());
    }
  }

  ExtractionResult result;
  result.source = ExtractionSource::Adapter;
  result.elements = std::move(elements);
  result.relation = detect_spatial_relation(
      result.elements.action ? result.elements.action->text : "",
      result.elements.target ? result.elements.target->text : "");
  return result;
}

}  // namespace uncom
