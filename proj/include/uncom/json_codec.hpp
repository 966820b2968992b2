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

#ifndef UNCOM_JSON_CODEC_HPP
#define UNCOM_JSON_CODEC_HPP

// Canonical JSON for every wire-visible core type: sorted keys, no
// insignificant whitespace, shortest round-trip doubles.
//
// Decoding validates type invariants and reports the first violation as an
// uncom::Error carrying the JSON path of the offending value:
//   MalformedJson       - the bytes are not JSON
//   SchemaMismatch      - missing field, wrong JSON type, unknown enum value
//   InvariantViolation  - well-typed but violates a domain invariant

#include <string>
#include <string_view>

#include <json.hpp>

#include "uncom/core_model.hpp"
#include "uncom/error.hpp"

namespace uncom {

using Json = nlohmann::json;

Json encode(const WordToken& v);
Json encode(const Transcript& v);
Json encode(const Mention& v);
Json encode(const CommandElements& v);
Json encode(const Landmark& v);
Json encode(const HandObservation& v);
Json encode(const BBox& v);
Json encode(const Detection& v);
Json encode(const PixelMask& v);
Json encode(const DepthMap& v);
Json encode(const Point2& v);
Json encode(const Polygon2& v);
Json encode(const ObjectResult& v);
Json encode(const TargetResult& v);
Json encode(const GroundedCommand& v);

void decode(const Json& j, const std::string& path, WordToken& out);
void decode(const Json& j, const std::string& path, Transcript& out);
void decode(const Json& j, const std::string& path, Mention& out);
void decode(const Json& j, const std::string& path, CommandElements& out);
void decode(const Json& j, const std::string& path, Landmark& out);
void decode(const Json& j, const std::string& path, HandObservation& out);
void decode(const Json& j, const std::string& path, BBox& out);
void decode(const Json& j, const std::string& path, Detection& out);
void decode(const Json& j, const std::string& path, PixelMask& out);
void decode(const Json& j, const std::string& path, DepthMap& out);
void decode(const Json& j, const std::string& path, Point2& out);
void decode(const Json& j, const std::string& path, Polygon2& out);
void decode(const Json& j, const std::string& path, ObjectResult& out);
void decode(const Json& j, const std::string& path, TargetResult& out);
void decode(const Json& j, const std::string& path, GroundedCommand& out);

template <typename T>
void decode(const Json& j, const std::string& path, std::vector<T>& out) {
  if (!j.is_array()) throw Error(ErrorCode::SchemaMismatch, "expected array at " + path, path);
  out.clear();
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    T item;
    decode(j[i], path + "[" + std::to_string(i) + "]", item);
    out.push_back(std::move(item));
  }
}

template <typename T>
Json encode(const std::vector<T>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(encode(v));
  return arr;
}

template <typename T>
T decode_as(const Json& j, const std::string& path = "$") {
  T value;
  decode(j, path, value);
  return value;
}

// Parses bytes, mapping parser failures to MalformedJson.
Json parse_json(std::string_view bytes);

template <typename T>
std::string encode_json(const T& value) {
  return encode(value).dump();
}

template <typename T>
T decode_json(std::string_view bytes) {
  return decode_as<T>(parse_json(bytes));
}

// Whole-file I/O. Both throw Io.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view bytes);

// Adds the "schema" member to a top-level document.
Json as_document(Json body);
// Checks the "schema" member of a top-level document.
void require_schema(const Json& j, const std::string& path = "$");

// Small helpers shared by the module decoders.
namespace json_detail {

const Json& field(const Json& j, const std::string& path, const char* key);
const Json* optional_field(const Json& j, const char* key);
void require_object(const Json& j, const std::string& path);
std::string get_string(const Json& j, const std::string& path);
double get_number(const Json& j, const std::string& path);
bool get_bool(const Json& j, const std::string& path);
long long get_integer(const Json& j, const std::string& path);
std::string child(const std::string& path, const char* key);
[[noreturn]] void violated(const std::string& what, const std::string& path);

}  // namespace json_detail

}  // namespace uncom

#endif  // UNCOM_JSON_CODEC_HPP
