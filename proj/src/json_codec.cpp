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

#include "uncom/json_codec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uncom/polygon.hpp"

namespace uncom {

namespace json_detail {

std::string child(const std::string& path, const char* key) { return path + "." + key; }

void violated(const std::string& what, const std::string& path) {
  throw Error(ErrorCode::InvariantViolation, what + " violated at " + path, path);
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaMismatch, "expected object at " + path, path);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  require_object(j, path);
  auto it = j.find(key);
  if (it == j.end()) {
    const std::string p = child(path, key);
    throw Error(ErrorCode::SchemaMismatch, "missing field at " + p, p);
  }
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw Error(ErrorCode::SchemaMismatch, "expected string at " + path, path);
  return j.get<std::string>();
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw Error(ErrorCode::SchemaMismatch, "expected number at " + path, path);
  return j.get<double>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw Error(ErrorCode::SchemaMismatch, "expected boolean at " + path, path);
  return j.get<bool>();
}

long long get_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    throw Error(ErrorCode::SchemaMismatch, "expected integer at " + path, path);
  }
  return j.get<long long>();
}

}  // namespace json_detail

using namespace json_detail;

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

Json pair(double a, double b) { return Json::array({a, b}); }

Timespan decode_timespan(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::SchemaMismatch, "expected [start, end] at " + path, path);
  }
  Timespan t{get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
  if (t.end < t.start) violated("end >= start", path);
  return t;
}

Handedness parse_handedness(const std::string& s, const std::string& path) {
  if (s == "left") return Handedness::Left;
  if (s == "right") return Handedness::Right;
  if (s == "unknown") return Handedness::Unknown;
  throw Error(ErrorCode::SchemaMismatch, "unknown handedness '" + s + "' at " + path, path);
}

}  // namespace

Json parse_json(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, std::string("malformed JSON: ") + e.what(), "$");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to '" + path + "'");
}

Json as_document(Json body) {
  body["schema"] = std::string(kSchemaVersion);
  return body;
}

void require_schema(const Json& j, const std::string& path) {
  const std::string p = child(path, "schema");
  const std::string s = get_string(field(j, path, "schema"), p);
  if (s != kSchemaVersion) {
    throw Error(ErrorCode::SchemaMismatch,
                "unsupported schema '" + s + "' (expected " + std::string(kSchemaVersion) +
                    ") at " + p,
                p);
  }
}

// --- WordToken / Transcript -------------------------------------------------

Json encode(const WordToken& v) { return {{"text", v.text}, {"start", v.start}, {"end", v.end}}; }

void decode(const Json& j, const std::string& path, WordToken& out) {
  out.text = get_string(field(j, path, "text"), child(path, "text"));
  out.start = get_number(field(j, path, "start"), child(path, "start"));
  out.end = get_number(field(j, path, "end"), child(path, "end"));
  if (blank(out.text)) violated("text non-empty", child(path, "text"));
  if (out.start < 0.0) violated("start >= 0", child(path, "start"));
  if (out.end < out.start) violated("end >= start", path);
}

Json encode(const Transcript& v) {
  return {{"language", v.language}, {"words", encode(v.words)}};
}

void decode(const Json& j, const std::string& path, Transcript& out) {
  require_object(j, path);
  if (j.contains("schema")) require_schema(j, path);
  out.language = get_string(field(j, path, "language"), child(path, "language"));
  decode(field(j, path, "words"), child(path, "words"), out.words);
  for (std::size_t i = 1; i < out.words.size(); ++i) {
    if (out.words[i].start < out.words[i - 1].start) {
      violated("words sorted by start time", child(path, "words") + "[" + std::to_string(i) + "]");
    }
  }
}

// --- Mention / CommandElements ---------------------------------------------

Json encode(const Mention& v) {
  Json j = {{"text", v.text}, {"timespan", pair(v.timespan.start, v.timespan.end)}};
  if (v.concrete) j["concrete"] = *v.concrete;
  return j;
}

void decode(const Json& j, const std::string& path, Mention& out) {
  out.text = get_string(field(j, path, "text"), child(path, "text"));
  if (blank(out.text)) violated("text non-empty", child(path, "text"));
  out.timespan = decode_timespan(field(j, path, "timespan"), child(path, "timespan"));
  out.concrete.reset();
  if (const Json* c = optional_field(j, "concrete")) out.concrete = get_bool(*c, child(path, "concrete"));
}

Json encode(const CommandElements& v) {
  auto opt = [](const std::optional<Mention>& m) { return m ? encode(*m) : Json(nullptr); };
  return {{"object", opt(v.object)}, {"action", opt(v.action)}, {"target", opt(v.target)}};
}

void decode(const Json& j, const std::string& path, CommandElements& out) {
  require_object(j, path);
  auto opt = [&](const char* key, std::optional<Mention>& slot) {
    slot.reset();
    if (const Json* m = optional_field(j, key)) slot = decode_as<Mention>(*m, child(path, key));
  };
  opt("object", out.object);
  opt("action", out.action);
  opt("target", out.target);
  if (!out.any()) violated("at least one mention present", path);
}

// --- Hands ------------------------------------------------------------------

Json encode(const Landmark& v) { return {{"x", v.x}, {"y", v.y}, {"z", v.z}}; }

void decode(const Json& j, const std::string& path, Landmark& out) {
  out.x = std::clamp(get_number(field(j, path, "x"), child(path, "x")), 0.0, 1.0);
  out.y = std::clamp(get_number(field(j, path, "y"), child(path, "y")), 0.0, 1.0);
  out.z = get_number(field(j, path, "z"), child(path, "z"));
}

Json encode(const HandObservation& v) {
  Json lms = Json::array();
  for (const auto& lm : v.landmarks) lms.push_back(encode(lm));
  Json j = {{"handedness", std::string(to_string(v.handedness))}, {"landmarks", lms}};
  if (v.score) j["score"] = *v.score;
  return j;
}

void decode(const Json& j, const std::string& path, HandObservation& out) {
  const std::string lp = child(path, "landmarks");
  const Json& lms = field(j, path, "landmarks");
  if (!lms.is_array()) throw Error(ErrorCode::SchemaMismatch, "expected array at " + lp, lp);
  if (lms.size() != kHandLandmarkCount) {
    throw Error(ErrorCode::InvariantViolation,
                "exactly 21 landmarks violated (got " + std::to_string(lms.size()) + ") at " + lp,
                lp);
  }
  for (std::size_t i = 0; i < kHandLandmarkCount; ++i) {
    decode(lms[i], lp + "[" + std::to_string(i) + "]", out.landmarks[i]);
  }
  out.handedness = Handedness::Unknown;
  if (const Json* h = optional_field(j, "handedness")) {
    out.handedness = parse_handedness(get_string(*h, child(path, "handedness")), child(path, "handedness"));
  }
  out.score.reset();
  if (const Json* s = optional_field(j, "score")) out.score = get_number(*s, child(path, "score"));
}

// --- Detections -------------------------------------------------------------

Json encode(const BBox& v) { return Json::array({v.xmin, v.ymin, v.xmax, v.ymax}); }

void decode(const Json& j, const std::string& path, BBox& out) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorCode::SchemaMismatch, "expected [xmin, ymin, xmax, ymax] at " + path, path);
  }
  out.xmin = get_number(j[0], path + "[0]");
  out.ymin = get_number(j[1], path + "[1]");
  out.xmax = get_number(j[2], path + "[2]");
  out.ymax = get_number(j[3], path + "[3]");
  if (!(out.xmin < out.xmax)) violated("xmin < xmax", path);
  if (!(out.ymin < out.ymax)) violated("ymin < ymax", path);
  for (double c : {out.xmin, out.ymin, out.xmax, out.ymax}) {
    if (!(c >= 0.0 && c <= 1.0)) violated("coordinates in [0,1]", path);
  }
}

Json encode(const Detection& v) {
  return {{"label", v.label}, {"bbox", encode(v.bbox)}, {"score", v.score}, {"frame_id", v.frame_id}};
}

void decode(const Json& j, const std::string& path, Detection& out) {
  out.label = get_string(field(j, path, "label"), child(path, "label"));
  decode(field(j, path, "bbox"), child(path, "bbox"), out.bbox);
  out.score = get_number(field(j, path, "score"), child(path, "score"));
  if (!(out.score >= 0.0 && out.score <= 1.0)) violated("score in [0,1]", child(path, "score"));
  out.frame_id = get_string(field(j, path, "frame_id"), child(path, "frame_id"));
}

// --- Masks and depth --------------------------------------------------------

Json encode(const PixelMask& v) {
  return {{"width", v.width}, {"height", v.height}, {"rle", v.rle}};
}

void decode(const Json& j, const std::string& path, PixelMask& out) {
  const long long w = get_integer(field(j, path, "width"), child(path, "width"));
  const long long h = get_integer(field(j, path, "height"), child(path, "height"));
  if (w <= 0) violated("width > 0", child(path, "width"));
  if (h <= 0) violated("height > 0", child(path, "height"));
  out.width = static_cast<int>(w);
  out.height = static_cast<int>(h);
  const std::string rp = child(path, "rle");
  const Json& rle = field(j, path, "rle");
  if (!rle.is_array()) throw Error(ErrorCode::SchemaMismatch, "expected array at " + rp, rp);
  out.rle.clear();
  unsigned long long total = 0;
  for (std::size_t i = 0; i < rle.size(); ++i) {
    const std::string ip = rp + "[" + std::to_string(i) + "]";
    const long long r = get_integer(rle[i], ip);
    if (r < 0 || r > 0xFFFFFFFFLL) violated("run length in uint32 range", ip);
    out.rle.push_back(static_cast<std::uint32_t>(r));
    total += static_cast<unsigned long long>(r);
  }
  if (total != static_cast<unsigned long long>(w * h)) violated("sum of runs == width * height", rp);
}

Json encode(const DepthMap& v) {
  Json values = Json::array();
  for (Eigen::Index i = 0; i < v.values.size(); ++i) values.push_back(v.values.data()[i]);
  return {{"width", v.width()}, {"height", v.height()}, {"values", values}};
}

void decode(const Json& j, const std::string& path, DepthMap& out) {
  const long long w = get_integer(field(j, path, "width"), child(path, "width"));
  const long long h = get_integer(field(j, path, "height"), child(path, "height"));
  if (w <= 0) violated("width > 0", child(path, "width"));
  if (h <= 0) violated("height > 0", child(path, "height"));
  const std::string vp = child(path, "values");
  const Json& values = field(j, path, "values");
  if (!values.is_array()) throw Error(ErrorCode::SchemaMismatch, "expected array at " + vp, vp);
  if (values.size() != static_cast<std::size_t>(w * h)) violated("values.length == width * height", vp);
  out.values.resize(h, w);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = get_number(values[i], vp + "[" + std::to_string(i) + "]");
    if (!std::isfinite(d)) violated("all values finite", vp + "[" + std::to_string(i) + "]");
    out.values.data()[i] = d;
  }
}

// --- Results ----------------------------------------------------------------

Json encode(const Point2& v) { return pair(v.x(), v.y()); }

void decode(const Json& j, const std::string& path, Point2& out) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::SchemaMismatch, "expected [x, y] at " + path, path);
  }
  out = Point2(get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]"));
}

Json encode(const Polygon2& v) {
  Json arr = Json::array();
  for (const auto& p : v) arr.push_back(encode(p));
  return arr;
}

void decode(const Json& j, const std::string& path, Polygon2& out) {
  if (!j.is_array()) throw Error(ErrorCode::SchemaMismatch, "expected array at " + path, path);
  out.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(decode_as<Point2>(j[i], path + "[" + std::to_string(i) + "]"));
  }
}

Json encode(const ObjectResult& v) {
  return {{"name", v.name}, {"bbox", encode(v.bbox)}, {"mask", encode(v.mask)}, {"frame_id", v.frame_id}};
}

void decode(const Json& j, const std::string& path, ObjectResult& out) {
  out.name = get_string(field(j, path, "name"), child(path, "name"));
  decode(field(j, path, "bbox"), child(path, "bbox"), out.bbox);
  decode(field(j, path, "mask"), child(path, "mask"), out.mask);
  out.frame_id = get_string(field(j, path, "frame_id"), child(path, "frame_id"));
}

Json encode(const TargetResult& v) {
  Json j;
  if (v.kind == TargetKind::Object) {
    j = encode(*v.object);
  } else {
    j = {{"cell_polygon", encode(v.empty_cell->cell_polygon)},
         {"cell_center", encode(v.empty_cell->cell_center)},
         {"frame_id", v.empty_cell->frame_id}};
  }
  j["kind"] = std::string(to_string(v.kind));
  return j;
}

void decode(const Json& j, const std::string& path, TargetResult& out) {
  const std::string kind = get_string(field(j, path, "kind"), child(path, "kind"));
  if (kind == "object") {
    out = TargetResult::from_object(decode_as<ObjectResult>(j, path));
  } else if (kind == "empty_cell") {
    EmptyCellResult c;
    decode(field(j, path, "cell_polygon"), child(path, "cell_polygon"), c.cell_polygon);
    if (!is_convex<double>(c.cell_polygon)) violated("cell_polygon simple and convex", child(path, "cell_polygon"));
    decode(field(j, path, "cell_center"), child(path, "cell_center"), c.cell_center);
    c.frame_id = get_string(field(j, path, "frame_id"), child(path, "frame_id"));
    out = TargetResult::from_cell(std::move(c));
  } else {
    throw Error(ErrorCode::SchemaMismatch, "unknown target kind '" + kind + "' at " + child(path, "kind"),
                child(path, "kind"));
  }
}

Json encode(const GroundedCommand& v) {
  return as_document({{"object", encode(v.object)},
                      {"action", v.action},
                      {"target", encode(v.target)},
                      {"flags", v.flags}});
}

void decode(const Json& j, const std::string& path, GroundedCommand& out) {
  require_schema(j, path);
  decode(field(j, path, "object"), child(path, "object"), out.object);
  out.action = get_string(field(j, path, "action"), child(path, "action"));
  decode(field(j, path, "target"), child(path, "target"), out.target);
  out.flags.clear();
  if (const Json* f = optional_field(j, "flags")) {
    if (!f->is_array()) throw Error(ErrorCode::SchemaMismatch, "expected array at " + child(path, "flags"));
    for (std::size_t i = 0; i < f->size(); ++i) {
      out.flags.push_back(get_string((*f)[i], child(path, "flags") + "[" + std::to_string(i) + "]"));
    }
  }
}

}  // namespace uncom
