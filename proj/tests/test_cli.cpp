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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "uncom/cli.hpp"
#include "uncom/evaluation.hpp"
#include "uncom/json_codec.hpp"

using namespace uncom;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "uncom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("uncom_cli_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str(const std::string& child = {}) const { return (child.empty() ? path_ : path_ / child).string(); }

 private:
  fs::path path_;
};

std::string suite_file(const std::string& name) { return (test::suite_dir() / name).string(); }
std::string read(const fs::path& p) { return read_text_file(p.string()); }

}  // namespace

TEST_CASE("ground reproduces the banana golden run") {
  TempDir dir("golden");
  const Run r = run({"ground", "--bundle", suite_file("t09_banana_frying_pan.bundle.json"), "--out", dir.str()});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "banana | take, put inside of | frying pan\n");
  const fs::path golden = test::source_dir() / "tests/golden/banana";
  for (const char* f : {"command.json", "trace.json", "annotation.json"}) {
    CAPTURE(f);
    CHECK(read(dir.path() / f) == read(golden / f));
  }
  CHECK_FALSE(fs::exists(dir.path() / "error.json"));
}

TEST_CASE("ground output is byte-identical across runs") {
  for (const char* name : {"t05_mug_here", "t07_mug_next_to_plate", "x09_no_hands"}) {
    CAPTURE(name);
    TempDir a("det_a"), b("det_b");
    const std::string bundle = suite_file(std::string(name) + ".bundle.json");
    REQUIRE(run({"ground", "--bundle", bundle, "--out", a.str()}).code == kExitOk);
    REQUIRE(run({"ground", "--bundle", bundle, "--out", b.str()}).code == kExitOk);
    for (const char* f : {"command.json", "trace.json", "annotation.json"}) CHECK(read(a.path() / f) == read(b.path() / f));
  }
}

TEST_CASE("schema errors exit 2 naming the json path") {
  TempDir dir("schema");
  Json bundle = parse_json(read(test::suite_dir() / "t01_mug_plate.bundle.json"));
  bundle["frames"][3]["timestamp"] = "soon";
  write_text_file(dir.str("broken.json"), bundle.dump());
  Run r = run({"ground", "--bundle", dir.str("broken.json"), "--out", dir.str("out")});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("SchemaMismatch") != std::string::npos);
  CHECK(r.err.find("$.frames[3].timestamp") != std::string::npos);

  write_text_file(dir.str("truncated.json"), "{\"schema\": \"uncom/1\", \"frames\": [");
  r = run({"ground", "--bundle", dir.str("truncated.json"), "--out", dir.str("out")});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("MalformedJson") != std::string::npos);

  r = run({"ground", "--bundle", dir.str("missing.json"), "--out", dir.str("out")});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("Io") != std::string::npos);

  r = run({"ground", "--bundle", suite_file("t01_mug_plate.bundle.json"), "--out", dir.str("out"), "--set", "scor_floor=0.2"});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("$.scor_floor") != std::string::npos);

  CHECK(run({"ground", "--bundle", suite_file("t01_mug_plate.bundle.json")}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
}

TEST_CASE("unresolvable command exits 1 with an error document") {
  TempDir dir("unresolved");
  Json bundle = parse_json(read(test::suite_dir() / "t01_mug_plate.bundle.json"));
  for (auto& rec : bundle["recordings"])
    if (rec["capability"] == "detect" && rec["prompt"] == "mug.") rec["payload"] = Json::array();
  write_text_file(dir.str("empty.json"), bundle.dump());
  const Run r = run({"ground", "--bundle", dir.str("empty.json"), "--out", dir.str("out")});
  CHECK(r.code == kExitUnresolved);
  const Json error = parse_json(read(dir.path() / "out/error.json"));
  CHECK(error.at("schema") == "uncom/1");
  CHECK(error.at("error").at("code") == "ObjectNotFound");
  CHECK(error.at("error").at("step") == "object_choice");
  CHECK_FALSE(fs::exists(dir.path() / "out/command.json"));
}

TEST_CASE("config file and overrides reach the pipeline") {
  TempDir dir("config");
  write_text_file(dir.str("config.json"), R"({"schema": "uncom/1", "score_floor": 0.9})");
  Run r = run({"ground", "--bundle", suite_file("t01_mug_plate.bundle.json"), "--config", dir.str("config.json"), "--out",
               dir.str("strict")});
  CHECK(r.code == kExitUnresolved);
  r = run({"ground", "--bundle", suite_file("t01_mug_plate.bundle.json"), "--config", dir.str("config.json"), "--set",
           "score_floor=0.3", "--out", dir.str("relaxed")});
  CHECK(r.code == kExitOk);
}

TEST_CASE("record writes a replayable bundle of the queries made") {
  TempDir dir("record");
  REQUIRE(run({"ground", "--bundle", suite_file("t07_mug_next_to_plate.bundle.json"), "--out", dir.str("first"), "--record",
               dir.str("recorded.json")})
              .code == kExitOk);
  const Run v = run({"validate", "--bundle", dir.str("recorded.json")});
  CHECK(v.code == kExitOk);
  REQUIRE(run({"ground", "--bundle", dir.str("recorded.json"), "--out", dir.str("second")}).code == kExitOk);
  CHECK(read(dir.path() / "first/command.json") == read(dir.path() / "second/command.json"));
  const PerceptionBundle original = load_bundle(suite_file("t07_mug_next_to_plate.bundle.json"));
  CHECK(load_bundle(dir.str("recorded.json")).recordings.size() <= original.recordings.size());
}

TEST_CASE("validate reports counts or the first violation") {
  Run r = run({"validate", "--bundle", suite_file("t01_mug_plate.bundle.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("valid: 134 frames, 6 recordings", 0) == 0);

  TempDir dir("validate");
  Json bundle = parse_json(read(test::suite_dir() / "t01_mug_plate.bundle.json"));
  bundle["frames"][1]["frame_id"] = "f0000";
  write_text_file(dir.str("dup.json"), bundle.dump());
  r = run({"validate", "--bundle", dir.str("dup.json")});
  CHECK(r.code == kExitInput);
  CHECK(r.err.rfind("invalid: InvariantViolation", 0) == 0);
}

TEST_CASE("eval over the suite passes every bundle") {
  TempDir dir("eval");
  const Run r = run({"eval", "--dataset", test::suite_dir().string(), "--report", dir.str("report.json")});
  CHECK(r.code == kExitOk);
  const Json report = parse_json(read(dir.path() / "report.json"));
  CHECK(report.at("evaluated") == 20);
  CHECK(report.at("passed") == 20);
  CHECK(r.out.find("overall") != std::string::npos);
}

TEST_CASE("eval of an empty directory is a vacuous pass") {
  TempDir dir("empty");
  const Run r = run({"eval", "--dataset", dir.str(), "--report", dir.str("report.json")});
  CHECK(r.code == kExitOk);
  const Json report = parse_json(read(dir.path() / "report.json"));
  CHECK(report.at("evaluated") == 0);
  CHECK(report.at("bundles").empty());
}

TEST_CASE("a sabotaged gold file surfaces one mismatch with a diff") {
  TempDir dir("sabotage");
  for (const auto& e : fs::directory_iterator(test::suite_dir())) fs::copy_file(e.path(), dir.path() / e.path().filename());
  Json gold = parse_json(read(dir.path() / "t08_stack_plates.gold.json"));
  gold["command"]["target"]["name"] = "bowl";
  gold["command"]["target"]["bbox"] = {0.0, 0.0, 0.05, 0.05};
  write_text_file(dir.str("t08_stack_plates.gold.json"), gold.dump());
  fs::remove(dir.path() / "x01_cup_left_of_plate.gold.json");

  const Run r = run({"eval", "--dataset", dir.str(), "--report", dir.str("report.json")});
  CHECK(r.code == kExitUnresolved);
  const Json report = parse_json(read(dir.path() / "report.json"));
  CHECK(report.at("evaluated") == 19);
  CHECK(report.at("passed") == 18);
  CHECK(report.at("skipped") == 1);
  CHECK(r.err.find("warning:") != std::string::npos);
  CHECK(r.err.find("x01_cup_left_of_plate") != std::string::npos);
  const auto first = r.err.find("mismatch ");
  REQUIRE(first != std::string::npos);
  CHECK(r.err.find("mismatch ", first + 1) == std::string::npos);
  CHECK(r.err.find("t08_stack_plates") != std::string::npos);
  CHECK(r.err.find("bowl") != std::string::npos);
  CHECK(r.err.find("plate") != std::string::npos);
}

TEST_CASE("bridge provider without a configured bridge") {
  unsetenv("UNCOM_BRIDGE_CMD");
  TempDir dir("bridge");
  const Run r = run({"ground", "--bundle", suite_file("t01_mug_plate.bundle.json"), "--out", dir.str(), "--provider", "bridge"});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("BridgeUnavailable") != std::string::npos);
  CHECK(run({"ground", "--bundle", suite_file("t01_mug_plate.bundle.json"), "--out", dir.str(), "--provider", "oracle"}).code ==
        kExitInput);
}
