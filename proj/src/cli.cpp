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

#include "uncom/cli.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uncom/bridge.hpp"
#include "uncom/evaluation.hpp"
#include "uncom/pipeline.hpp"

namespace uncom {
namespace {

namespace fs = std::filesystem;

std::string document_bytes(const Json& j) { return j.dump() + "\n"; }

Json error_document(const Error& e) {
  Json err = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (!e.path().empty()) err["path"] = e.path();
  if (!e.step().empty()) err["step"] = e.step();
  return as_document({{"error", err}});
}

PipelineConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  Json doc = path.empty() ? Json::object() : parse_json(read_text_file(path));
  for (const auto& o : overrides) apply_override(doc, o);
  return decode_as<PipelineConfig>(doc, "$");
}

struct ProviderChoice {
  std::string kind = "fixture";
  int timeout_ms = 120000;
};

ProviderFactory make_factory(const ProviderChoice& choice) {
  if (choice.kind == "bridge") {
    auto timeout = std::chrono::milliseconds(choice.timeout_ms);
    return [timeout](const PerceptionBundle&) -> std::unique_ptr<PerceptionProvider> {
      return std::make_unique<BridgeClient>(BridgeClient::from_environment(timeout));
    };
  }
  return fixture_provider_factory();
}

int report_input_error(const Error& e, std::ostream& err) {
  err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
  return kExitInput;
}

int cmd_ground(const std::string& bundle_path, const std::string& config_path,
               const std::vector<std::string>& overrides, const std::string& out_dir, const ProviderChoice& choice,
               const std::string& record_path, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  PerceptionBundle bundle;
  try {
    config = load_config(config_path, overrides);
    bundle = load_bundle(bundle_path);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + out_dir + "': " + ec.message());
  } catch (const Error& e) {
    return report_input_error(e, err);
  }
  const fs::path dir(out_dir);
  try {
    std::unique_ptr<PerceptionProvider> provider = make_factory(choice)(bundle);
    if (auto* bridge = dynamic_cast<BridgeClient*>(provider.get())) bundle.z_sign = bridge->handshake().z_sign;
    std::optional<RecordingProvider> recorder;
    PerceptionProvider* active = provider.get();
    if (!record_path.empty()) active = &recorder.emplace(*provider);

    const GroundingOutput g = ground(bundle, *active, config);
    write_text_file((dir / "command.json").string(), document_bytes(encode(g.command)));
    write_text_file((dir / "trace.json").string(), document_bytes(encode(g.trace)));
    write_text_file((dir / "annotation.json").string(), document_bytes(annotation_json(g)));
    if (recorder) {
      PerceptionBundle recorded = bundle;
      recorded.recordings = recorder->recordings();
      write_text_file(record_path, document_bytes(encode(recorded)));
    }
    out << g.command.object.name << " | " << g.command.action << " | "
        << (g.command.target.object ? g.command.target.object->name : std::string("empty cell")) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    try {
      write_text_file((dir / "error.json").string(), document_bytes(error_document(e)));
    } catch (const Error&) {
    }
    err << "error: " << to_string(e.code());
    if (!e.step().empty()) err << " (" << e.step() << ")";
    err << ": " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitUnresolved;
  }
}

int cmd_eval(const std::string& dataset, const std::string& config_path, const std::vector<std::string>& overrides,
             const std::string& report_path, const ProviderChoice& choice, std::ostream& out, std::ostream& err) {
  try {
    const PipelineConfig config = load_config(config_path, overrides);
    const EvalReport report = evaluate_dataset(dataset, config, make_factory(choice));
    if (!report_path.empty()) write_text_file(report_path, encode(report).dump(2) + "\n");
    out << format_table(report);
    for (const auto& w : report.warnings) err << "warning: " << w << "\n";
    for (const auto& b : report.bundles) {
      if (b.status != OutcomeStatus::Fail && b.status != OutcomeStatus::Error) continue;
      err << "mismatch " << b.name << ": " << (b.diff.is_null() ? b.message : b.diff.dump()) << "\n";
    }
    return report.passed == report.evaluated ? kExitOk : kExitUnresolved;
  } catch (const Error& e) {
    return report_input_error(e, err);
  }
}

int cmd_validate(const std::string& bundle_path, std::ostream& out, std::ostream& err) {
  try {
    const PerceptionBundle b = load_bundle(bundle_path);
    out << "valid: " << b.frames.size() << " frames, " << b.recordings.size() << " recordings\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "invalid: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"uncom: ground spoken tabletop commands with pointing gestures"};
  app.require_subcommand(1);

  std::string bundle, config, out_dir, dataset, report, record;
  std::vector<std::string> overrides;
  ProviderChoice choice;

  auto add_provider = [&](CLI::App* sub) {
    sub->add_option("--provider", choice.kind, "perception backend")
        ->check(CLI::IsMember({"fixture", "bridge"}))
        ->capture_default_str();
    sub->add_option("--bridge-timeout-ms", choice.timeout_ms, "per-request bridge timeout")->capture_default_str();
  };

  CLI::App* ground_cmd = app.add_subcommand("ground", "ground one bundle");
  ground_cmd->add_option("--bundle", bundle, "PerceptionBundle JSON")->required();
  ground_cmd->add_option("--config", config, "PipelineConfig JSON");
  ground_cmd->add_option("--out", out_dir, "output directory")->required();
  ground_cmd->add_option("--set", overrides, "config override key=value (repeatable)");
  ground_cmd->add_option("--record", record, "also write the queried responses as a replayable bundle");
  add_provider(ground_cmd);

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a dataset directory against gold files");
  eval_cmd->add_option("--dataset", dataset, "directory of <name>.bundle.json / <name>.gold.json")->required();
  eval_cmd->add_option("--config", config, "PipelineConfig JSON");
  eval_cmd->add_option("--report", report, "JSON report path");
  eval_cmd->add_option("--set", overrides, "config override key=value (repeatable)");
  add_provider(eval_cmd);

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a bundle against its schema and invariants");
  validate_cmd->add_option("--bundle", bundle, "PerceptionBundle JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  if (ground_cmd->parsed()) return cmd_ground(bundle, config, overrides, out_dir, choice, record, out, err);
  if (eval_cmd->parsed()) return cmd_eval(dataset, config, overrides, report, choice, out, err);
  return cmd_validate(bundle, out, err);
}

}  // namespace uncom
