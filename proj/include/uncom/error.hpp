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

#ifndef UNCOM_ERROR_HPP
#define UNCOM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace uncom {

// Machine-readable error codes shared by every module.
enum class ErrorCode {
  // decoding
  MalformedJson,
  SchemaMismatch,
  InvariantViolation,
  // extraction
  EmptyTranscript,
  NoAction,
  BetweenUnsupported,
  AdapterUnavailable,
  // geometry
  DegeneratePointing,
  NoHandDetected,
  NoDetections,
  DepthOutOfBounds,
  // table map
  NoEmptyCell,
  // pipeline
  NoFrames,
  IncompleteCommand,
  ObjectNotFound,
  TargetNotFound,
  TableNotFound,
  // providers
  UnknownFrame,
  MissingRecording,
  UnsupportedCapability,
  BridgeUnavailable,
  BridgeProtocolError,
  PreconditionViolation,
  Io,
};

std::string_view to_string(ErrorCode code);

// Decode, I/O and transport failures, as opposed to failures to resolve a command.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {});

  ErrorCode code() const { return code_; }
  // JSON path of the offending value for decode errors, empty otherwise.
  const std::string& path() const { return path_; }
  // Pipeline step that raised the error, empty outside ground().
  const std::string& step() const { return step_; }

  Error with_step(std::string step) const;

 private:
  ErrorCode code_;
  std::string path_;
  std::string step_;
};

}  // namespace uncom

#endif  // UNCOM_ERROR_HPP
