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

#include "uncom/error.hpp"

namespace uncom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::EmptyTranscript: return "EmptyTranscript";
    case ErrorCode::NoAction: return "NoAction";
    case ErrorCode::BetweenUnsupported: return "BetweenUnsupported";
    case ErrorCode::AdapterUnavailable: return "AdapterUnavailable";
    case ErrorCode::DegeneratePointing: return "DegeneratePointing";
    case ErrorCode::NoHandDetected: return "NoHandDetected";
    case ErrorCode::NoDetections: return "NoDetections";
    case ErrorCode::DepthOutOfBounds: return "DepthOutOfBounds";
    case ErrorCode::NoEmptyCell: return "NoEmptyCell";
    case ErrorCode::NoFrames: return "NoFrames";
    case ErrorCode::IncompleteCommand: return "IncompleteCommand";
    case ErrorCode::ObjectNotFound: return "ObjectNotFound";
    case ErrorCode::TargetNotFound: return "TargetNotFound";
    case ErrorCode::TableNotFound: return "TableNotFound";
    case ErrorCode::UnknownFrame: return "UnknownFrame";
    case ErrorCode::MissingRecording: return "MissingRecording";
    case ErrorCode::UnsupportedCapability: return "UnsupportedCapability";
    case ErrorCode::BridgeUnavailable: return "BridgeUnavailable";
    case ErrorCode::BridgeProtocolError: return "BridgeProtocolError";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string path)
    : std::runtime_error(message), code_(code), path_(std::move(path)) {}

Error Error::with_step(std::string step) const {
  Error e(code_, what(), path_);
  e.step_ = std::move(step);
  return e;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson:
    case ErrorCode::SchemaMismatch:
    case ErrorCode::InvariantViolation:
    case ErrorCode::Io:
    case ErrorCode::BridgeUnavailable:
    case ErrorCode::BridgeProtocolError:
      return true;
    default:
      return false;
  }
}

}  // namespace uncom
