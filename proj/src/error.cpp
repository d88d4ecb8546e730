// Copyright 2026 The ArtKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "artkit/error.hpp"

namespace artkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kMultipleRoots: return "MultipleRoots";
    case ErrorCode::kMultipleParents: return "MultipleParents";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kEmptyObject: return "EmptyObject";
    case ErrorCode::kUnknownJoint: return "UnknownJoint";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kInvalidJoint: return "InvalidJoint";
    case ErrorCode::kXmlMalformed: return "XmlMalformed";
    case ErrorCode::kUnresolvedLinkName: return "UnresolvedLinkName";
    case ErrorCode::kUnsupportedJointType: return "UnsupportedJointType";
    case ErrorCode::kUnsupportedMeshFormat: return "UnsupportedMeshFormat";
    case ErrorCode::kMeshLoadFailed: return "MeshLoadFailed";
    case ErrorCode::kDegenerateExtent: return "DegenerateExtent";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kTooManyParts: return "TooManyParts";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kBinOutOfRange: return "BinOutOfRange";
    case ErrorCode::kGraphInvalid: return "GraphInvalid";
    case ErrorCode::kNonUnitVector: return "NonUnitVector";
    case ErrorCode::kDegenerateMesh: return "DegenerateMesh";
    case ErrorCode::kInvalidGrid: return "InvalidGrid";
    case ErrorCode::kNoLimit: return "NoLimit";
    case ErrorCode::kMissingGeometry: return "MissingGeometry";
    case ErrorCode::kCategoryMismatch: return "CategoryMismatch";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

std::ostream& operator<<(std::ostream& os, ErrorCode code) { return os << to_string(code); }

}  // namespace artkit
