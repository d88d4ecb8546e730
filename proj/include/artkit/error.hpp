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

#ifndef ARTKIT_ERROR_HPP_
#define ARTKIT_ERROR_HPP_

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace artkit {

/// Error variants raised across the library. Each module documents which of
/// these it can produce; the CLI prints the variant name verbatim.
enum class ErrorCode {
  // kinematics
  kCycleDetected,
  kMultipleRoots,
  kMultipleParents,
  kDanglingReference,
  kEmptyObject,
  kUnknownJoint,
  kNotAdjacent,
  kInvalidJoint,
  // urdf / meshes
  kXmlMalformed,
  kUnresolvedLinkName,
  kUnsupportedJointType,
  kUnsupportedMeshFormat,
  kMeshLoadFailed,
  kDegenerateExtent,
  kIoFailure,
  // codec
  kTooManyParts,
  kSyntaxError,
  kIndexOutOfRange,
  kBinOutOfRange,
  kGraphInvalid,
  kNonUnitVector,
  // geometry
  kDegenerateMesh,
  kInvalidGrid,
  // limit refinement
  kNoLimit,
  kMissingGeometry,
  // evaluation
  kCategoryMismatch,
  // misc
  kConfigError,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);
std::ostream& operator<<(std::ostream& os, ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

/// Optional sink for non-fatal diagnostics. Functions taking a
/// `Warnings*` accept nullptr.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

}  // namespace artkit

#endif  // ARTKIT_ERROR_HPP_
