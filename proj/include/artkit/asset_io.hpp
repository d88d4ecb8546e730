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


// On-disk asset format: a URDF file, one OBJ per link mesh in a sibling
// `<stem>_meshes/` directory, and a `<stem>.meta.json` sidecar holding the
// category, source and normalization transform.

#ifndef ARTKIT_ASSET_IO_HPP_
#define ARTKIT_ASSET_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "artkit/error.hpp"
#include "artkit/kinematics.hpp"
#include "artkit/urdf.hpp"

namespace artkit {

struct AssetMeta {
  std::string id;
  std::optional<std::string> category;
  std::string source;
  /// Maps the original asset frame to the stored one.
  NormalizationTransform normalization;
};

struct Asset {
  ArticulatedObject object;
  AssetMeta meta;
};

std::filesystem::path sidecar_path(const std::filesystem::path& urdf_path);

/// Reads a URDF from disk and runs parse, globalize and simplify. Mesh
/// filenames resolve relative to the URDF's directory; `package://` and
/// `file://` prefixes are stripped.
ArticulatedObject load_urdf_file(const std::filesystem::path& urdf_path,
                                 Warnings* warnings = nullptr);

/// Like load_urdf_file, plus the sidecar when one exists. Without a sidecar
/// the id defaults to the file stem.
Asset load_asset(const std::filesystem::path& urdf_path, Warnings* warnings = nullptr);

/// Writes the URDF, link meshes and sidecar. Raises IoFailure.
void save_asset(const std::filesystem::path& urdf_path, const ArticulatedObject& object,
                const AssetMeta& meta);

}  // namespace artkit

#endif  // ARTKIT_ASSET_IO_HPP_
