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

// OBJ and PLY readers/writers for link meshes and oriented point clouds.

#ifndef ARTKIT_MESH_IO_HPP_
#define ARTKIT_MESH_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "artkit/geometry.hpp"
#include "artkit/math.hpp"

namespace artkit {

/// Dispatches on extension (.obj, .ply). Raises UnsupportedMeshFormat for
/// anything else and MeshLoadFailed on read errors.
TriangleMesh load_mesh(const std::filesystem::path& path);
void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh);

/// `v` and `f` records; polygons are fan-triangulated, negative (relative)
/// indices and `v/vt/vn` forms are accepted, other records ignored.
TriangleMesh read_obj(std::istream& in);
void write_obj(std::ostream& out, const TriangleMesh& mesh);

/// ASCII or binary PLY with a `vertex` element (x, y, z) and an optional
/// `face` element carrying a vertex index list.
TriangleMesh read_ply_mesh(std::istream& in);

/// Point cloud with per-vertex nx/ny/nz. Normals are left empty when the
/// file carries none.
PointCloud read_ply_cloud(std::istream& in);
PointCloud load_ply_cloud(const std::filesystem::path& path);
/// Binary little-endian float32 by default; ASCII keeps 9 significant
/// digits.
void write_ply_cloud(std::ostream& out, const PointCloud& cloud,
                     bool ascii = false);
void save_ply_cloud(const std::filesystem::path& path, const PointCloud& cloud,
                    bool ascii = false);

}  // namespace artkit

#endif  // ARTKIT_MESH_IO_HPP_
