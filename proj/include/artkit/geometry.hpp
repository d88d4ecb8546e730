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

#ifndef ARTKIT_GEOMETRY_HPP_
#define ARTKIT_GEOMETRY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "artkit/error.hpp"
#include "artkit/math.hpp"

namespace artkit {

/// Number of surface samples fed to the articulation predictor.
inline constexpr int kPredictorCloudSize = 32768;
inline constexpr int kDefaultGridResolution = 64;

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;

  size_t size() const { return points.size(); }
};

/// Area-weighted uniform surface samples with flat per-face normals.
/// Deterministic for a given seed. Raises DegenerateMesh for zero area.
PointCloud sample_surface(const TriangleMesh& mesh, int n, uint64_t seed);

/// Regular grid layout. Voxel (i, j, k) spans
/// origin + spacing * [i, i+1] x [j, j+1] x [k, k+1].
struct GridSpec {
  Vec3 origin = Vec3::Zero();
  double spacing = 1.0;
  std::array<int, 3> dims{0, 0, 0};

  /// Cubic voxels with `resolution` cells along the longest axis of
  /// `bounds`. Raises InvalidGrid for degenerate bounds or resolution < 4.
  static GridSpec covering(const Aabb& bounds, int resolution);

  size_t voxel_count() const {
    return static_cast<size_t>(dims[0]) * dims[1] * dims[2];
  }
  double voxel_volume() const { return spacing * spacing * spacing; }
  Vec3 voxel_center(int i, int j, int k) const {
    return origin + spacing * Vec3(i + 0.5, j + 0.5, k + 0.5);
  }
  Aabb bounds() const {
    return {origin, origin + spacing * Vec3(dims[0], dims[1], dims[2])};
  }
  bool operator==(const GridSpec& o) const {
    return origin == o.origin && spacing == o.spacing && dims == o.dims;
  }
};

/// Dense occupancy bitset. Each x-row is padded to whole 64-bit words so a
/// row is never shared between writers.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  explicit VoxelGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int row_words() const { return row_words_; }
  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

  bool test(int i, int j, int k) const {
    return (words_[word_index(i, j, k)] >> (i & 63)) & 1u;
  }
  void set(int i, int j, int k) {
    words_[word_index(i, j, k)] |= uint64_t{1} << (i & 63);
  }
  uint64_t* row(int j, int k) {
    return words_.data() + (static_cast<size_t>(k) * spec_.dims[1] + j) * row_words_;
  }

  size_t count() const;
  double volume() const { return count() * spec_.voxel_volume(); }
  void merge(const VoxelGrid& other);  // bitwise OR, same spec required

  bool operator==(const VoxelGrid& o) const {
    return spec_ == o.spec_ && words_ == o.words_;
  }

 private:
  size_t word_index(int i, int j, int k) const {
    return (static_cast<size_t>(k) * spec_.dims[1] + j) * row_words_ + (i >> 6);
  }

  GridSpec spec_;
  int row_words_ = 0;
  std::vector<uint64_t> words_;
};

enum class Occupancy {
  /// Voxel centers inside the closed surface plus every voxel the surface
  /// touches.
  kSolidWithShell,
  /// Voxel centers inside the closed surface only.
  kInteriorOnly,
  /// Voxels the surface touches.
  kSurfaceOnly,
};

/// Voxelizes each connected component of `mesh` into `spec`. Open
/// components cannot be parity-filled; they degrade to surface occupancy
/// and add an OpenMeshWarning to `warnings`.
VoxelGrid voxelize(const TriangleMesh& mesh, const GridSpec& spec,
                   Occupancy mode = Occupancy::kSolidWithShell,
                   Warnings* warnings = nullptr);
VoxelGrid voxelize(const TriangleMesh& mesh, const Aabb& bounds, int resolution,
                   Warnings* warnings = nullptr);
/// A voxel is occupied iff it holds at least one point. Points outside the
/// grid are ignored.
VoxelGrid voxelize_points(std::span<const Vec3> points, const GridSpec& spec);
VoxelGrid voxelize_points(std::span<const Vec3> points, const Aabb& bounds,
                          int resolution);

/// Number of voxels occupied in both grids.
size_t intersection_count(const VoxelGrid& a, const VoxelGrid& b);

/// Splits a mesh into vertex-connected components (coincident vertices are
/// welded first).
std::vector<TriangleMesh> connected_components(const TriangleMesh& mesh);

/// Assigns every point not inside any box to its nearest box (squared
/// Euclidean point-to-box distance, ties to the lower index) and grows each
/// box to the union of itself and its assigned points.
std::vector<Aabb> expand_boxes(std::span<const Vec3> points,
                               std::span<const Aabb> boxes);

/// V_inter / (V_a + V_b - V_inter). Two zero-volume boxes score 1 when
/// identical and 0 otherwise.
double aabb_iou(const Aabb& a, const Aabb& b);

/// Closed-box test used by voxel surface marking (separating axis theorem).
bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half,
                          const Vec3& v0, const Vec3& v1, const Vec3& v2);

}  // namespace artkit

#endif  // ARTKIT_GEOMETRY_HPP_
