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

// Hot loops behind the geometry kit. Every kernel has a straightforward
// serial reference and an OpenMP version; both must produce bit-identical
// results, which tests/kernels_test.cpp checks and bench/ measures.

#ifndef ARTKIT_KERNELS_HPP_
#define ARTKIT_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "artkit/geometry.hpp"

namespace artkit::kernels {

struct FillOptions {
  bool fill_interior = true;  // parity fill of voxel centers
  bool mark_surface = true;   // voxels touched by a triangle
};

namespace serial {

/// ORs the occupancy of one closed (or, with fill_interior off, open)
/// triangle soup into `grid`.
void voxelize_mesh(const TriangleMesh& mesh, const FillOptions& options,
                   VoxelGrid& grid);
size_t intersection_count(const VoxelGrid& a, const VoxelGrid& b);
/// Index of the box each uncovered point goes to, or -1 when covered.
std::vector<int> assign_points(std::span<const Vec3> points,
                               std::span<const Aabb> boxes);

}  // namespace serial

namespace omp {

void voxelize_mesh(const TriangleMesh& mesh, const FillOptions& options,
                   VoxelGrid& grid);
size_t intersection_count(const VoxelGrid& a, const VoxelGrid& b);
std::vector<int> assign_points(std::span<const Vec3> points,
                               std::span<const Aabb> boxes);

}  // namespace omp

/// Sets the OpenMP thread count used by the omp kernels; 0 keeps the
/// runtime default.
void set_num_threads(int threads);

}  // namespace artkit::kernels

#endif  // ARTKIT_KERNELS_HPP_
