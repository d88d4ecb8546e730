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


// Serial reference versus OpenMP kernels on a closed sphere mesh and a
// random point cloud.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "artkit/kernels.hpp"
#include "artkit/rng.hpp"

namespace {

using artkit::Aabb;
using artkit::GridSpec;
using artkit::TriangleMesh;
using artkit::Vec3;
using artkit::VoxelGrid;
namespace kernels = artkit::kernels;

TriangleMesh uv_sphere(int rings, int segments, double radius) {
  TriangleMesh m;
  m.vertices.push_back({0, 0, radius});
  for (int r = 1; r < rings; ++r) {
    const double theta = artkit::kPi * r / rings;
    for (int s = 0; s < segments; ++s) {
      const double phi = 2 * artkit::kPi * s / segments;
      m.vertices.push_back(radius * Vec3(std::sin(theta) * std::cos(phi),
                                         std::sin(theta) * std::sin(phi), std::cos(theta)));
    }
  }
  m.vertices.push_back({0, 0, -radius});
  const int south = static_cast<int>(m.vertices.size()) - 1;
  auto at = [&](int r, int s) { return 1 + (r - 1) * segments + (s % segments); };
  for (int s = 0; s < segments; ++s) {
    m.triangles.push_back({0, at(1, s), at(1, s + 1)});
    for (int r = 1; r + 1 < rings; ++r) {
      m.triangles.push_back({at(r, s), at(r + 1, s), at(r + 1, s + 1)});
      m.triangles.push_back({at(r, s), at(r + 1, s + 1), at(r, s + 1)});
    }
    m.triangles.push_back({south, at(rings - 1, s + 1), at(rings - 1, s)});
  }
  return m;
}

GridSpec unit_grid(int res) {
  return GridSpec::covering({Vec3::Constant(-1.0), Vec3::Constant(1.0)}, res);
}

template <bool kParallel>
void BM_VoxelizeMesh(benchmark::State& state) {
  const TriangleMesh sphere = uv_sphere(48, 96, 0.8);
  const GridSpec spec = unit_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    VoxelGrid grid(spec);
    if constexpr (kParallel) {
      kernels::omp::voxelize_mesh(sphere, {}, grid);
    } else {
      kernels::serial::voxelize_mesh(sphere, {}, grid);
    }
    benchmark::DoNotOptimize(grid.words().data());
  }
}
BENCHMARK(BM_VoxelizeMesh<false>)->Name("voxelize_mesh/serial")->Arg(64)->Arg(128);
BENCHMARK(BM_VoxelizeMesh<true>)->Name("voxelize_mesh/omp")->Arg(64)->Arg(128);

template <bool kParallel>
void BM_IntersectionCount(benchmark::State& state) {
  const GridSpec spec = unit_grid(static_cast<int>(state.range(0)));
  VoxelGrid a(spec);
  VoxelGrid b(spec);
  kernels::serial::voxelize_mesh(uv_sphere(24, 48, 0.8), {}, a);
  kernels::serial::voxelize_mesh(uv_sphere(24, 48, 0.5), {}, b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kParallel ? kernels::omp::intersection_count(a, b)
                                       : kernels::serial::intersection_count(a, b));
  }
}
BENCHMARK(BM_IntersectionCount<false>)->Name("intersection_count/serial")->Arg(128)->Arg(256);
BENCHMARK(BM_IntersectionCount<true>)->Name("intersection_count/omp")->Arg(128)->Arg(256);

template <bool kParallel>
void BM_AssignPoints(benchmark::State& state) {
  artkit::Rng rng(7);
  std::vector<Vec3> points(static_cast<size_t>(state.range(0)));
  for (Vec3& p : points) p = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
  std::vector<Aabb> boxes;
  for (int i = 0; i < 16; ++i) {
    const Vec3 c(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
    boxes.push_back({c - Vec3::Constant(0.1), c + Vec3::Constant(0.1)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kParallel ? kernels::omp::assign_points(points, boxes)
                                       : kernels::serial::assign_points(points, boxes));
  }
}
BENCHMARK(BM_AssignPoints<false>)->Name("assign_points/serial")->Arg(32768);
BENCHMARK(BM_AssignPoints<true>)->Name("assign_points/omp")->Arg(32768);

}  // namespace

BENCHMARK_MAIN();
