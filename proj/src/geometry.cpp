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

#include "artkit/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "artkit/kernels.hpp"
#include "artkit/rng.hpp"

namespace artkit {

PointCloud sample_surface(const TriangleMesh& mesh, int n, uint64_t seed) {
  std::vector<double> cdf;
  cdf.reserve(mesh.triangles.size());
  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    total += 0.5 * (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a).norm();
    cdf.push_back(total);
  }
  if (!(total > 0.0)) raise(ErrorCode::kDegenerateMesh, "mesh has zero surface area");

  Rng rng(seed);
  PointCloud cloud;
  cloud.points.reserve(n);
  cloud.normals.reserve(n);
  for (int s = 0; s < n; ++s) {
    const double u = rng.uniform() * total;
    size_t t = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    t = std::min(t, cdf.size() - 1);
    // Zero-area triangles own empty CDF intervals and are never selected.
    const auto& tri = mesh.triangles[t];
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    const double r1 = std::sqrt(rng.uniform());
    const double r2 = rng.uniform();
    cloud.points.push_back((1.0 - r1) * a + r1 * (1.0 - r2) * b + r1 * r2 * c);
    cloud.normals.push_back((b - a).cross(c - a).normalized());
  }
  return cloud;
}

GridSpec GridSpec::covering(const Aabb& bounds, int resolution) {
  if (resolution < 4) {
    raise(ErrorCode::kInvalidGrid, "grid resolution must be at least 4");
  }
  if (bounds.is_empty() || !(bounds.longest_extent() > 0.0) ||
      !std::isfinite(bounds.longest_extent())) {
    raise(ErrorCode::kInvalidGrid, "grid bounds are degenerate");
  }
  GridSpec spec;
  spec.origin = bounds.min;
  spec.spacing = bounds.longest_extent() / resolution;
  for (int i = 0; i < 3; ++i) {
    const double cells = bounds.extent()[i] / spec.spacing;
    spec.dims[i] = std::max(1, static_cast<int>(std::ceil(cells - 1e-9)));
  }
  return spec;
}

VoxelGrid::VoxelGrid(const GridSpec& spec)
    : spec_(spec),
      row_words_((spec.dims[0] + 63) / 64),
      words_(static_cast<size_t>(row_words_) * spec.dims[1] * spec.dims[2], 0) {}

size_t VoxelGrid::count() const {
  size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

void VoxelGrid::merge(const VoxelGrid& other) {
  if (!(spec_ == other.spec_)) {
    raise(ErrorCode::kInvalidGrid, "cannot merge grids with different layouts");
  }
  for (size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
}

std::vector<TriangleMesh> connected_components(const TriangleMesh& mesh) {
  // Weld exactly coincident vertices, then union-find over triangles.
  std::map<std::tuple<double, double, double>, int> weld;
  std::vector<int> canon(mesh.vertices.size());
  for (size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec3& p = mesh.vertices[v];
    canon[v] = weld.try_emplace({p.x(), p.y(), p.z()}, static_cast<int>(v))
                   .first->second;
  }
  std::vector<int> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : mesh.triangles) {
    const int r0 = find(canon[t[0]]);
    for (int e = 1; e < 3; ++e) {
      const int r = find(canon[t[e]]);
      if (r != r0) parent[r] = r0;
    }
  }

  std::map<int, size_t> component_of_root;
  std::vector<TriangleMesh> out;
  std::vector<std::map<int, int>> local_index;
  for (const auto& t : mesh.triangles) {
    const int root = find(canon[t[0]]);
    auto [it, inserted] = component_of_root.try_emplace(root, out.size());
    if (inserted) {
      out.emplace_back();
      local_index.emplace_back();
    }
    TriangleMesh& comp = out[it->second];
    auto& idx = local_index[it->second];
    std::array<int, 3> tri;
    for (int e = 0; e < 3; ++e) {
      const int v = canon[t[e]];
      auto [vit, fresh] = idx.try_emplace(v, static_cast<int>(comp.vertices.size()));
      if (fresh) comp.vertices.push_back(mesh.vertices[v]);
      tri[e] = vit->second;
    }
    comp.triangles.push_back(tri);
  }
  return out;
}

VoxelGrid voxelize(const TriangleMesh& mesh, const GridSpec& spec,
                   Occupancy mode, Warnings* warnings) {
  VoxelGrid grid(spec);
  const bool want_interior = mode != Occupancy::kSurfaceOnly;
  int open_components = 0;
  for (const TriangleMesh& comp : connected_components(mesh)) {
    kernels::FillOptions options;
    options.mark_surface = mode != Occupancy::kInteriorOnly;
    options.fill_interior = want_interior;
    if (want_interior && !comp.is_closed()) {
      ++open_components;
      options.fill_interior = false;
      options.mark_surface = true;
    }
    kernels::omp::voxelize_mesh(comp, options, grid);
  }
  if (open_components > 0) {
    warn(warnings, "OpenMeshWarning: " + std::to_string(open_components) +
                       " open component(s) voxelized as surface only");
  }
  return grid;
}

VoxelGrid voxelize(const TriangleMesh& mesh, const Aabb& bounds, int resolution,
                   Warnings* warnings) {
  return voxelize(mesh, GridSpec::covering(bounds, resolution),
                  Occupancy::kSolidWithShell, warnings);
}

VoxelGrid voxelize_points(std::span<const Vec3> points, const GridSpec& spec) {
  VoxelGrid grid(spec);
  for (const Vec3& p : points) {
    const Vec3 cell = (p - spec.origin) / spec.spacing;
    int idx[3];
    bool inside = true;
    for (int a = 0; a < 3; ++a) {
      const double f = std::floor(cell[a]);
      // Points on the far face belong to the last cell.
      idx[a] = static_cast<int>(f == spec.dims[a] && cell[a] == f ? f - 1 : f);
      inside = inside && idx[a] >= 0 && idx[a] < spec.dims[a];
    }
    if (inside) grid.set(idx[0], idx[1], idx[2]);
  }
  return grid;
}

VoxelGrid voxelize_points(std::span<const Vec3> points, const Aabb& bounds,
                          int resolution) {
  return voxelize_points(points, GridSpec::covering(bounds, resolution));
}

size_t intersection_count(const VoxelGrid& a, const VoxelGrid& b) {
  if (!(a.spec() == b.spec())) {
    raise(ErrorCode::kInvalidGrid, "cannot intersect grids with different layouts");
  }
  return kernels::omp::intersection_count(a, b);
}

std::vector<Aabb> expand_boxes(std::span<const Vec3> points,
                               std::span<const Aabb> boxes) {
  std::vector<Aabb> out(boxes.begin(), boxes.end());
  if (boxes.empty()) return out;
  const std::vector<int> owner = kernels::omp::assign_points(points, boxes);
  for (size_t i = 0; i < points.size(); ++i) {
    if (owner[i] >= 0) out[owner[i]].expand(points[i]);
  }
  return out;
}

double aabb_iou(const Aabb& a, const Aabb& b) {
  const double va = a.volume();
  const double vb = b.volume();
  if (va <= 0.0 && vb <= 0.0) return a == b ? 1.0 : 0.0;
  const Vec3 lo = a.min.cwiseMax(b.min);
  const Vec3 hi = a.max.cwiseMin(b.max);
  const Vec3 overlap = (hi - lo).cwiseMax(0.0);
  const double inter = overlap.x() * overlap.y() * overlap.z();
  const double uni = va + vb - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

}  // namespace artkit
