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

#include "artkit/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace artkit {

bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half,
                          const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 v0 = a - box_center;
  const Vec3 v1 = b - box_center;
  const Vec3 v2 = c - box_center;

  for (int i = 0; i < 3; ++i) {
    const double lo = std::min({v0[i], v1[i], v2[i]});
    const double hi = std::max({v0[i], v1[i], v2[i]});
    if (lo > box_half[i] || hi < -box_half[i]) return false;
  }

  const Vec3 normal = (v1 - v0).cross(v2 - v0);
  const double plane_r = box_half.dot(normal.cwiseAbs());
  if (std::abs(normal.dot(v0)) > plane_r) return false;

  const Vec3 edges[3] = {v1 - v0, v2 - v1, v0 - v2};
  for (const Vec3& e : edges) {
    for (int u = 0; u < 3; ++u) {
      const Vec3 axis = Vec3::Unit(u).cross(e);
      const double p0 = axis.dot(v0);
      const double p1 = axis.dot(v1);
      const double p2 = axis.dot(v2);
      const double r = box_half.dot(axis.cwiseAbs());
      if (std::min({p0, p1, p2}) > r || std::max({p0, p1, p2}) < -r) {
        return false;
      }
    }
  }
  return true;
}

namespace kernels {
namespace {

// Parity rays run along +x from slightly perturbed voxel centers so they do
// not graze the edges of axis-aligned geometry.
constexpr double kJitterY = 3.1415926e-7;
constexpr double kJitterZ = 2.7182818e-7;

struct IndexRange {
  int lo;
  int hi;  // inclusive; empty when lo > hi
};

IndexRange padded_range(double lo, double hi, double origin, double spacing,
                        int dim) {
  const double a = std::floor((lo - origin) / spacing) - 1.0;
  const double b = std::floor((hi - origin) / spacing) + 1.0;
  const int ia = static_cast<int>(std::clamp(a, 0.0, static_cast<double>(dim)));
  const int ib =
      static_cast<int>(std::clamp(b, -1.0, static_cast<double>(dim - 1)));
  return {ia, ib};
}

std::vector<Aabb> triangle_bounds(const TriangleMesh& mesh) {
  std::vector<Aabb> out;
  out.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    Aabb b = Aabb::empty();
    for (int v : t) b.expand(mesh.vertices[v]);
    out.push_back(b);
  }
  return out;
}

double ray_y(const GridSpec& spec, int j) {
  return spec.origin.y() + spec.spacing * (j + 0.5 + kJitterY);
}

double ray_z(const GridSpec& spec, int k) {
  return spec.origin.z() + spec.spacing * (k + 0.5 + kJitterZ);
}

// x coordinate where the line {y = ry, z = rz} pierces the triangle's
// interior, if it does.
bool crossing_x(const Vec3& a, const Vec3& b, const Vec3& c, double ry,
                double rz, double* x) {
  auto edge = [&](const Vec3& p, const Vec3& q) {
    return (q.y() - p.y()) * (rz - p.z()) - (q.z() - p.z()) * (ry - p.y());
  };
  const double e0 = edge(a, b);
  const double e1 = edge(b, c);
  const double e2 = edge(c, a);
  const bool inside = (e0 > 0 && e1 > 0 && e2 > 0) || (e0 < 0 && e1 < 0 && e2 < 0);
  if (!inside) return false;
  const Vec3 n = (b - a).cross(c - a);
  if (n.x() == 0.0) return false;
  *x = a.x() - (n.y() * (ry - a.y()) + n.z() * (rz - a.z())) / n.x();
  return true;
}

void fill_row_from_crossings(std::vector<double>& xs, const GridSpec& spec,
                             uint64_t* row) {
  if (xs.size() < 2) return;
  std::sort(xs.begin(), xs.end());
  size_t passed = 0;  // crossings with x <= voxel center
  for (int i = 0; i < spec.dims[0]; ++i) {
    const double xc = spec.origin.x() + spec.spacing * (i + 0.5);
    while (passed < xs.size() && xs[passed] <= xc) ++passed;
    if ((xs.size() - passed) % 2 == 1) row[i >> 6] |= uint64_t{1} << (i & 63);
  }
}

void mark_triangle_in_slab(const TriangleMesh& mesh, size_t t, const Aabb& tb,
                           int k, VoxelGrid& grid) {
  const GridSpec& spec = grid.spec();
  const Vec3 half = Vec3::Constant(0.5 * spec.spacing);
  const auto& tri = mesh.triangles[t];
  const IndexRange jr = padded_range(tb.min.y(), tb.max.y(), spec.origin.y(),
                                     spec.spacing, spec.dims[1]);
  const IndexRange ir = padded_range(tb.min.x(), tb.max.x(), spec.origin.x(),
                                     spec.spacing, spec.dims[0]);
  for (int j = jr.lo; j <= jr.hi; ++j) {
    for (int i = ir.lo; i <= ir.hi; ++i) {
      if (triangle_box_overlap(spec.voxel_center(i, j, k), half,
                               mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                               mesh.vertices[tri[2]])) {
        grid.set(i, j, k);
      }
    }
  }
}

int assign_one(const Vec3& p, std::span<const Aabb> boxes) {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t b = 0; b < boxes.size(); ++b) {
    const double d2 = boxes[b].squared_distance(p);
    if (d2 == 0.0) return -1;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(b);
    }
  }
  return best;
}

}  // namespace

namespace serial {

void voxelize_mesh(const TriangleMesh& mesh, const FillOptions& options,
                   VoxelGrid& grid) {
  const GridSpec& spec = grid.spec();
  const std::vector<Aabb> tri_bounds = triangle_bounds(mesh);
  if (options.mark_surface) {
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
      const Aabb& tb = tri_bounds[t];
      const IndexRange kr = padded_range(tb.min.z(), tb.max.z(), spec.origin.z(),
                                         spec.spacing, spec.dims[2]);
      for (int k = kr.lo; k <= kr.hi; ++k) {
        mark_triangle_in_slab(mesh, t, tb, k, grid);
      }
    }
  }
  if (options.fill_interior) {
    std::vector<double> xs;
    for (int k = 0; k < spec.dims[2]; ++k) {
      const double rz = ray_z(spec, k);
      for (int j = 0; j < spec.dims[1]; ++j) {
        const double ry = ray_y(spec, j);
        xs.clear();
        for (const auto& t : mesh.triangles) {
          double x;
          if (crossing_x(mesh.vertices[t[0]], mesh.vertices[t[1]],
                         mesh.vertices[t[2]], ry, rz, &x)) {
            xs.push_back(x);
          }
        }
        fill_row_from_crossings(xs, spec, grid.row(j, k));
      }
    }
  }
}

size_t intersection_count(const VoxelGrid& a, const VoxelGrid& b) {
  const auto wa = a.words();
  const auto wb = b.words();
  size_t n = 0;
  for (size_t w = 0; w < wa.size(); ++w) n += std::popcount(wa[w] & wb[w]);
  return n;
}

std::vector<int> assign_points(std::span<const Vec3> points,
                               std::span<const Aabb> boxes) {
  std::vector<int> out(points.size(), -1);
  for (size_t i = 0; i < points.size(); ++i) out[i] = assign_one(points[i], boxes);
  return out;
}

}  // namespace serial

namespace omp {

void voxelize_mesh(const TriangleMesh& mesh, const FillOptions& options,
                   VoxelGrid& grid) {
  const GridSpec& spec = grid.spec();
  const std::vector<Aabb> tri_bounds = triangle_bounds(mesh);

  // Bucket triangles by z-slab so each slab, and therefore each row, is
  // written by exactly one thread.
  std::vector<std::vector<int>> slabs(spec.dims[2]);
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Aabb& tb = tri_bounds[t];
    const IndexRange kr = padded_range(tb.min.z(), tb.max.z(), spec.origin.z(),
                                       spec.spacing, spec.dims[2]);
    for (int k = kr.lo; k <= kr.hi; ++k) slabs[k].push_back(static_cast<int>(t));
  }

#pragma omp parallel
  {
    std::vector<std::vector<double>> rows(spec.dims[1]);
#pragma omp for schedule(dynamic, 1)
    for (int k = 0; k < spec.dims[2]; ++k) {
      const std::vector<int>& bucket = slabs[k];
      if (bucket.empty()) continue;
      if (options.mark_surface) {
        for (int t : bucket) mark_triangle_in_slab(mesh, t, tri_bounds[t], k, grid);
      }
      if (options.fill_interior) {
        for (auto& r : rows) r.clear();
        const double rz = ray_z(spec, k);
        for (int t : bucket) {
          const Aabb& tb = tri_bounds[t];
          if (rz < tb.min.z() || rz > tb.max.z()) continue;
          const IndexRange jr = padded_range(tb.min.y(), tb.max.y(),
                                             spec.origin.y(), spec.spacing,
                                             spec.dims[1]);
          const auto& tri = mesh.triangles[t];
          for (int j = jr.lo; j <= jr.hi; ++j) {
            double x;
            if (crossing_x(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                           mesh.vertices[tri[2]], ray_y(spec, j), rz, &x)) {
              rows[j].push_back(x);
            }
          }
        }
        for (int j = 0; j < spec.dims[1]; ++j) {
          fill_row_from_crossings(rows[j], spec, grid.row(j, k));
        }
      }
    }
  }
}

size_t intersection_count(const VoxelGrid& a, const VoxelGrid& b) {
  const auto wa = a.words();
  const auto wb = b.words();
  const long long n = static_cast<long long>(wa.size());
  size_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (long long w = 0; w < n; ++w) total += std::popcount(wa[w] & wb[w]);
  return total;
}

std::vector<int> assign_points(std::span<const Vec3> points,
                               std::span<const Aabb> boxes) {
  std::vector<int> out(points.size(), -1);
  const long long n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) out[i] = assign_one(points[i], boxes);
  return out;
}

}  // namespace omp

void set_num_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace kernels
}  // namespace artkit
