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

#include "artkit/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace artkit {

RigidTransform RigidTransform::from_xyz_rpy(const Vec3& xyz, const Vec3& rpy) {
  RigidTransform tf;
  // URDF convention: fixed-axis roll about X, then pitch about Y, then yaw
  // about Z, i.e. R = Rz(yaw) Ry(pitch) Rx(roll).
  if (rpy != Vec3::Zero()) {
    tf.rotation = (Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                   Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                   Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
                      .toRotationMatrix();
  }
  tf.translation = xyz;
  return tf;
}

RigidTransform RigidTransform::rotation_about(const Vec3& axis,
                                              const Vec3& point,
                                              double angle) {
  RigidTransform tf;
  if (angle != 0.0) {
    tf.rotation = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
  }
  tf.translation = point - tf.rotation * point;
  return tf;
}

RigidTransform RigidTransform::operator*(const RigidTransform& rhs) const {
  RigidTransform out;
  out.rotation = rotation * rhs.rotation;
  out.translation = rotation * rhs.translation + translation;
  return out;
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform out;
  out.rotation = rotation.transpose();
  out.translation = -(out.rotation * translation);
  return out;
}

Aabb Aabb::empty() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {Vec3::Constant(inf), Vec3::Constant(-inf)};
}

Aabb Aabb::from_points(std::span<const Vec3> points) {
  Aabb box = empty();
  for (const Vec3& p : points) box.expand(p);
  return box;
}

bool Aabb::is_empty() const {
  return (min.array() > max.array()).any();
}

double Aabb::volume() const {
  if (is_empty()) return 0.0;
  const Vec3 e = extent();
  return e.x() * e.y() * e.z();
}

void Aabb::expand(const Vec3& p) {
  min = min.cwiseMin(p);
  max = max.cwiseMax(p);
}

void Aabb::merge(const Aabb& other) {
  if (other.is_empty()) return;
  min = min.cwiseMin(other.min);
  max = max.cwiseMax(other.max);
}

Aabb Aabb::merged(const Aabb& other) const {
  Aabb out = *this;
  out.merge(other);
  return out;
}

Aabb Aabb::inflated(double margin) const {
  return {min.array() - margin, max.array() + margin};
}

bool Aabb::contains(const Vec3& p, double tol) const {
  return (p.array() >= min.array() - tol).all() &&
         (p.array() <= max.array() + tol).all();
}

bool Aabb::contains(const Aabb& other, double tol) const {
  return contains(other.min, tol) && contains(other.max, tol);
}

double Aabb::squared_distance(const Vec3& p) const {
  double d2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    double d = 0.0;
    if (p[i] < min[i]) {
      d = min[i] - p[i];
    } else if (p[i] > max[i]) {
      d = p[i] - max[i];
    }
    d2 += d * d;
  }
  return d2;
}

std::array<Vec3, 8> Aabb::corners() const {
  std::array<Vec3, 8> out;
  for (int i = 0; i < 8; ++i) {
    out[i] = Vec3((i & 1) ? max.x() : min.x(), (i & 2) ? max.y() : min.y(),
                  (i & 4) ? max.z() : min.z());
  }
  return out;
}

Aabb Aabb::transformed(const RigidTransform& tf) const {
  if (is_empty()) return *this;
  Aabb out = empty();
  for (const Vec3& c : corners()) out.expand(tf.apply(c));
  return out;
}

Aabb TriangleMesh::bounds() const {
  return Aabb::from_points(vertices);
}

double TriangleMesh::surface_area() const {
  double area = 0.0;
  for (const auto& t : triangles) {
    const Vec3& a = vertices[t[0]];
    area += 0.5 * (vertices[t[1]] - a).cross(vertices[t[2]] - a).norm();
  }
  return area;
}

double TriangleMesh::signed_volume() const {
  double six_v = 0.0;
  for (const auto& t : triangles) {
    six_v += vertices[t[0]].dot(vertices[t[1]].cross(vertices[t[2]]));
  }
  return six_v / 6.0;
}

bool TriangleMesh::is_closed() const {
  if (triangles.empty()) return false;
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = t[e];
      int b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  }
  return std::all_of(edge_count.begin(), edge_count.end(),
                     [](const auto& kv) { return kv.second % 2 == 0; });
}

void TriangleMesh::append(const TriangleMesh& other) {
  const int base = static_cast<int>(vertices.size());
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  triangles.reserve(triangles.size() + other.triangles.size());
  for (const auto& t : other.triangles) {
    triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
  }
}

TriangleMesh TriangleMesh::transformed(const RigidTransform& tf) const {
  TriangleMesh out = *this;
  out.transform_in_place(tf);
  return out;
}

void TriangleMesh::transform_in_place(const RigidTransform& tf) {
  for (Vec3& v : vertices) v = tf.apply(v);
}

TriangleMesh TriangleMesh::box(const Aabb& b) {
  TriangleMesh mesh;
  const auto corners = b.corners();
  mesh.vertices.assign(corners.begin(), corners.end());
  // Corner index bits: 1 -> x max, 2 -> y max, 4 -> z max.
  mesh.triangles = {
      {0, 4, 6}, {0, 6, 2},  // -x
      {1, 3, 7}, {1, 7, 5},  // +x
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 6, 7}, {2, 7, 3},  // +y
      {0, 2, 3}, {0, 3, 1},  // -z
      {4, 5, 7}, {4, 7, 6},  // +z
  };
  return mesh;
}

}  // namespace artkit
