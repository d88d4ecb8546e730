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

#ifndef ARTKIT_MATH_HPP_
#define ARTKIT_MATH_HPP_

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace artkit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Rotation followed by translation: p -> R p + t.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }
  static RigidTransform from_xyz_rpy(const Vec3& xyz, const Vec3& rpy);
  /// Rotation by `angle` about the line through `point` along unit `axis`.
  static RigidTransform rotation_about(const Vec3& axis, const Vec3& point,
                                       double angle);

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_direction(const Vec3& d) const { return rotation * d; }
  RigidTransform operator*(const RigidTransform& rhs) const;
  RigidTransform inverse() const;
};

/// Closed 1-D interval. `lo > hi` is representable; callers that need an
/// ordered interval use `ordered()`.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  Interval ordered() const { return lo <= hi ? *this : Interval{hi, lo}; }
  bool contains(double q) const { return q >= lo && q <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  /// An inverted box that acts as the identity for `merge`.
  static Aabb empty();
  static Aabb from_points(std::span<const Vec3> points);

  bool is_empty() const;
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  double volume() const;
  double longest_extent() const { return extent().maxCoeff(); }

  void expand(const Vec3& p);
  void merge(const Aabb& other);
  Aabb merged(const Aabb& other) const;
  Aabb inflated(double margin) const;

  bool contains(const Vec3& p, double tol = 0.0) const;
  bool contains(const Aabb& other, double tol = 0.0) const;
  /// Squared Euclidean distance from p to the closed box (0 inside).
  double squared_distance(const Vec3& p) const;

  std::array<Vec3, 8> corners() const;
  Aabb transformed(const RigidTransform& tf) const;

  bool operator==(const Aabb& other) const {
    return min == other.min && max == other.max;
  }
};

/// Indexed triangle mesh. Winding is counter-clockwise seen from outside.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  bool empty() const { return triangles.empty(); }
  Aabb bounds() const;
  double surface_area() const;
  /// Signed volume via the divergence theorem; positive for outward winding.
  double signed_volume() const;
  /// True when every undirected edge is shared by an even number of
  /// triangles, so unions of touching closed shells still qualify.
  bool is_closed() const;

  void append(const TriangleMesh& other);
  TriangleMesh transformed(const RigidTransform& tf) const;
  void transform_in_place(const RigidTransform& tf);

  /// Closed, outward-wound 12-triangle box.
  static TriangleMesh box(const Aabb& box);
};

}  // namespace artkit

#endif  // ARTKIT_MATH_HPP_
