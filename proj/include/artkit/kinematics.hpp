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

// Articulated-object domain model: links with boxes and optional meshes,
// single-DOF joints expressed in the world frame, and the kinematic tree.

#ifndef ARTKIT_KINEMATICS_HPP_
#define ARTKIT_KINEMATICS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artkit/math.hpp"

namespace artkit {

/// Vertices of a link mesh may poke out of its box by at most this much.
inline constexpr double kMeshContainmentTol = 1e-4;
inline constexpr double kUnitAxisTol = 1e-9;

enum class JointKind { kRevolute, kContinuous, kPrismatic, kScrew, kFixed };

std::string_view to_string(JointKind kind);
std::optional<JointKind> joint_kind_from_string(std::string_view name);

/// True for kinds that rotate about a line and therefore carry an origin.
bool has_axis_origin(JointKind kind);
/// True for kinds whose configuration is bounded.
bool has_limit(JointKind kind);
/// True for kinds whose limit is a length rather than an angle.
bool is_translational(JointKind kind);

struct Link {
  int id = 0;
  std::string name;
  Aabb aabb;
  std::optional<TriangleMesh> mesh;

  /// Recomputes `aabb` from the mesh when one is present.
  void sync_aabb_from_mesh();
  /// Solid proxy used for sampling and collision: the mesh, or the box.
  TriangleMesh geometry() const;
  /// False for links that are only a frame (no mesh, zero-size box).
  bool has_geometry() const;
};

struct Joint {
  int id = 0;
  std::string name;
  JointKind kind = JointKind::kFixed;
  int parent = 0;
  int child = 0;
  Vec3 axis_dir = Vec3::UnitX();
  std::optional<Vec3> axis_origin;
  /// Radians for revolute, length for prismatic and screw.
  std::optional<Interval> limit;
};

struct ArticulatedObject {
  std::vector<Link> links;
  std::vector<Joint> joints;
  std::optional<std::string> category;

  const Link* find_link(int id) const;
  Link* find_link(int id);
  const Joint* find_joint(int id) const;
  Joint* find_joint(int id);
  /// Link or joint lookup that raises on a missing id.
  const Link& link(int id) const;
  const Joint& joint(int id) const;

  /// Union of all link boxes.
  Aabb bounds() const;
};

struct KinematicGraph {
  struct Edge {
    int parent;
    int child;
    int joint;
  };

  std::vector<int> nodes;  // sorted link ids
  std::vector<Edge> edges;  // sorted by child id
  int root = 0;

  std::vector<Edge> out_edges(int node) const;
  std::optional<Edge> in_edge(int node) const;
  /// `node` and all of its descendants, in breadth-first order.
  std::vector<int> subtree(int node) const;
};

/// Builds and checks the kinematic tree. Raises DanglingReference,
/// CycleDetected, MultipleParents, MultipleRoots or EmptyObject.
KinematicGraph build_graph(const ArticulatedObject& object);

/// Checks link/joint invariants (unique ids, unit axes, kind-dependent field
/// presence, mesh containment) and then the graph. Raises on the first
/// violation.
void validate(const ArticulatedObject& object);

/// Rigid motion of the child side of `joint_id` at configuration `q`.
///
/// Revolute and continuous joints rotate by q about the axis line;
/// prismatic joints translate by q along the axis; screw joints do both,
/// turning 2*pi*q/span radians where span is the width of the translation
/// limit, so one full turn covers the limit. Fixed joints are the identity.
RigidTransform pose_part(const ArticulatedObject& object, int joint_id,
                         double q);
RigidTransform pose_joint(const Joint& joint, double q);

/// Merges link `absorb` into `keep` across the joint connecting them: the
/// geometry is unioned, that joint is removed, and all other joints touching
/// `absorb` are re-pointed at `keep`. Link and joint ids are then compacted
/// to 0..n-1 in their previous relative order. Raises NotAdjacent.
ArticulatedObject merge_links(const ArticulatedObject& object, int keep,
                              int absorb);

/// Renumbers link ids (and joint ids) to 0..n-1 preserving relative order.
void compact_ids(ArticulatedObject& object);

/// Applies a similarity transform p -> scale * R p + offset to all geometry
/// and joint parameters. Translational limits are multiplied by `scale`.
void apply_similarity(ArticulatedObject& object, const Mat3& rotation,
                      double scale, const Vec3& offset);

}  // namespace artkit

#endif  // ARTKIT_KINEMATICS_HPP_
