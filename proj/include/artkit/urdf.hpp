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

// URDF subset ingestion and export, plus the structural clean-up steps that
// turn a raw asset into a canonical one: world-frame joints, no fixed
// joints, fused screw pairs and a [-0.9, 0.9]^3 normalization.
//
// Supported XML: robot, link, visual, collision, geometry, mesh, box,
// origin, joint, parent, child, axis, limit. Everything else is skipped with
// a warning.

#ifndef ARTKIT_URDF_HPP_
#define ARTKIT_URDF_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "artkit/error.hpp"
#include "artkit/kinematics.hpp"

namespace artkit {

/// Loads a mesh referenced by `filename` (as written in the URDF).
using MeshResolver = std::function<TriangleMesh(const std::string& filename)>;
/// Persists a link mesh and returns the filename to reference from URDF.
using MeshWriter = std::function<std::string(const Link& link)>;

struct RawGeometry {
  RigidTransform origin;
  std::optional<std::string> mesh_filename;
  Vec3 mesh_scale = Vec3::Ones();
  std::optional<Vec3> box_size;
};

struct RawLink {
  std::string name;
  std::vector<RawGeometry> visuals;
  std::vector<RawGeometry> collisions;
};

struct RawJoint {
  std::string name;
  std::string type;
  std::string parent;
  std::string child;
  RigidTransform origin;
  Vec3 axis = Vec3::UnitX();
  std::optional<Interval> limit;
};

struct RawUrdfModel {
  std::string name;
  std::vector<RawLink> links;
  std::vector<RawJoint> joints;
  std::vector<std::string> warnings;
  /// Used by `globalize` to load mesh files on demand.
  MeshResolver mesh_resolver;
};

/// Raises XmlMalformed, UnresolvedLinkName or UnsupportedJointType.
RawUrdfModel parse_urdf(const std::string& xml_text,
                        MeshResolver mesh_resolver = nullptr);

/// Walks the tree from the root at zero configuration and expresses every
/// joint axis, joint origin and link mesh in the world frame. Visual
/// geometry is preferred; collision geometry is used when a link has no
/// visuals. Links without geometry get a zero-size box at their frame
/// origin.
ArticulatedObject globalize(const RawUrdfModel& model, Warnings* warnings = nullptr);

/// Merges every fixed joint away and fuses revolute+prismatic chains with a
/// shared axis through a massless helper link into screw joints.
ArticulatedObject simplify(const ArticulatedObject& object);

struct NormalizationTransform {
  double scale = 1.0;
  Vec3 offset = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return scale * p + offset; }
  Vec3 invert(const Vec3& p) const { return (p - offset) / scale; }
};

/// Half-width of the normalized cube.
inline constexpr double kNormalizedHalfExtent = 0.9;

/// Uniform scale and translation that center the union box at the origin
/// with its longest side spanning 1.8. Raises DegenerateExtent.
std::pair<ArticulatedObject, NormalizationTransform> normalize(
    const ArticulatedObject& object);

/// Serializes to URDF. Link frames are placed at joint origins with zero
/// rotation so that parse_urdf + globalize reproduce the object. Screw
/// joints become a revolute joint, a generated `<name>_screw_helper` link
/// and a prismatic joint. Links without a mesh (or with a null writer) are
/// written as `<box>` geometry.
std::string emit_urdf(const ArticulatedObject& object,
                      const MeshWriter& mesh_writer = nullptr,
                      const std::string& robot_name = "object");

}  // namespace artkit

#endif  // ARTKIT_URDF_HPP_
