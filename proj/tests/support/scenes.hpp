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


// Builders, random generators and constructed scenes shared by the tests.

#ifndef ARTKIT_TESTS_SUPPORT_SCENES_HPP_
#define ARTKIT_TESTS_SUPPORT_SCENES_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "artkit/error.hpp"
#include "artkit/kinematics.hpp"
#include "artkit/rng.hpp"

namespace artkit::testing {

std::filesystem::path data_path(const std::string& name);
std::string read_file(const std::filesystem::path& path);

/// Code of the artkit::Error raised by `f`, or nullopt if it returns.
std::optional<ErrorCode> error_code(const std::function<void()>& f);

Link box_link(int id, const Aabb& box, bool with_mesh = true);
Joint make_joint(int id, JointKind kind, int parent, int child, const Vec3& axis,
                 std::optional<Vec3> origin = std::nullopt,
                 std::optional<Interval> limit = std::nullopt);

/// Closed, outward-wound latitude/longitude sphere.
TriangleMesh uv_sphere(int rings, int segments, double radius, const Vec3& center = Vec3::Zero());
TriangleMesh boxes_mesh(const std::vector<Aabb>& boxes);

Vec3 random_unit(Rng& rng);
/// Box with corners drawn inside [lo, hi]^3.
Aabb random_box(Rng& rng, double lo = -1.0, double hi = 1.0);
/// parent[i] for a random rooted tree on n nodes; parent[root] = -1. Node
/// labels are shuffled so the root is not always 0.
std::vector<int> random_tree(Rng& rng, int n);

/// Random valid box-only object inside [-0.9, 0.9]^3 with 0..max_joints
/// joints of every non-fixed kind.
ArticulatedObject random_object(Rng& rng, int max_joints = 20);
/// Same object with shuffled link/joint lists and relabelled link ids.
ArticulatedObject shuffled(const ArticulatedObject& object, Rng& rng);

/// Seven-part cabinet with two drawers and four doors, all parented to
/// link 6 (continuous-valued twin of the token sample in tests/data).
ArticulatedObject cabinet_star();

struct RefineScene {
  ArticulatedObject object;
  int joint_id = 0;
  /// Where the joint first touches static geometry.
  double contact = 0.0;
};

/// Thin panel hinged about +z at the origin, sweeping from +x toward +y
/// into a wall occupying x < 0 that it meets flat at exactly 90 degrees.
RefineScene hinged_panel_scene(double limit_hi_deg);
/// Drawer sliding along +x into an open cabinet whose back wall sits
/// `depth` past the drawer's leading face.
RefineScene drawer_scene(double depth, double travel);

}  // namespace artkit::testing

#endif  // ARTKIT_TESTS_SUPPORT_SCENES_HPP_
