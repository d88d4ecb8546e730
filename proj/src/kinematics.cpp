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

#include "artkit/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "artkit/error.hpp"

namespace artkit {

std::string_view to_string(JointKind kind) {
  switch (kind) {
    case JointKind::kRevolute: return "revolute";
    case JointKind::kContinuous: return "continuous";
    case JointKind::kPrismatic: return "prismatic";
    case JointKind::kScrew: return "screw";
    case JointKind::kFixed: return "fixed";
  }
  return "unknown";
}

std::optional<JointKind> joint_kind_from_string(std::string_view name) {
  if (name == "revolute") return JointKind::kRevolute;
  if (name == "continuous") return JointKind::kContinuous;
  if (name == "prismatic") return JointKind::kPrismatic;
  if (name == "screw") return JointKind::kScrew;
  if (name == "fixed") return JointKind::kFixed;
  return std::nullopt;
}

bool has_axis_origin(JointKind kind) {
  return kind == JointKind::kRevolute || kind == JointKind::kContinuous ||
         kind == JointKind::kScrew;
}

bool has_limit(JointKind kind) {
  return kind == JointKind::kRevolute || kind == JointKind::kPrismatic ||
         kind == JointKind::kScrew;
}

bool is_translational(JointKind kind) {
  return kind == JointKind::kPrismatic || kind == JointKind::kScrew;
}

void Link::sync_aabb_from_mesh() {
  if (mesh && !mesh->vertices.empty()) aabb = mesh->bounds();
}

TriangleMesh Link::geometry() const {
  if (mesh && !mesh->empty()) return *mesh;
  return TriangleMesh::box(aabb);
}

bool Link::has_geometry() const {
  if (mesh && !mesh->empty()) return true;
  return !aabb.is_empty() && aabb.extent().maxCoeff() > 0.0;
}

const Link* ArticulatedObject::find_link(int id) const {
  for (const Link& l : links) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

Link* ArticulatedObject::find_link(int id) {
  for (Link& l : links) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

const Joint* ArticulatedObject::find_joint(int id) const {
  for (const Joint& j : joints) {
    if (j.id == id) return &j;
  }
  return nullptr;
}

Joint* ArticulatedObject::find_joint(int id) {
  for (Joint& j : joints) {
    if (j.id == id) return &j;
  }
  return nullptr;
}

const Link& ArticulatedObject::link(int id) const {
  const Link* l = find_link(id);
  if (l == nullptr) {
    raise(ErrorCode::kDanglingReference, "no link with id " + std::to_string(id));
  }
  return *l;
}

const Joint& ArticulatedObject::joint(int id) const {
  const Joint* j = find_joint(id);
  if (j == nullptr) {
    raise(ErrorCode::kUnknownJoint, "no joint with id " + std::to_string(id));
  }
  return *j;
}

Aabb ArticulatedObject::bounds() const {
  Aabb box = Aabb::empty();
  for (const Link& l : links) box.merge(l.aabb);
  return box;
}

std::vector<KinematicGraph::Edge> KinematicGraph::out_edges(int node) const {
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (e.parent == node) out.push_back(e);
  }
  return out;
}

std::optional<KinematicGraph::Edge> KinematicGraph::in_edge(int node) const {
  for (const Edge& e : edges) {
    if (e.child == node) return e;
  }
  return std::nullopt;
}

std::vector<int> KinematicGraph::subtree(int node) const {
  std::vector<int> order{node};
  for (size_t i = 0; i < order.size(); ++i) {
    for (const Edge& e : edges) {
      if (e.parent == order[i]) order.push_back(e.child);
    }
  }
  return order;
}

namespace {

std::string join_ids(const std::vector<int>& ids) {
  std::ostringstream os;
  for (size_t i = 0; i < ids.size(); ++i) os << (i ? ", " : "") << ids[i];
  return os.str();
}

}  // namespace

KinematicGraph build_graph(const ArticulatedObject& object) {
  if (object.links.empty()) raise(ErrorCode::kEmptyObject, "object has no links");

  KinematicGraph graph;
  std::set<int> ids;
  for (const Link& l : object.links) {
    if (!ids.insert(l.id).second) {
      raise(ErrorCode::kDanglingReference,
            "duplicate link id " + std::to_string(l.id));
    }
  }
  graph.nodes.assign(ids.begin(), ids.end());

  std::map<int, std::vector<int>> incoming;  // child -> joint ids
  for (const Joint& j : object.joints) {
    for (int end : {j.parent, j.child}) {
      if (!ids.count(end)) {
        raise(ErrorCode::kDanglingReference,
              "joint " + std::to_string(j.id) + " references missing link " +
                  std::to_string(end));
      }
    }
    if (j.parent == j.child) {
      raise(ErrorCode::kCycleDetected,
            "joint " + std::to_string(j.id) + " connects link " +
                std::to_string(j.child) + " to itself");
    }
    incoming[j.child].push_back(j.id);
    graph.edges.push_back({j.parent, j.child, j.id});
  }
  for (const auto& [child, joints] : incoming) {
    if (joints.size() > 1) {
      raise(ErrorCode::kMultipleParents,
            "link " + std::to_string(child) + " is the child of joints " +
                join_ids(joints));
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const auto& a, const auto& b) { return a.child < b.child; });

  std::vector<int> roots;
  for (int id : graph.nodes) {
    if (!incoming.count(id)) roots.push_back(id);
  }

  // With at most one parent per node, anything unreachable from a root sits
  // on (or hangs below) a directed cycle.
  std::set<int> reached(roots.begin(), roots.end());
  std::deque<int> queue(roots.begin(), roots.end());
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    for (const auto& e : graph.edges) {
      if (e.parent == n && reached.insert(e.child).second) {
        queue.push_back(e.child);
      }
    }
  }
  if (reached.size() != ids.size()) {
    std::vector<int> on_cycle;
    for (int id : graph.nodes) {
      if (!reached.count(id)) on_cycle.push_back(id);
    }
    raise(ErrorCode::kCycleDetected, "links on a cycle: " + join_ids(on_cycle));
  }
  if (roots.size() > 1) {
    raise(ErrorCode::kMultipleRoots, "root links: " + join_ids(roots));
  }
  graph.root = roots.front();
  return graph;
}

void validate(const ArticulatedObject& object) {
  for (const Link& l : object.links) {
    const std::string where = "link " + std::to_string(l.id);
    if (l.aabb.is_empty()) raise(ErrorCode::kInvalidArgument, where + " has an inverted box");
    if (l.mesh) {
      const Aabb tol_box = l.aabb.inflated(kMeshContainmentTol);
      for (const Vec3& v : l.mesh->vertices) {
        if (!tol_box.contains(v)) {
          raise(ErrorCode::kInvalidArgument, where + " mesh leaves its box");
        }
      }
    }
  }
  std::set<int> joint_ids;
  for (const Joint& j : object.joints) {
    const std::string where = "joint " + std::to_string(j.id);
    if (!joint_ids.insert(j.id).second) {
      raise(ErrorCode::kInvalidJoint, "duplicate " + where);
    }
    if (std::abs(j.axis_dir.norm() - 1.0) > kUnitAxisTol) {
      raise(ErrorCode::kInvalidJoint, where + " axis is not unit length");
    }
    if (j.kind == JointKind::kFixed) continue;
    if (has_axis_origin(j.kind) != j.axis_origin.has_value()) {
      raise(ErrorCode::kInvalidJoint,
            where + (j.axis_origin ? " must not carry" : " requires") +
                " an axis origin");
    }
    if (has_limit(j.kind) != j.limit.has_value()) {
      raise(ErrorCode::kInvalidJoint,
            where + (j.limit ? " must not carry" : " requires") + " a limit");
    }
  }
  build_graph(object);
}

RigidTransform pose_joint(const Joint& joint, double q) {
  auto origin = [&]() -> const Vec3& {
    if (!joint.axis_origin) {
      raise(ErrorCode::kInvalidJoint,
            "joint " + std::to_string(joint.id) + " has no axis origin");
    }
    return *joint.axis_origin;
  };
  switch (joint.kind) {
    case JointKind::kRevolute:
    case JointKind::kContinuous:
      return RigidTransform::rotation_about(joint.axis_dir, origin(), q);
    case JointKind::kPrismatic: {
      RigidTransform tf;
      tf.translation = q * joint.axis_dir;
      return tf;
    }
    case JointKind::kScrew: {
      const double span = joint.limit ? std::abs(joint.limit->length()) : 0.0;
      const double angle = span > 0.0 ? 2.0 * kPi * q / span : 0.0;
      RigidTransform tf =
          RigidTransform::rotation_about(joint.axis_dir, origin(), angle);
      tf.translation += q * joint.axis_dir;
      return tf;
    }
    case JointKind::kFixed:
      break;
  }
  return RigidTransform::identity();
}

RigidTransform pose_part(const ArticulatedObject& object, int joint_id,
                         double q) {
  return pose_joint(object.joint(joint_id), q);
}

void compact_ids(ArticulatedObject& object) {
  std::sort(object.links.begin(), object.links.end(),
            [](const Link& a, const Link& b) { return a.id < b.id; });
  std::map<int, int> remap;
  for (size_t i = 0; i < object.links.size(); ++i) {
    remap[object.links[i].id] = static_cast<int>(i);
    object.links[i].id = static_cast<int>(i);
  }
  std::sort(object.joints.begin(), object.joints.end(),
            [](const Joint& a, const Joint& b) { return a.id < b.id; });
  for (size_t i = 0; i < object.joints.size(); ++i) {
    Joint& j = object.joints[i];
    j.id = static_cast<int>(i);
    if (auto it = remap.find(j.parent); it != remap.end()) j.parent = it->second;
    if (auto it = remap.find(j.child); it != remap.end()) j.child = it->second;
  }
}

ArticulatedObject merge_links(const ArticulatedObject& object, int keep,
                              int absorb) {
  auto connecting = std::find_if(
      object.joints.begin(), object.joints.end(), [&](const Joint& j) {
        return (j.parent == keep && j.child == absorb) ||
               (j.parent == absorb && j.child == keep);
      });
  if (keep == absorb || connecting == object.joints.end()) {
    raise(ErrorCode::kNotAdjacent, "links " + std::to_string(keep) + " and " +
                                       std::to_string(absorb) +
                                       " share no joint");
  }
  const int removed_joint = connecting->id;

  ArticulatedObject out;
  out.category = object.category;
  const Link& src = object.link(absorb);
  for (const Link& l : object.links) {
    if (l.id == absorb) continue;
    Link copy = l;
    if (l.id == keep && src.has_geometry()) {
      if (!copy.has_geometry()) {
        copy.aabb = src.aabb;
        copy.mesh = src.mesh;
      } else {
        if (copy.mesh || src.mesh) {
          TriangleMesh merged = copy.geometry();
          merged.append(src.geometry());
          copy.mesh = std::move(merged);
        }
        copy.aabb = copy.aabb.merged(src.aabb);
      }
    }
    out.links.push_back(std::move(copy));
  }
  for (const Joint& j : object.joints) {
    if (j.id == removed_joint) continue;
    Joint copy = j;
    if (copy.parent == absorb) copy.parent = keep;
    if (copy.child == absorb) copy.child = keep;
    out.joints.push_back(std::move(copy));
  }
  compact_ids(out);
  return out;
}

void apply_similarity(ArticulatedObject& object, const Mat3& rotation,
                      double scale, const Vec3& offset) {
  RigidTransform tf;
  tf.rotation = scale * rotation;
  tf.translation = offset;
  for (Link& l : object.links) {
    if (l.mesh) {
      l.mesh->transform_in_place(tf);
      l.sync_aabb_from_mesh();
    } else {
      l.aabb = l.aabb.transformed(tf);
    }
  }
  for (Joint& j : object.joints) {
    j.axis_dir = rotation * j.axis_dir;
    if (j.axis_origin) j.axis_origin = tf.apply(*j.axis_origin);
    if (j.limit && is_translational(j.kind)) {
      j.limit = Interval{j.limit->lo * scale, j.limit->hi * scale};
    }
  }
}

}  // namespace artkit
