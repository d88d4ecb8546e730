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

#include "artkit/urdf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace artkit {
namespace {

namespace pt = boost::property_tree;

constexpr double kScrewAxisTolRad = 1e-3;
constexpr double kMasslessVolume = 1e-9;

std::string attr(const pt::ptree& node, const std::string& name,
                 const std::string& fallback = "") {
  return node.get<std::string>("<xmlattr>." + name, fallback);
}

Vec3 parse_vec3(const std::string& text, const std::string& context) {
  std::istringstream in(text);
  Vec3 v;
  if (!(in >> v.x() >> v.y() >> v.z())) {
    raise(ErrorCode::kXmlMalformed, context + ": expected three numbers, got '" +
                                        text + "'");
  }
  return v;
}

double parse_double(const std::string& text, const std::string& context) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    return v;
  } catch (const std::exception&) {
    raise(ErrorCode::kXmlMalformed,
          context + ": expected a number, got '" + text + "'");
  }
}

RigidTransform parse_origin(const pt::ptree& parent, const std::string& context) {
  auto origin = parent.get_child_optional("origin");
  if (!origin) return RigidTransform::identity();
  const Vec3 xyz = parse_vec3(attr(*origin, "xyz", "0 0 0"), context + " origin xyz");
  const Vec3 rpy = parse_vec3(attr(*origin, "rpy", "0 0 0"), context + " origin rpy");
  return RigidTransform::from_xyz_rpy(xyz, rpy);
}

bool is_meta(const std::string& tag) {
  return tag == "<xmlattr>" || tag == "<xmlcomment>" || tag == "<xmltext>";
}

RawGeometry parse_geometry_block(const pt::ptree& node, const std::string& context,
                                 std::vector<std::string>& warnings,
                                 bool* usable) {
  RawGeometry geom;
  geom.origin = parse_origin(node, context);
  *usable = false;
  auto geometry = node.get_child_optional("geometry");
  if (!geometry) return geom;
  for (const auto& [tag, shape] : *geometry) {
    if (is_meta(tag)) continue;
    if (tag == "mesh") {
      geom.mesh_filename = attr(shape, "filename");
      const std::string scale = attr(shape, "scale");
      if (!scale.empty()) geom.mesh_scale = parse_vec3(scale, context + " mesh scale");
      *usable = true;
    } else if (tag == "box") {
      geom.box_size = parse_vec3(attr(shape, "size"), context + " box size");
      *usable = true;
    } else {
      warnings.push_back(context + ": unsupported geometry <" + tag + "> ignored");
    }
  }
  return geom;
}

RawLink parse_link(const pt::ptree& node, std::vector<std::string>& warnings) {
  RawLink link;
  link.name = attr(node, "name");
  const std::string context = "link '" + link.name + "'";
  for (const auto& [tag, child] : node) {
    if (is_meta(tag)) continue;
    if (tag == "visual" || tag == "collision") {
      bool usable = false;
      RawGeometry g = parse_geometry_block(child, context, warnings, &usable);
      if (usable) (tag == "visual" ? link.visuals : link.collisions).push_back(g);
    } else {
      warnings.push_back(context + ": element <" + tag + "> ignored");
    }
  }
  return link;
}

RawJoint parse_joint(const pt::ptree& node, std::vector<std::string>& warnings) {
  RawJoint joint;
  joint.name = attr(node, "name");
  joint.type = attr(node, "type");
  const std::string context = "joint '" + joint.name + "'";
  if (joint.type != "revolute" && joint.type != "continuous" &&
      joint.type != "prismatic" && joint.type != "fixed") {
    raise(ErrorCode::kUnsupportedJointType,
          context + " has unsupported type '" + joint.type + "'");
  }
  for (const auto& [tag, child] : node) {
    if (is_meta(tag)) continue;
    if (tag == "parent") {
      joint.parent = attr(child, "link");
    } else if (tag == "child") {
      joint.child = attr(child, "link");
    } else if (tag == "origin") {
      joint.origin = parse_origin(node, context);
    } else if (tag == "axis") {
      Vec3 axis = parse_vec3(attr(child, "xyz", "1 0 0"), context + " axis");
      if (!(axis.norm() > 0.0)) {
        raise(ErrorCode::kInvalidJoint, context + " has a zero axis");
      }
      joint.axis = axis.normalized();
    } else if (tag == "limit") {
      joint.limit = Interval{
          parse_double(attr(child, "lower", "0"), context + " limit lower"),
          parse_double(attr(child, "upper", "0"), context + " limit upper")};
    } else {
      warnings.push_back(context + ": element <" + tag + "> ignored");
    }
  }
  return joint;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);  // no "-0"
  return buf;
}

std::string fmt(const Vec3& v) { return fmt(v.x()) + " " + fmt(v.y()) + " " + fmt(v.z()); }

bool is_massless(const Link& l) {
  if (l.mesh && !l.mesh->empty()) return std::abs(l.mesh->signed_volume()) < kMasslessVolume;
  return l.aabb.volume() < kMasslessVolume;
}

bool revolute_family(JointKind k) {
  return k == JointKind::kRevolute || k == JointKind::kContinuous;
}

// Finds one fusable revolute/prismatic pair; returns false when none is left.
bool fuse_one_screw(ArticulatedObject& object) {
  for (const Joint& first : object.joints) {
    const bool first_rot = revolute_family(first.kind);
    if (!first_rot && first.kind != JointKind::kPrismatic) continue;
    const int helper = first.child;
    std::vector<const Joint*> outgoing;
    bool helper_is_child_elsewhere = false;
    for (const Joint& j : object.joints) {
      if (j.parent == helper) outgoing.push_back(&j);
      if (j.child == helper && j.id != first.id) helper_is_child_elsewhere = true;
    }
    if (outgoing.size() != 1 || helper_is_child_elsewhere) continue;
    const Joint& second = *outgoing.front();
    const bool pair_ok = first_rot ? second.kind == JointKind::kPrismatic
                                   : revolute_family(second.kind);
    if (!pair_ok) continue;
    const double cosang = std::clamp(first.axis_dir.dot(second.axis_dir), -1.0, 1.0);
    if (std::acos(cosang) > kScrewAxisTolRad) continue;
    const Link* helper_link = object.find_link(helper);
    if (helper_link == nullptr || !is_massless(*helper_link)) continue;

    const Joint& rot = first_rot ? first : second;
    const Joint& trans = first_rot ? second : first;
    if (!trans.limit || !rot.axis_origin) continue;

    Joint screw;
    screw.id = first.id;
    screw.name = rot.name;
    screw.kind = JointKind::kScrew;
    screw.parent = first.parent;
    screw.child = second.child;
    screw.axis_dir = rot.axis_dir;
    screw.axis_origin = rot.axis_origin;
    screw.limit = trans.limit;

    const int drop_joint = second.id;
    std::vector<Joint> joints;
    for (const Joint& j : object.joints) {
      if (j.id == drop_joint) continue;
      joints.push_back(j.id == screw.id ? screw : j);
    }
    object.joints = std::move(joints);
    object.links.erase(std::remove_if(object.links.begin(), object.links.end(),
                                      [&](const Link& l) { return l.id == helper; }),
                       object.links.end());
    compact_ids(object);
    return true;
  }
  return false;
}

}  // namespace

RawUrdfModel parse_urdf(const std::string& xml_text, MeshResolver mesh_resolver) {
  pt::ptree tree;
  std::istringstream in(xml_text);
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    raise(ErrorCode::kXmlMalformed,
          "line " + std::to_string(e.line()) + ": " + e.message());
  }
  auto robot = tree.get_child_optional("robot");
  if (!robot) raise(ErrorCode::kXmlMalformed, "missing <robot> root element");

  RawUrdfModel model;
  model.name = attr(*robot, "name");
  model.mesh_resolver = std::move(mesh_resolver);
  for (const auto& [tag, node] : *robot) {
    if (is_meta(tag)) continue;
    if (tag == "link") {
      model.links.push_back(parse_link(node, model.warnings));
    } else if (tag == "joint") {
      model.joints.push_back(parse_joint(node, model.warnings));
    } else {
      model.warnings.push_back("element <" + tag + "> ignored");
    }
  }

  std::set<std::string> names;
  for (const RawLink& l : model.links) {
    if (!names.insert(l.name).second) {
      raise(ErrorCode::kXmlMalformed, "duplicate link name '" + l.name + "'");
    }
  }
  for (const RawJoint& j : model.joints) {
    for (const std::string& end : {j.parent, j.child}) {
      if (!names.count(end)) {
        raise(ErrorCode::kUnresolvedLinkName,
              "joint '" + j.name + "' references unknown link '" + end + "'");
      }
    }
  }
  return model;
}

ArticulatedObject globalize(const RawUrdfModel& model, Warnings* warnings) {
  std::map<std::string, int> link_index;
  for (size_t i = 0; i < model.links.size(); ++i) {
    link_index[model.links[i].name] = static_cast<int>(i);
  }

  // World pose of every link frame at zero configuration.
  std::vector<std::optional<RigidTransform>> world(model.links.size());
  std::vector<int> parent_joint(model.links.size(), -1);
  for (size_t j = 0; j < model.joints.size(); ++j) {
    const int c = link_index.at(model.joints[j].child);
    if (parent_joint[c] < 0) parent_joint[c] = static_cast<int>(j);
  }
  for (size_t i = 0; i < model.links.size(); ++i) {
    if (parent_joint[i] < 0) world[i] = RigidTransform::identity();
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (size_t i = 0; i < model.links.size(); ++i) {
      if (world[i] || parent_joint[i] < 0) continue;
      const RawJoint& j = model.joints[parent_joint[i]];
      const int p = link_index.at(j.parent);
      if (!world[p]) continue;
      world[i] = *world[p] * j.origin;
      progress = true;
    }
  }

  ArticulatedObject object;
  for (size_t i = 0; i < model.links.size(); ++i) {
    const RawLink& raw = model.links[i];
    // Links left unposed sit on a cycle; build_graph reports it below.
    const RigidTransform frame = world[i].value_or(RigidTransform::identity());
    Link link;
    link.id = static_cast<int>(i);
    link.name = raw.name;
    const auto& geoms = raw.visuals.empty() ? raw.collisions : raw.visuals;
    TriangleMesh mesh;
    Aabb box_union = Aabb::empty();
    bool any_mesh = false;
    for (const RawGeometry& g : geoms) {
      const RigidTransform tf = frame * g.origin;
      if (g.box_size) {
        const Aabb local{-0.5 * *g.box_size, 0.5 * *g.box_size};
        box_union.merge(local.transformed(tf));
        mesh.append(TriangleMesh::box(local).transformed(tf));
      } else if (g.mesh_filename) {
        if (!model.mesh_resolver) {
          warn(warnings, "link '" + raw.name + "': no mesh resolver for '" +
                             *g.mesh_filename + "'");
          continue;
        }
        TriangleMesh part = model.mesh_resolver(*g.mesh_filename);
        for (Vec3& v : part.vertices) v = v.cwiseProduct(g.mesh_scale);
        part.transform_in_place(tf);
        mesh.append(part);
        any_mesh = true;
      }
    }
    if (any_mesh) {
      link.mesh = std::move(mesh);
      link.sync_aabb_from_mesh();
    } else if (!box_union.is_empty()) {
      link.aabb = box_union;
    } else {
      link.aabb = Aabb{frame.translation, frame.translation};
    }
    object.links.push_back(std::move(link));
  }

  for (size_t idx = 0; idx < model.joints.size(); ++idx) {
    const RawJoint& raw = model.joints[idx];
    Joint joint;
    joint.id = static_cast<int>(idx);
    joint.name = raw.name;
    joint.parent = link_index.at(raw.parent);
    joint.child = link_index.at(raw.child);
    const RigidTransform frame =
        world[joint.child].value_or(RigidTransform::identity());
    joint.axis_dir = (frame.rotation * raw.axis).normalized();
    if (raw.type == "revolute") {
      if (raw.limit) {
        joint.kind = JointKind::kRevolute;
        joint.limit = raw.limit;
      } else {
        joint.kind = JointKind::kContinuous;
      }
    } else if (raw.type == "continuous") {
      joint.kind = JointKind::kContinuous;
    } else if (raw.type == "prismatic") {
      joint.kind = JointKind::kPrismatic;
      joint.limit = raw.limit.value_or(Interval{0.0, 0.0});
      if (!raw.limit) warn(warnings, "prismatic joint '" + raw.name + "' has no limit");
    } else {
      joint.kind = JointKind::kFixed;
    }
    if (has_axis_origin(joint.kind)) joint.axis_origin = frame.translation;
    object.joints.push_back(std::move(joint));
  }
  validate(object);
  return object;
}

ArticulatedObject simplify(const ArticulatedObject& object) {
  ArticulatedObject out = object;
  for (;;) {
    auto fixed = std::find_if(out.joints.begin(), out.joints.end(), [](const Joint& j) {
      return j.kind == JointKind::kFixed;
    });
    if (fixed == out.joints.end()) break;
    out = merge_links(out, fixed->parent, fixed->child);
  }
  while (fuse_one_screw(out)) {
  }
  return out;
}

std::pair<ArticulatedObject, NormalizationTransform> normalize(
    const ArticulatedObject& object) {
  Aabb bounds = Aabb::empty();
  for (const Link& l : object.links) {
    if (l.has_geometry()) bounds.merge(l.aabb);
  }
  if (bounds.is_empty()) bounds = object.bounds();
  const double longest = bounds.is_empty() ? 0.0 : bounds.longest_extent();
  if (!(longest > 0.0) || !std::isfinite(longest)) {
    raise(ErrorCode::kDegenerateExtent, "object has zero extent");
  }
  NormalizationTransform tf;
  tf.scale = 2.0 * kNormalizedHalfExtent / longest;
  tf.offset = -tf.scale * bounds.center();
  ArticulatedObject out = object;
  apply_similarity(out, Mat3::Identity(), tf.scale, tf.offset);
  return {std::move(out), tf};
}

std::string emit_urdf(const ArticulatedObject& object, const MeshWriter& mesh_writer,
                      const std::string& robot_name) {
  const KinematicGraph graph = build_graph(object);

  // Link frame positions: joint origins where a joint has one, otherwise the
  // parent's frame.
  std::map<int, Vec3> frame;
  frame[graph.root] = Vec3::Zero();
  for (int node : graph.subtree(graph.root)) {
    for (const auto& e : graph.out_edges(node)) {
      const Joint& j = object.joint(e.joint);
      frame[e.child] = j.axis_origin ? *j.axis_origin : frame.at(node);
    }
  }

  std::map<int, std::string> link_name;
  std::set<std::string> used;
  for (const Link& l : object.links) {
    std::string name = l.name.empty() ? "link_" + std::to_string(l.id) : l.name;
    if (!used.insert(name).second) {
      name += "_" + std::to_string(l.id);
      used.insert(name);
    }
    link_name[l.id] = name;
  }

  std::ostringstream xml;
  xml << "<?xml version=\"1.0\"?>\n<robot name=\"" << robot_name << "\">\n";
  for (const Link& l : object.links) {
    const Vec3& f = frame.at(l.id);
    xml << "  <link name=\"" << link_name[l.id] << "\">\n";
    if (l.mesh && !l.mesh->empty() && mesh_writer) {
      const std::string file = mesh_writer(l);
      xml << "    <visual>\n      <origin xyz=\"" << fmt(Vec3(-f))
          << "\" rpy=\"0 0 0\"/>\n      <geometry>\n        <mesh filename=\"" << file
          << "\"/>\n      </geometry>\n    </visual>\n";
    } else if (l.has_geometry()) {
      xml << "    <visual>\n      <origin xyz=\"" << fmt(Vec3(l.aabb.center() - f))
          << "\" rpy=\"0 0 0\"/>\n      <geometry>\n        <box size=\""
          << fmt(l.aabb.extent()) << "\"/>\n      </geometry>\n    </visual>\n";
    }
    xml << "  </link>\n";
  }

  auto write_joint = [&](const std::string& name, const char* type,
                         const std::string& parent, const std::string& child,
                         const Vec3& offset, const Vec3& axis,
                         const std::optional<Interval>& limit) {
    xml << "  <joint name=\"" << name << "\" type=\"" << type << "\">\n"
        << "    <parent link=\"" << parent << "\"/>\n"
        << "    <child link=\"" << child << "\"/>\n"
        << "    <origin xyz=\"" << fmt(offset) << "\" rpy=\"0 0 0\"/>\n";
    if (std::string_view(type) != "fixed") {
      xml << "    <axis xyz=\"" << fmt(axis) << "\"/>\n";
    }
    if (limit) {
      xml << "    <limit lower=\"" << fmt(limit->lo) << "\" upper=\"" << fmt(limit->hi)
          << "\" effort=\"1\" velocity=\"1\"/>\n";
    }
    xml << "  </joint>\n";
  };

  std::vector<std::string> helper_links;
  for (const Joint& j : object.joints) {
    const std::string name = j.name.empty() ? "joint_" + std::to_string(j.id) : j.name;
    const Vec3 offset = frame.at(j.child) - frame.at(j.parent);
    switch (j.kind) {
      case JointKind::kRevolute:
        write_joint(name, "revolute", link_name[j.parent], link_name[j.child], offset,
                    j.axis_dir, j.limit);
        break;
      case JointKind::kContinuous:
        write_joint(name, "continuous", link_name[j.parent], link_name[j.child],
                    offset, j.axis_dir, std::nullopt);
        break;
      case JointKind::kPrismatic:
        write_joint(name, "prismatic", link_name[j.parent], link_name[j.child],
                    offset, j.axis_dir, j.limit);
        break;
      case JointKind::kFixed:
        write_joint(name, "fixed", link_name[j.parent], link_name[j.child], offset,
                    j.axis_dir, std::nullopt);
        break;
      case JointKind::kScrew: {
        const std::string helper = name + "_screw_helper";
        helper_links.push_back(helper);
        const Interval lim = j.limit.value_or(Interval{});
        const double span = std::abs(lim.length());
        const Interval turn = span > 0.0
                                  ? Interval{2.0 * kPi * lim.lo / span, 2.0 * kPi * lim.hi / span}
                                  : Interval{0.0, 0.0};
        xml << "  <!-- screw joint '" << name << "' written as revolute + prismatic"
            << " through link '" << helper << "' -->\n";
        write_joint(name, "revolute", link_name[j.parent], helper, offset, j.axis_dir,
                    turn);
        write_joint(name + "_translation", "prismatic", helper, link_name[j.child],
                    Vec3::Zero(), j.axis_dir, lim);
        break;
      }
    }
  }
  for (const std::string& helper : helper_links) {
    xml << "  <link name=\"" << helper << "\"/>\n";
  }
  xml << "</robot>\n";
  return xml.str();
}

}  // namespace artkit
