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

#include "artkit/refine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "artkit/kernels.hpp"

namespace artkit {
namespace {

// Rest-pose overlap above this many floors is reported.
constexpr double kRestCollisionFactor = 5.0;
constexpr int kMaxBisections = 64;

double solid_volume(const Link& link) {
  if (link.mesh && !link.mesh->empty() && link.mesh->is_closed()) {
    return std::abs(link.mesh->signed_volume());
  }
  return link.aabb.volume();
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

}  // namespace

JointSweeper::JointSweeper(const ArticulatedObject& object, int joint_id,
                           const RefinerConfig& config, Warnings* warnings)
    : joint_(object.joint(joint_id)), config_(config) {
  if (!has_limit(joint_.kind) || !joint_.limit || !std::isfinite(joint_.limit->lo) ||
      !std::isfinite(joint_.limit->hi)) {
    raise(ErrorCode::kNoLimit,
          "joint " + std::to_string(joint_id) + " (" + std::string(to_string(joint_.kind)) +
              ") has no finite limit");
  }
  limit_ = {std::min(joint_.limit->lo, joint_.limit->hi),
            std::max(joint_.limit->lo, joint_.limit->hi)};

  const KinematicGraph graph = build_graph(object);
  const std::vector<int> subtree = graph.subtree(joint_.child);
  const std::set<int> moving_ids(subtree.begin(), subtree.end());

  TriangleMesh moving_mesh;
  std::vector<const Link*> static_links;
  for (const Link& l : object.links) {
    if (!l.has_geometry()) continue;
    if (!l.mesh || l.mesh->empty()) {
      warn(warnings, "link " + std::to_string(l.id) + " has no mesh; using its box as a proxy");
    }
    if (moving_ids.count(l.id)) {
      moving_mesh.append(l.geometry());
      child_volume_ += solid_volume(l);
    } else {
      static_links.push_back(&l);
    }
  }
  if (moving_mesh.empty() || !(child_volume_ > 0.0)) {
    raise(ErrorCode::kMissingGeometry,
          "joint " + std::to_string(joint_id) + " moves no geometry");
  }

  // Cubic voxels sized from the whole object; the grid only needs to cover
  // static geometry since overlap cannot happen anywhere else.
  const Aabb whole = object.bounds();
  const double spacing = whole.longest_extent() / config_.grid_resolution;
  if (!(spacing > 0.0) || config_.grid_resolution < 4) {
    raise(ErrorCode::kInvalidGrid, "cannot size the collision grid");
  }
  Aabb static_bounds = Aabb::empty();
  for (const Link* l : static_links) static_bounds.merge(l->aabb);
  GridSpec spec;
  spec.spacing = spacing;
  if (static_bounds.is_empty()) {
    spec.origin = whole.min;
    spec.dims = {1, 1, 1};
  } else {
    spec.origin = static_bounds.min - Vec3::Constant(spacing);
    for (int a = 0; a < 3; ++a) {
      spec.dims[a] =
          std::max(1, static_cast<int>(std::ceil(static_bounds.extent()[a] / spacing - 1e-9)) + 2);
    }
  }
  static_grid_ = VoxelGrid(spec);
  for (const Link* l : static_links) {
    static_grid_.merge(voxelize(l->geometry(), spec, config_.occupancy, warnings));
  }
  for (TriangleMesh& comp : connected_components(moving_mesh)) {
    const bool closed = comp.is_closed();
    moving_.push_back({std::move(comp), closed});
  }
}

double JointSweeper::volume_at(double q) const {
  const RigidTransform pose = pose_joint(joint_, q);
  VoxelGrid moved(static_grid_.spec());
  for (const Component& c : moving_) {
    kernels::FillOptions options;
    options.fill_interior = c.closed && config_.occupancy != Occupancy::kSurfaceOnly;
    options.mark_surface = !c.closed || config_.occupancy != Occupancy::kInteriorOnly;
    kernels::omp::voxelize_mesh(c.mesh.transformed(pose), options, moved);
  }
  return static_cast<double>(intersection_count(moved, static_grid_)) *
         static_grid_.spec().voxel_volume();
}

namespace {

SweepProfile profile_of(const JointSweeper& sweeper, int joint_id, const RefinerConfig& config) {
  const Interval lim = sweeper.limit();
  SweepProfile profile;
  profile.joint_id = joint_id;
  profile.child_volume = sweeper.child_volume();
  profile.step = lim.length() / (config.steps - 1);
  for (int s = 0; s < config.steps; ++s) {
    const double q = s + 1 == config.steps ? lim.hi : lim.lo + s * profile.step;
    profile.samples.push_back({q, sweeper.volume_at(q)});
  }
  profile.rest_q = std::clamp(0.0, lim.lo, lim.hi);
  auto rest = std::find_if(profile.samples.begin(), profile.samples.end(),
                           [&](const SweepSample& s) { return s.q == profile.rest_q; });
  profile.rest_volume =
      rest != profile.samples.end() ? rest->volume : sweeper.volume_at(profile.rest_q);
  return profile;
}

}  // namespace

SweepProfile sweep(const ArticulatedObject& object, int joint_id, const RefinerConfig& config,
                   Warnings* warnings) {
  if (config.steps < 2) raise(ErrorCode::kInvalidArgument, "sweep needs at least 2 steps");
  const JointSweeper sweeper(object, joint_id, config, warnings);
  return profile_of(sweeper, joint_id, config);
}

std::optional<ContactWindow> detect_contact(const SweepProfile& profile,
                                            const RefinerConfig& config,
                                            SweepDirection direction) {
  const auto& s = profile.samples;
  if (s.size() < 2) return std::nullopt;
  const double floor = profile.rest_volume + config.eps_v * profile.child_volume;
  const double jump = config.tau * profile.child_volume;
  const int n = static_cast<int>(s.size());
  if (direction == SweepDirection::kUp) {
    int start = 0;
    while (start + 1 < n && s[start + 1].q <= profile.rest_q) ++start;
    for (int i = start; i + 1 < n; ++i) {
      if (s[i + 1].volume - s[i].volume > jump && s[i + 1].volume > floor) {
        return ContactWindow{s[i].q, s[i + 1].q};
      }
    }
  } else {
    int start = n - 1;
    while (start > 0 && s[start - 1].q >= profile.rest_q) --start;
    for (int i = start; i > 0; --i) {
      if (s[i - 1].volume - s[i].volume > jump && s[i - 1].volume > floor) {
        return ContactWindow{s[i].q, s[i - 1].q};
      }
    }
  }
  return std::nullopt;
}

namespace {

// First sample past the rest pose whose overlap exceeds the floor; catches
// contacts that build up over several steps without a single spike.
std::optional<ContactWindow> first_floor_crossing(const SweepProfile& profile,
                                                  const RefinerConfig& config,
                                                  SweepDirection direction) {
  const auto& s = profile.samples;
  const double floor = profile.rest_volume + config.eps_v * profile.child_volume;
  const int n = static_cast<int>(s.size());
  if (direction == SweepDirection::kUp) {
    double prev = profile.rest_q;
    for (int i = 0; i < n; ++i) {
      if (s[i].q <= profile.rest_q) continue;
      if (s[i].volume > floor) return ContactWindow{prev, s[i].q};
      prev = s[i].q;
    }
  } else {
    double prev = profile.rest_q;
    for (int i = n - 1; i >= 0; --i) {
      if (s[i].q >= profile.rest_q) continue;
      if (s[i].volume > floor) return ContactWindow{prev, s[i].q};
      prev = s[i].q;
    }
  }
  return std::nullopt;
}

}  // namespace

RefinedLimit refine_limit(const ArticulatedObject& object, int joint_id,
                          const RefinerConfig& config) {
  if (config.steps < 3) raise(ErrorCode::kInvalidArgument, "refinement needs at least 3 steps");
  Warnings warnings;
  const JointSweeper sweeper(object, joint_id, config, &warnings);
  const Joint& joint = object.joint(joint_id);
  const Interval lim = sweeper.limit();
  const double tol = is_translational(joint.kind) ? config.trans_tolerance : config.rot_tolerance;

  const SweepProfile profile = profile_of(sweeper, joint_id, config);

  RefinedLimit result;
  result.joint_id = joint_id;
  result.original = *joint.limit;
  result.corrected = lim;
  result.diagnostics = std::move(warnings);
  const double floor_excess = config.eps_v * profile.child_volume;
  if (profile.rest_volume > kRestCollisionFactor * floor_excess) {
    result.diagnostics.push_back(
        fmt("rest pose q=%.6g already overlaps %.3g of the moving volume", profile.rest_q,
            profile.rest_volume / profile.child_volume));
  }
  const double floor = profile.rest_volume + floor_excess;

  for (SweepDirection dir : {SweepDirection::kUp, SweepDirection::kDown}) {
    // A spike is the expected signature, but overlap that creeps past the
    // floor earlier still bounds the collision-free range.
    std::optional<ContactWindow> window = detect_contact(profile, config, dir);
    const std::optional<ContactWindow> creep = first_floor_crossing(profile, config, dir);
    if (creep && (!window || std::abs(creep->contact_q - profile.rest_q) <
                                 std::abs(window->contact_q - profile.rest_q))) {
      result.diagnostics.push_back(
          fmt("gradual contact near q=%.6g without a volume spike", creep->contact_q));
      window = creep;
    }
    if (!window) continue;
    double free_q = window->free_q;
    double hit_q = window->contact_q;
    for (int it = 0; it < kMaxBisections && std::abs(hit_q - free_q) > tol; ++it) {
      const double mid = 0.5 * (free_q + hit_q);
      (sweeper.volume_at(mid) > floor ? hit_q : free_q) = mid;
    }
    result.contact_found = true;
    if (dir == SweepDirection::kUp) {
      result.contact_hi = hit_q;
      result.corrected.hi = std::clamp(hit_q - tol, profile.rest_q, lim.hi);
    } else {
      result.contact_lo = hit_q;
      result.corrected.lo = std::clamp(hit_q + tol, lim.lo, profile.rest_q);
    }
  }
  // Keep the caller's orientation for reversed input intervals.
  if (joint.limit->lo > joint.limit->hi) {
    std::swap(result.corrected.lo, result.corrected.hi);
  }
  return result;
}

RefineResult refine_all(const ArticulatedObject& object, const RefinerConfig& config) {
  RefineResult out;
  out.object = object;
  std::vector<int> targets;
  for (const Joint& j : object.joints) {
    if (has_limit(j.kind) && j.limit) targets.push_back(j.id);
  }
  std::vector<std::optional<RefinedLimit>> results(targets.size());
  std::vector<std::string> errors(targets.size());
  const int n = static_cast<int>(targets.size());
#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
  for (int i = 0; i < n; ++i) {
    try {
      results[i] = refine_limit(object, targets[i], config);
    } catch (const Error& e) {
      errors[i] = "joint " + std::to_string(targets[i]) + ": " + e.what();
    }
  }
  for (int i = 0; i < n; ++i) {
    if (results[i]) {
      out.object.find_joint(targets[i])->limit = results[i]->corrected;
      out.limits.push_back(std::move(*results[i]));
    } else {
      out.errors.push_back(errors[i]);
    }
  }
  return out;
}

}  // namespace artkit
