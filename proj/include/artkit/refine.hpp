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

// Joint-limit correction by collision sweep.
//
// The child subtree of a joint is moved through its limit and voxelized
// against everything else. Contact is the first step, walking outward from
// the rest pose, where the overlap volume jumps; the contact value is then
// bisected and the limit end pulled back to the collision-free side.

#ifndef ARTKIT_REFINE_HPP_
#define ARTKIT_REFINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "artkit/geometry.hpp"
#include "artkit/kinematics.hpp"

namespace artkit {

struct RefinerConfig {
  int steps = 32;
  int grid_resolution = kDefaultGridResolution;
  /// Spike threshold: overlap gained in one coarse step, as a fraction of
  /// the moving volume.
  double tau = 0.05;
  /// Collision floor as a fraction of the moving volume.
  double eps_v = 0.01;
  double rot_tolerance = 0.25 * kPi / 180.0;
  double trans_tolerance = 0.001;
  /// Interior-only occupancy avoids the half-voxel surface shell that would
  /// report face-on contacts early.
  Occupancy occupancy = Occupancy::kInteriorOnly;
  /// Refine joints concurrently in refine_all.
  bool parallel = true;
};

struct SweepSample {
  double q;
  double volume;
};

struct SweepProfile {
  int joint_id = 0;
  std::vector<SweepSample> samples;
  double step = 0.0;
  /// Rest pose: 0 clamped into the limit, and its overlap volume.
  double rest_q = 0.0;
  double rest_volume = 0.0;
  /// Volume of the moving subtree.
  double child_volume = 0.0;
};

/// Coarse bracket around a contact: `free_q` is the last sample on the rest
/// side, `contact_q` the first colliding one.
struct ContactWindow {
  double free_q;
  double contact_q;
};

enum class SweepDirection { kUp, kDown };

struct RefinedLimit {
  int joint_id = 0;
  Interval original;
  Interval corrected;
  bool contact_found = false;
  std::optional<double> contact_lo;
  std::optional<double> contact_hi;
  std::vector<std::string> diagnostics;
};

/// Precomputed static occupancy and moving geometry for one joint. Each
/// instance owns its scratch state; the static grid is read-only after
/// construction.
class JointSweeper {
 public:
  /// Raises NoLimit for joints without a finite limit, MissingGeometry when
  /// the moving subtree has no geometry at all.
  JointSweeper(const ArticulatedObject& object, int joint_id,
               const RefinerConfig& config, Warnings* warnings = nullptr);

  double volume_at(double q) const;
  double child_volume() const { return child_volume_; }
  const Interval& limit() const { return limit_; }
  const GridSpec& grid() const { return static_grid_.spec(); }

 private:
  struct Component {
    TriangleMesh mesh;
    bool closed;
  };

  Joint joint_;
  Interval limit_;
  RefinerConfig config_;
  VoxelGrid static_grid_;
  std::vector<Component> moving_;
  double child_volume_ = 0.0;
};

SweepProfile sweep(const ArticulatedObject& object, int joint_id,
                   const RefinerConfig& config = {}, Warnings* warnings = nullptr);

/// First window, walking from the rest pose in `direction`, where the
/// volume gains more than tau * child volume in one step and ends above the
/// floor eps_v * child volume (measured above the rest-pose overlap).
std::optional<ContactWindow> detect_contact(const SweepProfile& profile,
                                            const RefinerConfig& config = {},
                                            SweepDirection direction = SweepDirection::kUp);

RefinedLimit refine_limit(const ArticulatedObject& object, int joint_id,
                          const RefinerConfig& config = {});

struct RefineResult {
  ArticulatedObject object;
  std::vector<RefinedLimit> limits;
  /// One entry per joint that could not be refined.
  std::vector<std::string> errors;
};

/// Refines every limited joint with all other joints at rest. Joints that
/// fail (for example for missing geometry) keep their limits and are
/// reported in `errors`.
RefineResult refine_all(const ArticulatedObject& object, const RefinerConfig& config = {});

}  // namespace artkit

#endif  // ARTKIT_REFINE_HPP_
