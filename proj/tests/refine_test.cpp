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


#include <gtest/gtest.h>

#include <cmath>

#include "artkit/refine.hpp"
#include "scenes.hpp"

namespace artkit {
namespace {

using testing::error_code;

SweepProfile synthetic(std::vector<double> volumes, double q0, double step, double rest_q) {
  SweepProfile p;
  p.step = step;
  p.child_volume = 1.0;
  p.rest_q = rest_q;
  for (size_t i = 0; i < volumes.size(); ++i) {
    p.samples.push_back({q0 + step * static_cast<double>(i), volumes[i]});
    if (std::abs(p.samples.back().q - rest_q) < 1e-12) p.rest_volume = volumes[i];
  }
  return p;
}

TEST(DetectContact, FirstSpikeAboveFloor) {
  const SweepProfile p = synthetic({0, 0, 0.01, 0.02, 0.3, 0.6, 0.9}, 0.0, 0.1, 0.0);
  const auto w = detect_contact(p);
  ASSERT_TRUE(w);
  EXPECT_DOUBLE_EQ(w->free_q, 0.3);
  EXPECT_DOUBLE_EQ(w->contact_q, 0.4);
}

TEST(DetectContact, SpikesBelowFloorIgnored) {
  // A 0.06 jump that stays under eps_v is not contact.
  RefinerConfig cfg;
  cfg.eps_v = 0.1;
  const SweepProfile p = synthetic({0, 0.06, 0.06, 0.06, 0.06}, 0.0, 0.1, 0.0);
  EXPECT_FALSE(detect_contact(p, cfg));
  EXPECT_FALSE(detect_contact(synthetic({0, 0, 0, 0}, 0.0, 0.1, 0.0)));
}

TEST(DetectContact, MeasuredFromRestOverlap) {
  // Parts already interpenetrating at rest: only growth beyond it counts.
  const SweepProfile p = synthetic({0.5, 0.5, 0.5, 0.52, 0.9}, 0.0, 0.1, 0.0);
  const auto w = detect_contact(p);
  ASSERT_TRUE(w);
  EXPECT_DOUBLE_EQ(w->contact_q, 0.4);
}

TEST(DetectContact, WalksDownFromRest) {
  // Samples over [-0.4, 0.4], rest at 0; spikes on both sides.
  const SweepProfile p = synthetic({0.9, 0.4, 0, 0, 0, 0, 0.2, 0.8, 0.9}, -0.4, 0.1, 0.0);
  const auto down = detect_contact(p, {}, SweepDirection::kDown);
  ASSERT_TRUE(down);
  EXPECT_NEAR(down->free_q, -0.2, 1e-12);
  EXPECT_NEAR(down->contact_q, -0.3, 1e-12);
  const auto up = detect_contact(p, {}, SweepDirection::kUp);
  ASSERT_TRUE(up);
  EXPECT_NEAR(up->free_q, 0.1, 1e-12);
  EXPECT_NEAR(up->contact_q, 0.2, 1e-12);
}

TEST(RefineLimit, HingedPanelStopsAtWall) {
  const testing::RefineScene s = testing::hinged_panel_scene(135.0);
  const RefinedLimit r = refine_limit(s.object, s.joint_id);
  ASSERT_TRUE(r.contact_found);
  EXPECT_NEAR(rad_to_deg(r.corrected.hi), 90.0, 0.5);
  EXPECT_EQ(r.corrected.lo, 0.0);
  EXPECT_LE(r.corrected.hi, r.original.hi);
}

TEST(RefineLimit, MirroredPanelCorrectsLowerEnd) {
  // Same geometry hinged about -z: the wall is met at q = -90 degrees.
  testing::RefineScene s = testing::hinged_panel_scene(0.0);
  Joint& j = s.object.joints[0];
  j.axis_dir = -Vec3::UnitZ();
  j.limit = Interval{deg_to_rad(-135.0), 0.0};
  const RefinedLimit r = refine_limit(s.object, s.joint_id);
  ASSERT_TRUE(r.contact_lo);
  EXPECT_NEAR(rad_to_deg(r.corrected.lo), -90.0, 0.5);
  EXPECT_EQ(r.corrected.hi, 0.0);
}

TEST(RefineLimit, DrawerStopsAtBackWall) {
  for (double depth : {0.3, 0.45}) {
    const testing::RefineScene s = testing::drawer_scene(depth, 1.5 * depth);
    const RefinerConfig cfg;
    const JointSweeper sweeper(s.object, s.joint_id, cfg);
    const RefinedLimit r = refine_limit(s.object, s.joint_id, cfg);
    ASSERT_TRUE(r.contact_found) << depth;
    EXPECT_NEAR(r.corrected.hi, depth, 2 * sweeper.grid().spacing) << depth;
  }
}

TEST(RefineLimit, CollisionFreeUnchanged) {
  // Panel swinging away from the wall.
  testing::RefineScene s = testing::hinged_panel_scene(0.0);
  s.object.joints[0].limit = Interval{deg_to_rad(-80.0), 0.0};
  const RefinedLimit r = refine_limit(s.object, s.joint_id);
  EXPECT_FALSE(r.contact_found);
  EXPECT_EQ(r.corrected, r.original);

  const testing::RefineScene d = testing::drawer_scene(0.4, 0.3);
  const RefinedLimit rd = refine_limit(d.object, d.joint_id);
  EXPECT_FALSE(rd.contact_found);
  EXPECT_EQ(rd.corrected, rd.original);
}

TEST(RefineLimit, Errors) {
  testing::RefineScene s = testing::hinged_panel_scene(135.0);
  s.object.joints[0].kind = JointKind::kContinuous;
  s.object.joints[0].limit.reset();
  EXPECT_EQ(error_code([&] { refine_limit(s.object, 0); }), ErrorCode::kNoLimit);

  testing::RefineScene empty = testing::hinged_panel_scene(135.0);
  empty.object.links[1].mesh.reset();
  empty.object.links[1].aabb = {Vec3::Zero(), Vec3::Zero()};
  EXPECT_EQ(error_code([&] { refine_limit(empty.object, 0); }), ErrorCode::kMissingGeometry);
  EXPECT_EQ(error_code([&] { refine_limit(s.object, 7); }), ErrorCode::kUnknownJoint);
}

TEST(RefineAll, MixedJointsAndIdempotence) {
  // The hinged panel plus a small free slider above the panel's sweep,
  // inside the same overall extent so the grid spacing is unchanged.
  testing::RefineScene s = testing::hinged_panel_scene(135.0);
  s.object.links.push_back(testing::box_link(2, {Vec3(0.2, 0.2, 0.7), Vec3(0.4, 0.4, 0.9)}));
  s.object.joints.push_back(testing::make_joint(1, JointKind::kPrismatic, 0, 2, Vec3::UnitX(),
                                                std::nullopt, Interval{0.0, 0.2}));
  const RefineResult first = refine_all(s.object);
  ASSERT_TRUE(first.errors.empty());
  ASSERT_EQ(first.limits.size(), 2u);
  EXPECT_TRUE(first.limits[0].contact_found);
  EXPECT_FALSE(first.limits[1].contact_found);
  EXPECT_NEAR(rad_to_deg(first.object.joint(0).limit->hi), 90.0, 0.5);
  EXPECT_EQ(*first.object.joint(1).limit, (Interval{0.0, 0.2}));

  const RefineResult second = refine_all(first.object);
  for (const RefinedLimit& r : second.limits) EXPECT_EQ(r.corrected, r.original);

  RefinerConfig serial;
  serial.parallel = false;
  const RefineResult again = refine_all(s.object, serial);
  for (size_t i = 0; i < again.limits.size(); ++i) {
    EXPECT_EQ(again.limits[i].corrected, first.limits[i].corrected);
  }
}

TEST(RefineAll, CorrectedWithinOriginal) {
  Rng rng(41);
  RefinerConfig cfg;
  cfg.grid_resolution = 16;
  cfg.steps = 8;
  for (int i = 0; i < 25; ++i) {
    const ArticulatedObject o = testing::random_object(rng, 4);
    const RefineResult r = refine_all(o, cfg);
    for (const RefinedLimit& l : r.limits) {
      ASSERT_GE(l.corrected.lo, l.original.lo);
      ASSERT_LE(l.corrected.hi, l.original.hi);
      ASSERT_LE(l.corrected.lo, l.corrected.hi);
      ASSERT_EQ(*r.object.joint(l.joint_id).limit, l.corrected);
    }
  }
}

}  // namespace
}  // namespace artkit
