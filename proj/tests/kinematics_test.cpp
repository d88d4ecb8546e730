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

#include <algorithm>
#include <numeric>
#include <functional>
#include <set>

#include "artkit/kinematics.hpp"
#include "scenes.hpp"

namespace artkit {
namespace {

using testing::box_link;
using testing::error_code;
using testing::make_joint;

ArticulatedObject chain(int n) {
  ArticulatedObject o;
  for (int i = 0; i < n; ++i) {
    o.links.push_back(box_link(i, {Vec3::Constant(i), Vec3::Constant(i + 1.0)}));
  }
  for (int i = 0; i + 1 < n; ++i) {
    o.joints.push_back(make_joint(i, JointKind::kRevolute, i, i + 1, Vec3::UnitZ(),
                                  Vec3::Constant(i + 1.0), Interval{0, 1}));
  }
  return o;
}

TEST(BuildGraph, MinimalChain) {
  const KinematicGraph g = build_graph(chain(2));
  EXPECT_EQ(g.root, 0);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].parent, 0);
  EXPECT_EQ(g.edges[0].child, 1);
}

TEST(BuildGraph, StarRootedAtSix) {
  const KinematicGraph g = build_graph(testing::cabinet_star());
  EXPECT_EQ(g.root, 6);
  EXPECT_EQ(g.out_edges(6).size(), 6u);
  for (int i = 0; i < 6; ++i) EXPECT_TRUE(g.out_edges(i).empty());
}

TEST(BuildGraph, Errors) {
  ArticulatedObject cyc = chain(3);
  cyc.joints.push_back(make_joint(2, JointKind::kRevolute, 2, 0, Vec3::UnitZ(), Vec3::Zero(),
                                  Interval{0, 1}));
  EXPECT_EQ(error_code([&] { build_graph(cyc); }), ErrorCode::kCycleDetected);

  ArticulatedObject two_roots = chain(2);
  two_roots.links.push_back(box_link(2, {Vec3::Zero(), Vec3::Ones()}));
  EXPECT_EQ(error_code([&] { build_graph(two_roots); }), ErrorCode::kMultipleRoots);

  ArticulatedObject dangling = chain(2);
  dangling.joints[0].child = 9;
  EXPECT_EQ(error_code([&] { build_graph(dangling); }), ErrorCode::kDanglingReference);

  ArticulatedObject two_parents = chain(3);
  two_parents.joints.push_back(make_joint(2, JointKind::kPrismatic, 0, 2, Vec3::UnitX(),
                                          std::nullopt, Interval{0, 1}));
  EXPECT_EQ(error_code([&] { build_graph(two_parents); }), ErrorCode::kMultipleParents);

  EXPECT_EQ(error_code([&] { build_graph(ArticulatedObject{}); }), ErrorCode::kEmptyObject);
}

TEST(BuildGraph, ErrorNamesOffendingIds) {
  ArticulatedObject dangling = chain(2);
  dangling.joints[0].child = 9;
  try {
    build_graph(dangling);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find('9'), std::string::npos) << e.what();
  }
}

TEST(BuildGraph, PermutationInvariant) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const ArticulatedObject o = testing::random_object(rng, 12);
    const int n = static_cast<int>(o.links.size());
    std::vector<int> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(relabel[i], relabel[rng.below(i + 1)]);
    ArticulatedObject p = o;
    for (Link& l : p.links) l.id = relabel[l.id];
    for (Joint& j : p.joints) {
      j.parent = relabel[j.parent];
      j.child = relabel[j.child];
    }
    std::reverse(p.links.begin(), p.links.end());
    std::reverse(p.joints.begin(), p.joints.end());

    const KinematicGraph a = build_graph(o);
    const KinematicGraph b = build_graph(p);
    EXPECT_EQ(relabel[a.root], b.root);
    std::set<std::pair<int, int>> ea;
    std::set<std::pair<int, int>> eb;
    for (const auto& e : a.edges) ea.insert({relabel[e.parent], relabel[e.child]});
    for (const auto& e : b.edges) eb.insert({e.parent, e.child});
    EXPECT_EQ(ea, eb);
  }
}

TEST(Validate, RejectsFieldViolations) {
  ArticulatedObject o = chain(2);
  o.joints[0].axis_dir = Vec3(1, 1, 0);
  EXPECT_EQ(error_code([&] { validate(o); }), ErrorCode::kInvalidJoint);

  o = chain(2);
  o.joints[0].kind = JointKind::kPrismatic;  // still carries an origin
  EXPECT_EQ(error_code([&] { validate(o); }), ErrorCode::kInvalidJoint);

  o = chain(2);
  o.joints[0].parent = 1;  // self loop
  EXPECT_EQ(error_code([&] { validate(o); }), ErrorCode::kCycleDetected);

  o = chain(2);
  o.links[1].aabb = {Vec3::Zero(), Vec3::Constant(0.5)};  // mesh sticks out
  EXPECT_ANY_THROW(validate(o));

  EXPECT_NO_THROW(validate(chain(4)));
  EXPECT_NO_THROW(validate(testing::cabinet_star()));
}

TEST(Validate, ContainmentTolerance) {
  ArticulatedObject o = chain(2);
  o.links[1].aabb = o.links[1].aabb.inflated(-0.5 * kMeshContainmentTol);
  EXPECT_NO_THROW(validate(o));
  o.links[1].aabb = o.links[1].aabb.inflated(-2 * kMeshContainmentTol);
  EXPECT_ANY_THROW(validate(o));
}

TEST(PosePart, CanonicalRotation) {
  const Joint j = make_joint(0, JointKind::kRevolute, 0, 1, Vec3::UnitY(), Vec3::Zero(),
                             Interval{0, kPi});
  const RigidTransform t = pose_joint(j, kPi / 2);
  EXPECT_TRUE(t.apply(Vec3::UnitX()).isApprox(Vec3(0, 0, -1), 1e-12));
  EXPECT_LT(t.translation.norm(), 1e-12);
}

TEST(PosePart, PrismaticTranslation) {
  const Joint j = make_joint(0, JointKind::kPrismatic, 0, 1, Vec3::UnitZ(), std::nullopt,
                             Interval{0, 0.3717});
  const RigidTransform t = pose_joint(j, 0.3717);
  EXPECT_TRUE(t.rotation.isIdentity(0));
  EXPECT_TRUE(t.translation.isApprox(Vec3(0, 0, 0.3717), 1e-15));
}

TEST(PosePart, ScrewTurnsOnceOverItsSpan) {
  const Joint j = make_joint(0, JointKind::kScrew, 0, 1, Vec3::UnitZ(), Vec3(1, 0, 0),
                             Interval{0.0, 0.2});
  const RigidTransform half = pose_joint(j, 0.1);
  // Half the span: half a turn about the line x = 1, plus 0.1 up.
  EXPECT_TRUE(half.apply(Vec3::Zero()).isApprox(Vec3(2, 0, 0.1), 1e-12));
  const RigidTransform full = pose_joint(j, 0.2);
  EXPECT_TRUE(full.apply(Vec3(0.5, 0.5, 0)).isApprox(Vec3(0.5, 0.5, 0.2), 1e-12));
}

TEST(PosePart, ZeroIsIdentityForEveryKind) {
  for (JointKind k : {JointKind::kRevolute, JointKind::kContinuous, JointKind::kPrismatic,
                      JointKind::kScrew, JointKind::kFixed}) {
    Joint j = make_joint(0, k, 0, 1, Vec3(1, 2, 3), Vec3(0.3, -0.2, 0.1), Interval{-1, 1});
    const RigidTransform t = pose_joint(j, 0.0);
    EXPECT_TRUE(t.rotation.isIdentity(1e-15)) << to_string(k);
    EXPECT_LT(t.translation.norm(), 1e-15) << to_string(k);
  }
  const RigidTransform fixed =
      pose_joint(make_joint(0, JointKind::kFixed, 0, 1, Vec3::UnitX()), 5.0);
  EXPECT_TRUE(fixed.rotation.isIdentity(0));
}

TEST(PosePart, UnknownJoint) {
  EXPECT_EQ(error_code([&] { pose_part(chain(2), 7, 0.0); }), ErrorCode::kUnknownJoint);
}

TEST(PosePart, RevolutePreservesDistancesAndComposes) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 axis = testing::random_unit(rng);
    const Vec3 origin(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Joint j = make_joint(0, JointKind::kRevolute, 0, 1, axis, origin, Interval{-7, 7});
    const double a = rng.uniform(-3, 3);
    const double b = rng.uniform(-3, 3);
    const Vec3 p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec3 q(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const RigidTransform ta = pose_joint(j, a);
    EXPECT_NEAR((ta.apply(p) - ta.apply(q)).norm(), (p - q).norm(), 1e-9);
    const RigidTransform tab = pose_joint(j, b) * ta;
    EXPECT_TRUE(tab.apply(p).isApprox(pose_joint(j, a + b).apply(p), 1e-9));
    // Points on the axis stay put.
    EXPECT_TRUE(ta.apply(origin + 0.7 * axis).isApprox(origin + 0.7 * axis, 1e-9));
  }
}

TEST(MergeLinks, AdjacentBoxes) {
  ArticulatedObject o;
  o.links.push_back(box_link(0, {Vec3::Zero(), Vec3::Ones()}));
  o.links.push_back(box_link(1, {Vec3(1, 0, 0), Vec3(2, 1, 1)}));
  o.joints.push_back(make_joint(0, JointKind::kFixed, 0, 1, Vec3::UnitX()));
  const ArticulatedObject m = merge_links(o, 0, 1);
  ASSERT_EQ(m.links.size(), 1u);
  EXPECT_EQ(m.links[0].aabb, (Aabb{Vec3::Zero(), Vec3(2, 1, 1)}));
  EXPECT_TRUE(m.joints.empty());
}

TEST(MergeLinks, RepointsAndCompacts) {
  // 0 -> 1 -> 2, absorb 1 into 0: the 1->2 joint now starts at 0 and the
  // old link 2 becomes link 1.
  const ArticulatedObject m = merge_links(chain(3), 0, 1);
  ASSERT_EQ(m.links.size(), 2u);
  ASSERT_EQ(m.joints.size(), 1u);
  EXPECT_EQ(m.links[0].id, 0);
  EXPECT_EQ(m.links[1].id, 1);
  EXPECT_EQ(m.joints[0].id, 0);
  EXPECT_EQ(m.joints[0].parent, 0);
  EXPECT_EQ(m.joints[0].child, 1);
  EXPECT_NO_THROW(validate(m));
}

TEST(MergeLinks, NotAdjacent) {
  EXPECT_EQ(error_code([&] { merge_links(chain(3), 0, 2); }), ErrorCode::kNotAdjacent);
}

TEST(MergeLinks, StarLeafDropsOneJoint) {
  const ArticulatedObject star = testing::cabinet_star();
  const ArticulatedObject m = merge_links(star, 6, 2);
  EXPECT_EQ(m.joints.size(), star.joints.size() - 1);
  EXPECT_EQ(m.links.size(), star.links.size() - 1);
}

TEST(MergeLinks, RandomTreesStayTrees) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const ArticulatedObject o = testing::random_object(rng, 10);
    if (o.joints.empty()) continue;
    const Joint& j = o.joints[rng.below(o.joints.size())];
    const ArticulatedObject m = merge_links(o, j.parent, j.child);
    EXPECT_EQ(m.links.size() + 1, o.links.size());
    EXPECT_EQ(m.joints.size() + 1, o.joints.size());
    EXPECT_NO_THROW(build_graph(m));
    EXPECT_NO_THROW(validate(m));
  }
}

TEST(ApplySimilarity, ScalesTranslationalLimitsOnly) {
  ArticulatedObject o = chain(2);
  o.joints.push_back(make_joint(1, JointKind::kPrismatic, 0, 1, Vec3::UnitX(), std::nullopt,
                                Interval{0, 1}));
  o.joints.pop_back();
  o.joints[0].kind = JointKind::kRevolute;
  ArticulatedObject s = o;
  Mat3 r = Eigen::AngleAxisd(kPi / 2, Vec3::UnitY()).toRotationMatrix();
  apply_similarity(s, r, 2.0, Vec3(1, 0, 0));
  EXPECT_EQ(s.joints[0].limit, o.joints[0].limit);
  EXPECT_TRUE(s.joints[0].axis_dir.isApprox(r * o.joints[0].axis_dir, 1e-12));
  EXPECT_TRUE(s.joints[0].axis_origin->isApprox(2.0 * (r * *o.joints[0].axis_origin) +
                                                    Vec3(1, 0, 0),
                                                1e-12));

  ArticulatedObject p = o;
  p.joints[0] = make_joint(0, JointKind::kPrismatic, 0, 1, Vec3::UnitX(), std::nullopt,
                           Interval{0, 1});
  apply_similarity(p, Mat3::Identity(), 0.5, Vec3::Zero());
  EXPECT_EQ(p.joints[0].limit, (Interval{0, 0.5}));
}

}  // namespace
}  // namespace artkit
