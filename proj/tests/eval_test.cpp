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
#include <cmath>

#include <nlohmann/json.hpp>

#include "artkit/eval.hpp"
#include "artkit/geometry.hpp"
#include "oracles.hpp"
#include "scenes.hpp"

namespace artkit {
namespace {

using testing::assignment_cost;
using testing::brute_force_assignment;
using testing::error_code;
using testing::isomorphic_brute_force;
using testing::tree_object;

TEST(Hungarian, MatchesFactorialBruteForce) {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost) {
      for (double& c : row) c = rng.uniform(0, 10);
    }
    const std::vector<int> cols = hungarian(cost);
    std::vector<int> sorted = cols;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) ASSERT_EQ(sorted[i], i);
    ASSERT_NEAR(assignment_cost(cost, cols), brute_force_assignment(cost), 1e-9);
  }
}

TEST(Hungarian, Rectangular) {
  Rng rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng.below(5));
    const int cols = 1 + static_cast<int>(rng.below(5));
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (auto& row : cost) {
      for (double& c : row) c = rng.uniform(0, 10);
    }
    const std::vector<int> a = hungarian(cost);
    ASSERT_EQ(static_cast<int>(a.size()), rows);
    ASSERT_EQ(static_cast<int>(std::count(a.begin(), a.end(), -1)), std::max(0, rows - cols));
    ASSERT_NEAR(assignment_cost(cost, a), brute_force_assignment(cost), 1e-9);
  }
  EXPECT_TRUE(hungarian({}).empty());
}

ArticulatedObject boxes_object(const std::vector<Aabb>& boxes) {
  ArticulatedObject o;
  for (size_t i = 0; i < boxes.size(); ++i) {
    o.links.push_back(testing::box_link(static_cast<int>(i), boxes[i], false));
  }
  for (size_t i = 1; i < boxes.size(); ++i) {
    o.joints.push_back(testing::make_joint(static_cast<int>(i - 1), JointKind::kPrismatic, 0,
                                           static_cast<int>(i), Vec3::UnitX(), std::nullopt,
                                           Interval{0, 0.1}));
  }
  return o;
}

Aabb cube_at(const Vec3& c, double h = 0.1) { return {c - Vec3::Constant(h), c + Vec3::Constant(h)}; }

TEST(MatchParts, GloballyCheaperCrossing) {
  // Greedy takes the closest pair first (pred 1, gt 0 at 0.9) and is left
  // with pred 0 to gt 1 at 3; the optimum pairs by index for 1 + 1.1.
  const ArticulatedObject pred = boxes_object({cube_at(Vec3(0, 0, 0)), cube_at(Vec3(1.9, 0, 0))});
  const ArticulatedObject gt = boxes_object({cube_at(Vec3(1, 0, 0)), cube_at(Vec3(3, 0, 0))});
  const PartMatching m = match_parts(pred, gt);
  ASSERT_EQ(m.pairs.size(), 2u);
  EXPECT_NEAR(m.total_cost, 2.1, 1e-12);
  for (auto [p, g] : m.pairs) EXPECT_EQ(p, g);
}

TEST(PartMiou, UnmatchedPartsCountZero) {
  const ArticulatedObject gt = boxes_object({cube_at(Vec3(0, 0, 0)), cube_at(Vec3(1, 0, 0))});
  const ArticulatedObject pred = boxes_object({cube_at(Vec3(0, 0, 0))});
  const PartMatching m = match_parts(pred, gt);
  EXPECT_EQ(m.unmatched_gt.size(), 1u);
  EXPECT_DOUBLE_EQ(part_miou(m, pred, gt), 0.5);
  const PartMatching self = match_parts(gt, gt);
  EXPECT_DOUBLE_EQ(part_miou(self, gt, gt), 1.0);
  EXPECT_DOUBLE_EQ(self.total_cost, 0.0);
}

TEST(PartMiou, MatchesDirectRecomputation) {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Aabb> a, b;
    const int na = 1 + static_cast<int>(rng.below(5));
    const int nb = 1 + static_cast<int>(rng.below(5));
    for (int i = 0; i < na; ++i) a.push_back(testing::random_box(rng));
    for (int i = 0; i < nb; ++i) b.push_back(testing::random_box(rng));
    const ArticulatedObject pred = boxes_object(a);
    const ArticulatedObject gt = boxes_object(b);
    const PartMatching m = match_parts(pred, gt);
    ASSERT_EQ(m.pairs.size(), static_cast<size_t>(std::min(na, nb)));
    double sum = 0.0;
    for (auto [p, g] : m.pairs) sum += aabb_iou(a[p], b[g]);
    ASSERT_NEAR(part_miou(m, pred, gt), sum / std::max(na, nb), 1e-12);
  }
}

TEST(JointTypeAcc, CountsOverLargerSide) {
  std::vector<Aabb> boxes;
  for (int i = 0; i < 5; ++i) boxes.push_back(cube_at(Vec3(i, 0, 0)));
  const ArticulatedObject gt = boxes_object(boxes);
  ArticulatedObject pred = gt;
  pred.joints[2].kind = JointKind::kRevolute;
  pred.joints[2].axis_origin = Vec3::Zero();
  const PartMatching m = match_parts(pred, gt);
  const JointCorrespondence j = match_joints(m, pred, gt);
  EXPECT_EQ(j.pairs.size(), 4u);
  EXPECT_DOUBLE_EQ(*joint_type_acc(j, pred, gt), 0.75);
  EXPECT_DOUBLE_EQ(*joint_type_acc(match_joints(m, gt, gt), gt, gt), 1.0);
  const ArticulatedObject single = boxes_object({cube_at(Vec3::Zero())});
  EXPECT_FALSE(joint_type_acc(match_joints(match_parts(single, single), single, single), single,
                              single));
}

TEST(AxisAngleErr, SignEquivalence) {
  EXPECT_DOUBLE_EQ(axis_angle_err(Vec3::UnitX(), Vec3::UnitX()), 0.0);
  EXPECT_DOUBLE_EQ(axis_angle_err(Vec3::UnitX(), -Vec3::UnitX()), 0.0);
  EXPECT_NEAR(axis_angle_err(Vec3::UnitX(), Vec3::UnitY()), kPi / 2, 1e-15);
  EXPECT_EQ(error_code([] { axis_angle_err(Vec3(1, 1, 0), Vec3::UnitX()); }),
            ErrorCode::kNonUnitVector);
  Rng rng(54);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = testing::random_unit(rng);
    const Vec3 b = testing::random_unit(rng);
    const double e = axis_angle_err(a, b);
    ASSERT_GE(e, 0.0);
    ASSERT_LE(e, kPi / 2);
    ASSERT_DOUBLE_EQ(e, axis_angle_err(-a, b));
    ASSERT_DOUBLE_EQ(e, axis_angle_err(a, -b));
  }
}

TEST(PivotErr, HandValues) {
  EXPECT_NEAR(pivot_err(Vec3::Zero(), Vec3::UnitX(), Vec3(0, 0, 0.25), Vec3::UnitY()), 0.25, 1e-9);
  EXPECT_NEAR(pivot_err(Vec3(0.1, 0, 0), Vec3::UnitY(), Vec3::Zero(), Vec3::UnitY()), 0.1, 1e-9);
  EXPECT_DOUBLE_EQ(pivot_err(Vec3(1, 2, 3), Vec3::UnitZ(), Vec3(1, 2, -5), Vec3::UnitZ()), 0.0);
}

TEST(PivotErr, InvariantToSlidingAlongAxes) {
  Rng rng(55);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 ap = testing::random_unit(rng);
    const Vec3 ag = testing::random_unit(rng);
    const Vec3 xp(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec3 xg(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double e = pivot_err(xp, ap, xg, ag);
    ASSERT_GE(e, 0.0);
    ASSERT_NEAR(e, pivot_err(xp + rng.uniform(-2, 2) * ap, ap, xg + rng.uniform(-2, 2) * ag, ag),
                1e-9);
  }
}

TEST(RangeIou, Values) {
  const double d90 = kPi / 2;
  EXPECT_DOUBLE_EQ(range_iou({0, d90}, {0, d90}), 1.0);
  EXPECT_DOUBLE_EQ(range_iou({-d90, 0}, {0, d90}), 1.0);
  EXPECT_DOUBLE_EQ(range_iou({0, -d90}, {0, d90}), 1.0);
  EXPECT_NEAR(range_iou({0, kPi / 3}, {0, d90}), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(range_iou({1, 2}, {3, 4}), 0.0);
  Rng rng(56);
  for (int i = 0; i < 1000; ++i) {
    const Interval a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const Interval b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double v = range_iou(a, b);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_DOUBLE_EQ(v, range_iou({-a.lo, -a.hi}, b));
  }
}

TEST(GraphAcc, AgreesWithPermutationBruteForce) {
  Rng rng(57);
  int positives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const std::vector<int> a = testing::random_tree(rng, n);
    const std::vector<int> b = trial % 2 ? testing::relabel_tree(a, rng) : testing::random_tree(rng, n);
    const bool expected = isomorphic_brute_force(a, b);
    positives += expected;
    ASSERT_EQ(graph_acc(tree_object(a), tree_object(b)), expected ? 1 : 0) << trial;
  }
  EXPECT_GE(positives, 50);
  EXPECT_LT(positives, 100);
}

TEST(GraphAcc, HandCases) {
  EXPECT_EQ(graph_acc(tree_object({-1, 0, 1}), tree_object({-1, 0, 0})), 0);
  EXPECT_EQ(graph_acc(tree_object({1, -1, 1}), tree_object({-1, 0, 0})), 1);
  EXPECT_EQ(graph_acc(tree_object({-1, 0}), tree_object({-1, 0, 0})), 0);
}

TEST(Align, SimilarityIsUndone) {
  const ArticulatedObject gt = testing::cabinet_star();
  ArticulatedObject pred = gt;
  apply_similarity(pred, Mat3::Identity(), 2.0, Vec3(0.3, -0.2, 0.5));
  const ArticulatedObject aligned = align(pred, gt);
  EXPECT_TRUE(aligned.bounds().min.isApprox(gt.bounds().min, 1e-6));
  EXPECT_TRUE(aligned.bounds().max.isApprox(gt.bounds().max, 1e-6));
  const ObjectMetrics m = evaluate_object(pred, gt);
  EXPECT_NEAR(m.miou, 1.0, 1e-9);
  EXPECT_NEAR(*m.pivot_err, 0.0, 1e-9);
}

TEST(Align, ZUpToYUp) {
  const UpAxisMap map = UpAxisMap::z_up_to_y_up();
  EXPECT_TRUE((map.matrix() * Vec3(1, 2, 3)).isApprox(Vec3(1, 3, -2)));
  EXPECT_EQ(UpAxisMap::parse("x,z,-y").matrix(), map.matrix());
  EXPECT_EQ(UpAxisMap::parse("z").matrix(), map.matrix());
  EXPECT_EQ(UpAxisMap::parse("y").matrix(), Mat3::Identity());
  EXPECT_EQ(error_code([] { UpAxisMap::parse("x,x,y"); }), ErrorCode::kConfigError);
  EXPECT_EQ(error_code([] { UpAxisMap::parse("w"); }), ErrorCode::kConfigError);

  // A z-up copy of a y-up object scores perfectly once converted.
  const ArticulatedObject gt = testing::cabinet_star();
  ArticulatedObject pred = gt;
  apply_similarity(pred, map.matrix().transpose(), 1.0, Vec3::Zero());
  EXPECT_NEAR(evaluate_object(pred, gt, map).miou, 1.0, 1e-9);
  EXPECT_LT(evaluate_object(pred, gt).miou, 0.9);

  ArticulatedObject flat = boxes_object({{Vec3::Zero(), Vec3::Zero()}});
  EXPECT_EQ(error_code([&] { align(flat, gt); }), ErrorCode::kDegenerateExtent);
}

TEST(Evaluate, PerfectPredictions) {
  Rng rng(58);
  std::vector<EvalCase> cases;
  for (int i = 0; i < 20; ++i) {
    ArticulatedObject o = testing::random_object(rng, 6);
    const std::string cat = i % 3 ? "Table" : "Door";
    cases.push_back({"obj" + std::to_string(i), cat, o, o});
  }
  const EvalReport r = evaluate(cases);
  EXPECT_NEAR(*r.overall.miou, 1.0, 1e-9);
  EXPECT_NEAR(*r.overall.type_acc, 1.0, 1e-12);
  EXPECT_NEAR(*r.overall.graph_acc, 1.0, 1e-12);
  EXPECT_NEAR(*r.overall.axis_err, 0.0, 1e-6);
  EXPECT_NEAR(*r.overall.pivot_err, 0.0, 1e-9);
  EXPECT_NEAR(*r.overall.range_iou, 1.0, 1e-9);
  EXPECT_EQ(r.categories.size(), 2u);

  // Order within a category does not matter.
  std::vector<EvalCase> reversed(cases.rbegin(), cases.rend());
  EXPECT_EQ(evaluate(reversed).to_table(), r.to_table());
}

TEST(Evaluate, TwoLevelAveraging) {
  auto object = [](std::string id, std::string category, double miou) {
    ObjectMetrics m;
    m.id = std::move(id);
    m.category = std::move(category);
    m.miou = miou;
    return m;
  };
  std::vector<ObjectMetrics> objects;
  for (int i = 0; i < 10; ++i) objects.push_back(object("a" + std::to_string(i), "Big", 1.0));
  objects.push_back(object("b", "Small", 0.0));
  const EvalReport r = aggregate(objects);
  EXPECT_EQ(*r.overall.miou, 0.5);
  EXPECT_EQ(r.categories.at("Big").count, 10);
  EXPECT_EQ(*r.categories.at("Small").miou, 0.0);
  // Metrics no object defines stay undefined.
  EXPECT_FALSE(r.overall.type_acc);

  const nlohmann::json j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["objects"].size(), 11u);
  EXPECT_EQ(j["overall"]["miou"], 0.5);
  EXPECT_NE(r.to_table().find("Small"), std::string::npos);
}

TEST(Evaluate, CategoryMismatch) {
  ArticulatedObject o = testing::cabinet_star();
  EvalCase c{"x", "Table", o, o};
  EXPECT_EQ(error_code([&] { evaluate({c}); }), ErrorCode::kCategoryMismatch);
  c.category = *o.category;
  EXPECT_NO_THROW(evaluate({c}));
}

}  // namespace
}  // namespace artkit
