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

#include <nlohmann/json.hpp>

#include "artkit/corpus.hpp"
#include "scenes.hpp"

namespace artkit {
namespace {

TEST(Augment, FrequencyAndRanges) {
  const ArticulatedObject o = testing::cabinet_star();
  Rng rng(61);
  int applied = 0;
  int angles[4] = {0, 0, 0, 0};
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    AugmentParams p;
    augment(o, rng, &p);
    if (!p.applied) {
      ASSERT_EQ(p.scale, 1.0);
      continue;
    }
    ++applied;
    ASSERT_GE(p.scale, 0.8);
    ASSERT_LE(p.scale, 1.05);
    ASSERT_EQ(p.angle_deg % 90, 0);
    ASSERT_GE(p.angle_deg, 90);
    ASSERT_LE(p.angle_deg, 270);
    ++angles[p.angle_deg / 90];
  }
  EXPECT_NEAR(applied / static_cast<double>(trials), 0.75, 0.03);
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(angles[k] / static_cast<double>(applied), 1.0 / 3, 0.03);
}

TEST(Augment, QuarterTurnsAreExact) {
  for (int deg : {0, 90, 180, 270, 360, -90}) {
    const Mat3 r = y_rotation_quarter_turns(deg);
    const Mat3 ref = Eigen::AngleAxisd(deg_to_rad(deg), Vec3::UnitY()).toRotationMatrix();
    EXPECT_TRUE(r.isApprox(ref, 1e-15)) << deg;
    EXPECT_EQ(r, r.array().round().matrix()) << deg;
  }
  // 180 degrees: x and z flip sign, so boxes map exactly.
  const Aabb box{Vec3(0.1, 0.2, 0.3), Vec3(0.4, 0.5, 0.6)};
  const Aabb turned = box.transformed({y_rotation_quarter_turns(180), Vec3::Zero()});
  EXPECT_EQ(turned, (Aabb{Vec3(-0.4, 0.2, -0.6), Vec3(-0.1, 0.5, -0.3)}));
}

TEST(Augment, PreservesStructure) {
  const ArticulatedObject o = testing::cabinet_star();
  Rng rng(62);
  for (int i = 0; i < 50; ++i) {
    AugmentParams p;
    const ArticulatedObject a = augment(o, rng, &p);
    ASSERT_EQ(a.links.size(), o.links.size());
    ASSERT_NEAR(a.bounds().volume(), o.bounds().volume() * std::pow(p.scale, 3), 1e-12);
    for (size_t j = 0; j < o.joints.size(); ++j) {
      ASSERT_EQ(a.joints[j].kind, o.joints[j].kind);
      const double s = is_translational(o.joints[j].kind) ? p.scale : 1.0;
      ASSERT_NEAR(a.joints[j].limit->hi, o.joints[j].limit->hi * s, 1e-12);
    }
  }
}

TEST(TaskSchedule, ThreeTwoFiveWithinOne) {
  for (size_t n = 0; n <= 200; ++n) {
    Rng rng(n);
    const std::vector<Task> t = task_schedule(n, rng);
    ASSERT_EQ(t.size(), n);
    const int weights[3] = {3, 2, 5};
    for (int k = 0; k < 3; ++k) {
      const double c = static_cast<double>(std::count(t.begin(), t.end(), static_cast<Task>(k + 1)));
      ASSERT_LE(std::abs(c - n * weights[k] / 10.0), 1.0) << n;
    }
  }
  Rng a(5), b(5);
  EXPECT_EQ(task_schedule(50, a), task_schedule(50, b));
}

ArticulatedObject star_with_tiny_part() {
  ArticulatedObject o = testing::cabinet_star();
  const int id = 7;
  o.links.push_back(testing::box_link(id, {Vec3(0.1, 0.1, 0.1), Vec3(0.101, 0.101, 0.101)}));
  o.joints.push_back(testing::make_joint(id, JointKind::kPrismatic, 6, id, Vec3::UnitX(),
                                         std::nullopt, Interval{0, 0.01}));
  return o;
}

TEST(Filter, MergesSmallPartsThenCountsJoints) {
  const FilterDecision d = filter_object(star_with_tiny_part());
  EXPECT_TRUE(d.keep);
  EXPECT_EQ(d.merged_parts, 1);
  EXPECT_EQ(d.object.links.size(), 7u);
  EXPECT_EQ(d.object.joints.size(), 6u);

  FilterPolicy strict;
  strict.max_joints = 5;
  const FilterDecision drop = filter_object(testing::cabinet_star(), strict);
  EXPECT_FALSE(drop.keep);
  EXPECT_EQ(drop.reasons, std::vector<std::string>{"TooManyJoints"});
  strict.max_joints = 6;
  EXPECT_TRUE(filter_object(star_with_tiny_part(), strict).keep);

  ArticulatedObject kb = testing::cabinet_star();
  kb.category = "keyboard";
  EXPECT_EQ(filter_object(kb).reasons, std::vector<std::string>{"ExcludedCategory"});
}

TEST(EmitSample, TaskLayouts) {
  const ArticulatedObject o = testing::cabinet_star();
  const std::string layout = render_layout(encode_object(o));
  const std::string art = render_articulation(encode_object(o));

  const ConversationSample a = emit_sample(o, Task::kLayout, "x/pcd/x.ply");
  EXPECT_EQ(a.gpt, layout);
  EXPECT_EQ(a.human.rfind("<point_cloud>\n", 0), 0u);
  EXPECT_NE(a.human.find(std::string(script_template())), std::string::npos);

  const ConversationSample b = emit_sample(o, Task::kJoints, "x/pcd/x.ply");
  EXPECT_EQ(b.gpt, art);
  EXPECT_NE(b.human.find(layout), std::string::npos);

  const ConversationSample c = emit_sample(o, Task::kEndToEnd, "x/pcd/x.ply");
  EXPECT_EQ(c.gpt, render(encode_object(o)));
  EXPECT_EQ(c.human.find("<|layout_start|>"), std::string::npos);

  const nlohmann::json j = nlohmann::json::parse(c.to_json());
  ASSERT_EQ(j["conversations"].size(), 2u);
  EXPECT_EQ(j["conversations"][0]["from"], "human");
  EXPECT_EQ(j["conversations"][1]["from"], "gpt");
  EXPECT_EQ(j["conversations"][1]["value"], c.gpt);
  EXPECT_EQ(j["point_clouds"][0], "x/pcd/x.ply");
  EXPECT_EQ(c.to_json().find('\n'), std::string::npos);
}

std::vector<CorpusEntry> random_entries(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<CorpusEntry> out;
  for (int i = 0; i < n; ++i) {
    ArticulatedObject o = testing::random_object(rng, 24);
    out.push_back({"obj" + std::to_string(100 + i), i % 2 ? "Table" : "Door",
                   i % 3 ? "partnet" : "acd", o});
  }
  return out;
}

TEST(BuildCorpus, DeterministicAndFiltered) {
  const std::vector<CorpusEntry> entries = random_entries(40, 63);
  CorpusOptions opt;
  opt.seed = 7;
  opt.cloud_points = 256;
  const CorpusOutput a = build_corpus(entries, opt);
  std::vector<CorpusEntry> reversed(entries.rbegin(), entries.rend());
  const CorpusOutput b = build_corpus(reversed, opt);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.kept_ids, b.kept_ids);
  ASSERT_EQ(a.clouds.size(), b.clouds.size());
  for (const auto& [id, cloud] : a.clouds) EXPECT_EQ(cloud.points, b.clouds.at(id).points);

  opt.seed = 8;
  EXPECT_NE(build_corpus(entries, opt).records, a.records);

  EXPECT_FALSE(a.dropped.empty());
  EXPECT_EQ(a.kept_ids.size() + a.dropped.size(), entries.size());
  EXPECT_EQ(a.stats.total, static_cast<int>(a.kept_ids.size()));
  for (const std::string& r : a.records) {
    const nlohmann::json j = nlohmann::json::parse(r);
    const ArticulationScript s = parse_script_text(j["conversations"][1]["value"].get<std::string>());
    EXPECT_LE(s.joints.size(), 20u);
  }
  int total = 0;
  for (const auto& [task, n] : a.task_counts) total += n;
  EXPECT_EQ(total, static_cast<int>(a.records.size()));
}

TEST(DatasetStats, CountsAndText) {
  const std::vector<CorpusEntry> entries = random_entries(6, 64);
  const DatasetStats s = dataset_stats(entries);
  EXPECT_EQ(s.total, 6);
  EXPECT_EQ(s.per_category.at("Door"), 3);
  EXPECT_EQ(s.per_source.at("acd"), 2);
  int hist = 0;
  for (const auto& [links, n] : s.link_histogram) hist += n;
  EXPECT_EQ(hist, 6);
  const nlohmann::json j = nlohmann::json::parse(s.to_json());
  EXPECT_EQ(j["total"], 6);
  EXPECT_NE(s.to_text().find("category counts"), std::string::npos);
}

}  // namespace
}  // namespace artkit
