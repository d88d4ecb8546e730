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

#include "artkit/config.hpp"
#include "scenes.hpp"

namespace artkit {
namespace {

using testing::error_code;

TEST(KeyValues, CommentsAndSections) {
  const KeyValues kv = parse_key_values(
      "# refiner settings\n"
      "steps = 48\n"
      "; another comment\n"
      "[sweep]\n"
      "tau=0.1\n"
      "occupancy = solid\n");
  EXPECT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv.at("steps"), "48");
  EXPECT_EQ(kv.at("tau"), "0.1");
  EXPECT_EQ(kv.at("occupancy"), "solid");
}

TEST(KeyValues, Errors) {
  EXPECT_EQ(error_code([] { parse_key_values("a = 1\na = 2\n"); }), ErrorCode::kConfigError);
  EXPECT_EQ(error_code([] { parse_key_values("a = 1\n[s]\na = 2\n"); }), ErrorCode::kConfigError);
  try {
    parse_key_values("a = 1\nthis line has no equals sign\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(error_code([] { load_key_values("/nonexistent/refiner.ini"); }),
            ErrorCode::kIoFailure);
}

TEST(RefinerConfig, ParseAndRoundTrip) {
  const RefinerConfig c = refiner_config_from(parse_key_values(
      "steps = 40\ngrid_resolution = 96\ntau = 0.07\neps_v = 0.02\n"
      "rot_tolerance_deg = 0.1\ntrans_tolerance = 0.0005\noccupancy = surface\nparallel = no\n"));
  EXPECT_EQ(c.steps, 40);
  EXPECT_EQ(c.grid_resolution, 96);
  EXPECT_DOUBLE_EQ(c.tau, 0.07);
  EXPECT_DOUBLE_EQ(c.eps_v, 0.02);
  EXPECT_DOUBLE_EQ(c.rot_tolerance, deg_to_rad(0.1));
  EXPECT_DOUBLE_EQ(c.trans_tolerance, 0.0005);
  EXPECT_EQ(c.occupancy, Occupancy::kSurfaceOnly);
  EXPECT_FALSE(c.parallel);

  const RefinerConfig back = refiner_config_from(parse_key_values(to_key_values(c)));
  EXPECT_EQ(back.steps, c.steps);
  EXPECT_EQ(back.grid_resolution, c.grid_resolution);
  EXPECT_EQ(back.tau, c.tau);
  EXPECT_EQ(back.eps_v, c.eps_v);
  EXPECT_NEAR(back.rot_tolerance, c.rot_tolerance, 1e-15);
  EXPECT_EQ(back.trans_tolerance, c.trans_tolerance);
  EXPECT_EQ(back.occupancy, c.occupancy);
  EXPECT_EQ(back.parallel, c.parallel);
}

TEST(RefinerConfig, PartialOverridesKeepBase) {
  RefinerConfig base;
  base.steps = 12;
  const RefinerConfig c = refiner_config_from(parse_key_values("tau = 0.2\n"), base);
  EXPECT_EQ(c.steps, 12);
  EXPECT_DOUBLE_EQ(c.tau, 0.2);
  EXPECT_EQ(c.occupancy, Occupancy::kInteriorOnly);
}

TEST(RefinerConfig, Rejects) {
  for (const char* text : {"stepz = 3\n", "steps = 2\n", "steps = 4.5\n", "grid_resolution = 3\n",
                           "tau = fast\n", "trans_tolerance = 0\n", "rot_tolerance_deg = -1\n",
                           "occupancy = hollow\n", "parallel = maybe\n"}) {
    EXPECT_EQ(error_code([&] { refiner_config_from(parse_key_values(text)); }),
              ErrorCode::kConfigError)
        << text;
  }
}

TEST(FilterPolicy, ParseAndRoundTrip) {
  const FilterPolicy p = filter_policy_from(parse_key_values(
      "max_joints = 12\nmin_part_volume_fraction = 0.001\n"
      "excluded_categories = Toilet , Remote,  \n"));
  EXPECT_EQ(p.max_joints, 12);
  EXPECT_DOUBLE_EQ(p.min_part_volume_fraction, 0.001);
  EXPECT_EQ(p.excluded_categories, (std::set<std::string>{"Toilet", "Remote"}));

  const FilterPolicy back = filter_policy_from(parse_key_values(to_key_values(p)));
  EXPECT_EQ(back.max_joints, p.max_joints);
  EXPECT_EQ(back.min_part_volume_fraction, p.min_part_volume_fraction);
  EXPECT_EQ(back.excluded_categories, p.excluded_categories);

  const FilterPolicy none = filter_policy_from(parse_key_values("excluded_categories =\n"));
  EXPECT_TRUE(none.excluded_categories.empty());
  EXPECT_EQ(filter_policy_from(parse_key_values(to_key_values(none))).excluded_categories.size(),
            0u);
}

TEST(FilterPolicy, Rejects) {
  for (const char* text : {"max_joints = 0\n", "min_part_volume_fraction = 1\n",
                           "min_part_volume_fraction = 0\n", "categories = a\n"}) {
    EXPECT_EQ(error_code([&] { filter_policy_from(parse_key_values(text)); }),
              ErrorCode::kConfigError)
        << text;
  }
}

}  // namespace
}  // namespace artkit
