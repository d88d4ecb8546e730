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

// Training-corpus construction: filtering, augmentation, conversation
// samples for the three prediction tasks, and dataset statistics.

#ifndef ARTKIT_CORPUS_HPP_
#define ARTKIT_CORPUS_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "artkit/codec.hpp"
#include "artkit/geometry.hpp"
#include "artkit/kinematics.hpp"
#include "artkit/rng.hpp"

namespace artkit {

struct FilterPolicy {
  int max_joints = 20;
  /// Parts whose box volume is below this fraction of the object's box
  /// volume are merged into their parent.
  double min_part_volume_fraction = 1e-4;
  std::set<std::string> excluded_categories = {"keyboard", "remote"};
};

struct FilterDecision {
  bool keep = true;
  /// "TooManyJoints", "ExcludedCategory".
  std::vector<std::string> reasons;
  /// The object after small-part merging.
  ArticulatedObject object;
  int merged_parts = 0;
};

/// Merges small non-root parts into their parents, then drops the object
/// if its category is excluded or it still has too many joints.
FilterDecision filter_object(const ArticulatedObject& object, const FilterPolicy& policy = {});

inline constexpr double kAugmentProbability = 0.75;
inline constexpr double kAugmentScaleMin = 0.8;
inline constexpr double kAugmentScaleMax = 1.05;

struct AugmentParams {
  bool applied = false;
  double scale = 1.0;
  int angle_deg = 0;  // 90, 180 or 270 when applied
};

/// Exact rotation by a multiple of 90 degrees about +y, counterclockwise
/// seen from +y.
Mat3 y_rotation_quarter_turns(int angle_deg);

/// One coin with probability 0.75 gates both a uniform scale in
/// [0.8, 1.05] and a y rotation by 90, 180 or 270 degrees.
ArticulatedObject augment(const ArticulatedObject& object, Rng& rng,
                          AugmentParams* params = nullptr);

enum class Task { kLayout = 1, kJoints = 2, kEndToEnd = 3 };

std::string_view task_prompt(Task task);
/// The dataclass reference block shown to the predictor.
std::string_view script_template();

struct ConversationSample {
  Task task = Task::kEndToEnd;
  std::string human;
  std::string gpt;
  std::string point_cloud;

  /// {"conversations": [...], "point_clouds": [...]} on a single line.
  std::string to_json() const;
};

ConversationSample emit_sample(const ArticulatedObject& object, Task task,
                               const std::string& point_cloud_path,
                               const AxisCodebook& codebook = AxisCodebook::standard());

/// Tasks for `n` samples mixed 3:2:5. Counts follow largest-remainder
/// rounding of the exact ratio; positions are shuffled by `rng`.
std::vector<Task> task_schedule(size_t n, Rng& rng);

struct CorpusEntry {
  std::string id;
  std::string category;
  std::string source;
  ArticulatedObject object;
};

struct DatasetStats {
  int total = 0;
  std::map<std::string, int> per_category;
  std::map<std::string, int> per_source;
  /// link count -> number of objects
  std::map<int, int> link_histogram;

  std::string to_json() const;
  std::string to_text() const;
};

DatasetStats dataset_stats(const std::vector<CorpusEntry>& entries);

struct CorpusOptions {
  FilterPolicy policy;
  uint64_t seed = 0;
  bool augment = true;
  int cloud_points = kPredictorCloudSize;
  /// Skip point-cloud sampling (the JSON still names the PLY path).
  bool sample_clouds = true;
};

struct CorpusOutput {
  /// One JSON record per kept object, ordered by object id.
  std::vector<std::string> records;
  std::vector<std::string> kept_ids;
  /// id -> cloud; relative paths are "<id>/pcd/<id>.ply".
  std::map<std::string, PointCloud> clouds;
  std::map<std::string, std::vector<std::string>> dropped;
  DatasetStats stats;  // over kept objects
  std::map<Task, int> task_counts;
};

/// Full pipeline over a set of normalized objects. Every random draw comes
/// from streams split off `options.seed` by object id.
CorpusOutput build_corpus(std::vector<CorpusEntry> entries, const CorpusOptions& options,
                          const AxisCodebook& codebook = AxisCodebook::standard());

std::string point_cloud_path(const std::string& id);

}  // namespace artkit

#endif  // ARTKIT_CORPUS_HPP_
