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

#include "artkit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace artkit {
namespace {

constexpr std::string_view kTemplate =
    "@dataclass\n"
    "class BBox:\n"
    "    min_x: int\n"
    "    min_y: int\n"
    "    min_z: int\n"
    "    max_x: int\n"
    "    max_y: int\n"
    "    max_z: int\n"
    "\n"
    "@dataclass\n"
    "class RevoluteJoint:\n"
    "    parent_box_id: int\n"
    "    child_box_id: int\n"
    "    axis_direction: int\n"
    "    axis_position: [int, int, int]\n"
    "    rotation_limit: [int, int]\n"
    "\n"
    "@dataclass\n"
    "class ContinuousJoint:\n"
    "    parent_box_id: int\n"
    "    child_box_id: int\n"
    "    axis_direction: int\n"
    "    axis_position: [int, int, int]\n"
    "\n"
    "@dataclass\n"
    "class ScrewJoint:\n"
    "    parent_box_id: int\n"
    "    child_box_id: int\n"
    "    axis_direction: int\n"
    "    axis_position: [int, int, int]\n"
    "    translation_limit: [int, int]\n"
    "\n"
    "@dataclass\n"
    "class PrismaticJoint:\n"
    "    parent_box_id: int\n"
    "    child_box_id: int\n"
    "    axis_direction: int\n"
    "    translation_limit: [int, int]";

constexpr int kTaskWeights[3] = {3, 2, 5};

// Smallest non-root part below the volume threshold, if any.
std::optional<int> small_part(const ArticulatedObject& object, double min_volume) {
  const KinematicGraph graph = build_graph(object);
  std::optional<int> best;
  double best_volume = 0.0;
  for (const Link& l : object.links) {
    if (l.id == graph.root) continue;
    const double v = l.aabb.volume();
    if (v < min_volume && (!best || v < best_volume)) {
      best = l.id;
      best_volume = v;
    }
  }
  return best;
}

TriangleMesh object_surface(const ArticulatedObject& object) {
  TriangleMesh mesh;
  for (const Link& l : object.links) {
    if (l.has_geometry()) mesh.append(l.geometry());
  }
  return mesh;
}

}  // namespace

FilterDecision filter_object(const ArticulatedObject& object, const FilterPolicy& policy) {
  FilterDecision d;
  d.object = object;
  const double min_volume = policy.min_part_volume_fraction * object.bounds().volume();
  while (auto part = small_part(d.object, min_volume)) {
    const KinematicGraph graph = build_graph(d.object);
    d.object = merge_links(d.object, graph.in_edge(*part)->parent, *part);
    ++d.merged_parts;
  }
  if (object.category && policy.excluded_categories.count(*object.category)) {
    d.keep = false;
    d.reasons.emplace_back("ExcludedCategory");
  }
  if (static_cast<int>(d.object.joints.size()) > policy.max_joints) {
    d.keep = false;
    d.reasons.emplace_back("TooManyJoints");
  }
  return d;
}

Mat3 y_rotation_quarter_turns(int angle_deg) {
  const int turns = ((angle_deg / 90) % 4 + 4) % 4;
  static const int kCos[4] = {1, 0, -1, 0};
  static const int kSin[4] = {0, 1, 0, -1};
  const double c = kCos[turns];
  const double s = kSin[turns];
  Mat3 r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

ArticulatedObject augment(const ArticulatedObject& object, Rng& rng, AugmentParams* params) {
  AugmentParams p;
  p.applied = rng.bernoulli(kAugmentProbability);
  ArticulatedObject out = object;
  if (p.applied) {
    p.scale = rng.uniform(kAugmentScaleMin, kAugmentScaleMax);
    p.angle_deg = 90 * static_cast<int>(1 + rng.below(3));
    apply_similarity(out, y_rotation_quarter_turns(p.angle_deg), p.scale, Vec3::Zero());
  }
  if (params != nullptr) *params = p;
  return out;
}

std::string_view task_prompt(Task task) {
  switch (task) {
    case Task::kLayout:
      return "Detect part boxes.";
    case Task::kJoints:
      return "Given part boxes, detect joints.";
    case Task::kEndToEnd:
      return "Detect part boxes and joints.";
  }
  return "";
}

std::string_view script_template() { return kTemplate; }

std::string ConversationSample::to_json() const {
  const nlohmann::json j = {
      {"conversations",
       {{{"from", "human"}, {"value", human}}, {{"from", "gpt"}, {"value", gpt}}}},
      {"point_clouds", {point_cloud}}};
  return j.dump();
}

ConversationSample emit_sample(const ArticulatedObject& object, Task task,
                               const std::string& point_cloud_path,
                               const AxisCodebook& codebook) {
  const ArticulationScript script = encode_object(object, codebook);
  ConversationSample s;
  s.task = task;
  s.point_cloud = point_cloud_path;
  s.human = "<point_cloud>\n" + std::string(task_prompt(task)) +
            "\nThe reference code is as followed:\n" + std::string(kTemplate);
  switch (task) {
    case Task::kLayout:
      s.gpt = render_layout(script);
      break;
    case Task::kJoints:
      s.human += "\n" + render_layout(script);
      s.gpt = render_articulation(script);
      break;
    case Task::kEndToEnd:
      s.gpt = render(script);
      break;
  }
  return s;
}

std::vector<Task> task_schedule(size_t n, Rng& rng) {
  const int total_weight = kTaskWeights[0] + kTaskWeights[1] + kTaskWeights[2];
  size_t counts[3];
  double remainders[3];
  size_t assigned = 0;
  for (int t = 0; t < 3; ++t) {
    const double exact = static_cast<double>(n) * kTaskWeights[t] / total_weight;
    counts[t] = static_cast<size_t>(std::floor(exact));
    remainders[t] = exact - static_cast<double>(counts[t]);
    assigned += counts[t];
  }
  int order[3] = {0, 1, 2};
  std::stable_sort(order, order + 3, [&](int a, int b) { return remainders[a] > remainders[b]; });
  for (int k = 0; assigned < n; ++k, ++assigned) ++counts[order[k]];

  std::vector<Task> out;
  out.reserve(n);
  for (int t = 0; t < 3; ++t) out.insert(out.end(), counts[t], static_cast<Task>(t + 1));
  for (size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

DatasetStats dataset_stats(const std::vector<CorpusEntry>& entries) {
  DatasetStats s;
  for (const CorpusEntry& e : entries) {
    ++s.total;
    ++s.per_category[e.category];
    ++s.per_source[e.source];
    ++s.link_histogram[static_cast<int>(e.object.links.size())];
  }
  return s;
}

std::string DatasetStats::to_json() const {
  nlohmann::json j;
  j["total"] = total;
  j["per_category"] = per_category;
  j["per_source"] = per_source;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [links, count] : link_histogram) hist[std::to_string(links)] = count;
  j["link_histogram"] = hist;
  return j.dump(2);
}

std::string DatasetStats::to_text() const {
  std::ostringstream out;
  out << "objects: " << total << "\n\ncategory counts\n";
  for (const auto& [name, n] : per_category) out << "  " << name << ": " << n << "\n";
  out << "\nsource counts\n";
  for (const auto& [name, n] : per_source) out << "  " << name << ": " << n << "\n";
  out << "\nlinks per object\n";
  for (const auto& [links, n] : link_histogram) out << "  " << links << ": " << n << "\n";
  return out.str();
}

std::string point_cloud_path(const std::string& id) { return id + "/pcd/" + id + ".ply"; }

CorpusOutput build_corpus(std::vector<CorpusEntry> entries, const CorpusOptions& options,
                          const AxisCodebook& codebook) {
  std::sort(entries.begin(), entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
  const Rng root(options.seed);

  struct Prepared {
    bool keep = false;
    std::vector<std::string> reasons;
    ArticulatedObject object;
    PointCloud cloud;
  };
  std::vector<Prepared> prepared(entries.size());
  const int n = static_cast<int>(entries.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    const CorpusEntry& e = entries[i];
    Prepared& p = prepared[i];
    try {
      ArticulatedObject object = e.object;
      if (!object.category && !e.category.empty()) object.category = e.category;
      FilterDecision d = filter_object(object, options.policy);
      p.keep = d.keep;
      p.reasons = std::move(d.reasons);
      if (!p.keep) continue;
      p.object = std::move(d.object);
      if (options.augment) {
        Rng rng = root.split("augment:" + e.id);
        p.object = augment(p.object, rng);
      }
      encode_object(p.object, codebook);  // surfaces encoding errors early
      if (options.sample_clouds) {
        p.cloud = sample_surface(object_surface(p.object), options.cloud_points,
                                 root.split("cloud:" + e.id).next());
      }
    } catch (const Error& err) {
      p.keep = false;
      p.reasons = {std::string(to_string(err.code()))};
    }
  }

  CorpusOutput out;
  std::vector<CorpusEntry> kept;
  for (int i = 0; i < n; ++i) {
    if (!prepared[i].keep) {
      out.dropped[entries[i].id] = prepared[i].reasons;
      continue;
    }
    kept.push_back({entries[i].id, entries[i].category, entries[i].source,
                    std::move(prepared[i].object)});
    if (options.sample_clouds) out.clouds[entries[i].id] = std::move(prepared[i].cloud);
  }
  Rng task_rng = root.split("tasks");
  const std::vector<Task> tasks = task_schedule(kept.size(), task_rng);
  for (size_t i = 0; i < kept.size(); ++i) {
    const ConversationSample s =
        emit_sample(kept[i].object, tasks[i], point_cloud_path(kept[i].id), codebook);
    out.records.push_back(s.to_json());
    out.kept_ids.push_back(kept[i].id);
    ++out.task_counts[tasks[i]];
  }
  out.stats = dataset_stats(kept);
  return out;
}

}  // namespace artkit
