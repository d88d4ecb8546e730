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

// Prediction-versus-ground-truth scoring: alignment, part matching, the
// per-object metrics and the per-category report.

#ifndef ARTKIT_EVAL_HPP_
#define ARTKIT_EVAL_HPP_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "artkit/kinematics.hpp"

namespace artkit {

/// Signed axis permutation applied to predictions before scaling: output
/// axis i takes `sign[i]` times input axis `perm[i]`.
struct UpAxisMap {
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> sign{1, 1, 1};

  static UpAxisMap identity() { return {}; }
  /// (x, y, z) in a z-up frame becomes (x, z, -y) in a y-up frame.
  static UpAxisMap z_up_to_y_up() { return {{0, 2, 1}, {1, 1, -1}}; }
  /// Accepts "y" (identity), "z" (z-up to y-up) or three comma separated
  /// signed axis names such as "x,z,-y". Raises ConfigError.
  static UpAxisMap parse(const std::string& text);

  Mat3 matrix() const;
  std::string to_string() const;
};

/// Re-axes `pred`, then scales and offsets it uniformly so its union box
/// has the longest side and center of `gt`'s. Raises DegenerateExtent.
ArticulatedObject align(const ArticulatedObject& pred, const ArticulatedObject& gt,
                        const UpAxisMap& up = {});

struct PartMatching {
  /// (pred link index, gt link index); indices into the `links` vectors.
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> unmatched_pred;
  std::vector<int> unmatched_gt;
  double total_cost = 0.0;
};

/// Minimum-cost assignment for a rectangular cost matrix (rows <= or >
/// columns both allowed). Returns the column for each row, -1 if unassigned.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

/// Optimal assignment on box-center distance.
PartMatching match_parts(const ArticulatedObject& pred, const ArticulatedObject& gt);

/// Mean box IoU over max(n_pred, n_gt) parts; unmatched parts count 0.
double part_miou(const PartMatching& matching, const ArticulatedObject& pred,
                 const ArticulatedObject& gt);

struct JointCorrespondence {
  /// (pred joint index, gt joint index); indices into the `joints` vectors.
  std::vector<std::pair<int, int>> pairs;
  int unmatched_pred = 0;
  int unmatched_gt = 0;
};

/// Pairs joints whose child parts are matched to each other.
JointCorrespondence match_joints(const PartMatching& matching, const ArticulatedObject& pred,
                                 const ArticulatedObject& gt);

/// Fraction of joints with the right kind over max(n_pred, n_gt) joints.
/// Empty when neither object has joints.
std::optional<double> joint_type_acc(const JointCorrespondence& joints,
                                     const ArticulatedObject& pred,
                                     const ArticulatedObject& gt);

/// Angle between directions up to sign, in [0, pi/2]. Raises NonUnitVector.
double axis_angle_err(const Vec3& a_p, const Vec3& a_g);

/// Distance between two axis lines. Near-parallel axes (|a_p x a_g| <
/// 1e-6) fall back to the distance from x_p to the gt line.
double pivot_err(const Vec3& x_p, const Vec3& a_p, const Vec3& x_g, const Vec3& a_g);

/// 1-D IoU after ordering both intervals, maximized over negating r_p.
double range_iou(Interval r_p, Interval r_g);

/// 1 iff the directed kinematic graphs are isomorphic.
int graph_acc(const ArticulatedObject& pred, const ArticulatedObject& gt);

struct ObjectMetrics {
  std::string id;
  std::string category;
  double miou = 0.0;
  std::optional<double> type_acc;
  std::optional<double> axis_err;
  std::optional<double> pivot_err;
  std::optional<double> range_iou;
  double graph_acc = 0.0;
};

/// Means over the members that define each metric.
struct MetricSummary {
  int count = 0;
  std::optional<double> miou;
  std::optional<double> type_acc;
  std::optional<double> axis_err;
  std::optional<double> pivot_err;
  std::optional<double> range_iou;
  std::optional<double> graph_acc;
};

struct EvalReport {
  std::vector<ObjectMetrics> objects;
  std::map<std::string, MetricSummary> categories;
  /// Unweighted mean of the category means.
  MetricSummary overall;

  std::string to_json() const;
  /// Fixed-width table, one row per category plus an overall row.
  std::string to_table() const;
};

struct EvalCase {
  std::string id;
  std::string category;
  ArticulatedObject pred;
  ArticulatedObject gt;
};

/// Scores one aligned-or-not pair. The prediction is aligned first.
ObjectMetrics evaluate_object(const ArticulatedObject& pred, const ArticulatedObject& gt,
                              const UpAxisMap& up = {});

/// Scores every case, averages per category, then across categories.
/// Raises CategoryMismatch when an object's own category disagrees with
/// its case label.
EvalReport evaluate(const std::vector<EvalCase>& cases, const UpAxisMap& up = {});

/// Aggregation step on precomputed per-object metrics.
EvalReport aggregate(std::vector<ObjectMetrics> objects);

}  // namespace artkit

#endif  // ARTKIT_EVAL_HPP_
