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

#include "artkit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "artkit/geometry.hpp"

namespace artkit {
namespace {

constexpr double kParallelTol = 1e-6;
constexpr double kUnitTol = 1e-6;

void require_unit(const Vec3& v, const char* what) {
  if (!(std::abs(v.norm() - 1.0) <= kUnitTol)) {
    raise(ErrorCode::kNonUnitVector, std::string(what) + " is not a unit vector");
  }
}

Interval ordered(Interval r) {
  if (r.lo > r.hi) std::swap(r.lo, r.hi);
  return r;
}

double interval_iou(const Interval& a, const Interval& b) {
  const double inter = std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
  const double uni = (a.hi - a.lo) + (b.hi - b.lo) - inter;
  if (uni <= 0.0) return a.lo == b.lo && a.hi == b.hi ? 1.0 : 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

std::optional<double> mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// AHU canonical form of the subtree rooted at `node`.
std::string canonical(const KinematicGraph& g, int node) {
  std::vector<std::string> kids;
  for (const auto& e : g.out_edges(node)) kids.push_back(canonical(g, e.child));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

int link_index(const ArticulatedObject& o, int id) {
  for (size_t i = 0; i < o.links.size(); ++i) {
    if (o.links[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

UpAxisMap UpAxisMap::parse(const std::string& text) {
  if (text.empty() || text == "y" || text == "identity") return identity();
  if (text == "z") return z_up_to_y_up();
  UpAxisMap m;
  std::stringstream in(text);
  std::string part;
  std::array<bool, 3> used{false, false, false};
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i >= 3) raise(ErrorCode::kConfigError, "up-axis map '" + text + "' has too many axes");
    int sign = 1;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) {
      sign = part[0] == '-' ? -1 : 1;
      part.erase(0, 1);
    }
    if (part.size() != 1 || part[0] < 'x' || part[0] > 'z' || used[part[0] - 'x']) {
      raise(ErrorCode::kConfigError, "bad up-axis map '" + text + "'");
    }
    used[part[0] - 'x'] = true;
    m.perm[i] = part[0] - 'x';
    m.sign[i] = sign;
    ++i;
  }
  if (i != 3) raise(ErrorCode::kConfigError, "up-axis map '" + text + "' needs three axes");
  return m;
}

Mat3 UpAxisMap::matrix() const {
  Mat3 m = Mat3::Zero();
  for (int i = 0; i < 3; ++i) m(i, perm[i]) = sign[i];
  return m;
}

std::string UpAxisMap::to_string() const {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i > 0) out += ',';
    if (sign[i] < 0) out += '-';
    out += static_cast<char>('x' + perm[i]);
  }
  return out;
}

ArticulatedObject align(const ArticulatedObject& pred, const ArticulatedObject& gt,
                        const UpAxisMap& up) {
  ArticulatedObject out = pred;
  apply_similarity(out, up.matrix(), 1.0, Vec3::Zero());
  const Aabb pb = out.bounds();
  const Aabb gb = gt.bounds();
  const double lp = pb.is_empty() ? 0.0 : pb.longest_extent();
  const double lg = gb.is_empty() ? 0.0 : gb.longest_extent();
  if (!(lp > 0.0) || !(lg > 0.0)) {
    raise(ErrorCode::kDegenerateExtent, "cannot align objects with zero extent");
  }
  const double scale = lg / lp;
  apply_similarity(out, Mat3::Identity(), scale, gb.center() - scale * pb.center());
  return out;
}

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int rows = static_cast<int>(cost.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(cost[0].size());
  if (rows == 0 || cols == 0) return std::vector<int>(rows, -1);
  if (rows > cols) {
    std::vector<std::vector<double>> t(cols, std::vector<double>(rows));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) t[c][r] = cost[r][c];
    }
    const std::vector<int> col_to_row = hungarian(t);
    std::vector<int> out(rows, -1);
    for (int c = 0; c < cols; ++c) {
      if (col_to_row[c] >= 0) out[col_to_row[c]] = c;
    }
    return out;
  }
  // Potentials formulation, 1-based with a virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<int> p(cols + 1, 0), way(cols + 1, 0);
  for (int i = 1; i <= rows; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> out(rows, -1);
  for (int j = 1; j <= cols; ++j) {
    if (p[j] > 0) out[p[j] - 1] = j - 1;
  }
  return out;
}

PartMatching match_parts(const ArticulatedObject& pred, const ArticulatedObject& gt) {
  const size_t np = pred.links.size();
  const size_t ng = gt.links.size();
  std::vector<std::vector<double>> cost(np, std::vector<double>(ng));
  for (size_t i = 0; i < np; ++i) {
    for (size_t j = 0; j < ng; ++j) {
      cost[i][j] = (pred.links[i].aabb.center() - gt.links[j].aabb.center()).norm();
    }
  }
  const std::vector<int> assign = hungarian(cost);
  PartMatching m;
  std::vector<bool> gt_used(ng, false);
  for (size_t i = 0; i < np; ++i) {
    if (assign[i] < 0) {
      m.unmatched_pred.push_back(static_cast<int>(i));
      continue;
    }
    m.pairs.emplace_back(static_cast<int>(i), assign[i]);
    m.total_cost += cost[i][assign[i]];
    gt_used[assign[i]] = true;
  }
  for (size_t j = 0; j < ng; ++j) {
    if (!gt_used[j]) m.unmatched_gt.push_back(static_cast<int>(j));
  }
  return m;
}

double part_miou(const PartMatching& matching, const ArticulatedObject& pred,
                 const ArticulatedObject& gt) {
  const size_t n = std::max(pred.links.size(), gt.links.size());
  if (n == 0) return 1.0;
  double sum = 0.0;
  for (const auto& [p, g] : matching.pairs) {
    sum += aabb_iou(pred.links[p].aabb, gt.links[g].aabb);
  }
  return sum / static_cast<double>(n);
}

JointCorrespondence match_joints(const PartMatching& matching, const ArticulatedObject& pred,
                                 const ArticulatedObject& gt) {
  std::vector<int> gt_of_pred_link(pred.links.size(), -1);
  for (const auto& [p, g] : matching.pairs) gt_of_pred_link[p] = g;
  std::vector<int> gt_joint_of_child(gt.links.size(), -1);
  for (size_t j = 0; j < gt.joints.size(); ++j) {
    const int c = link_index(gt, gt.joints[j].child);
    if (c >= 0) gt_joint_of_child[c] = static_cast<int>(j);
  }
  JointCorrespondence out;
  std::vector<bool> gt_used(gt.joints.size(), false);
  for (size_t j = 0; j < pred.joints.size(); ++j) {
    const int pc = link_index(pred, pred.joints[j].child);
    const int gc = pc >= 0 ? gt_of_pred_link[pc] : -1;
    const int gj = gc >= 0 ? gt_joint_of_child[gc] : -1;
    if (gj >= 0 && !gt_used[gj]) {
      gt_used[gj] = true;
      out.pairs.emplace_back(static_cast<int>(j), gj);
    } else {
      ++out.unmatched_pred;
    }
  }
  out.unmatched_gt = static_cast<int>(std::count(gt_used.begin(), gt_used.end(), false));
  return out;
}

std::optional<double> joint_type_acc(const JointCorrespondence& joints,
                                     const ArticulatedObject& pred,
                                     const ArticulatedObject& gt) {
  const size_t n = std::max(pred.joints.size(), gt.joints.size());
  if (n == 0) return std::nullopt;
  int correct = 0;
  for (const auto& [p, g] : joints.pairs) {
    if (pred.joints[p].kind == gt.joints[g].kind) ++correct;
  }
  return correct / static_cast<double>(n);
}

double axis_angle_err(const Vec3& a_p, const Vec3& a_g) {
  require_unit(a_p, "predicted axis");
  require_unit(a_g, "ground-truth axis");
  const double d = std::clamp(a_p.dot(a_g), -1.0, 1.0);
  return std::min(std::acos(d), std::acos(-d));
}

double pivot_err(const Vec3& x_p, const Vec3& a_p, const Vec3& x_g, const Vec3& a_g) {
  const Vec3 p = x_p - x_g;
  const Vec3 cross = a_p.cross(a_g);
  const double cn = cross.norm();
  if (cn < kParallelTol) {
    const Vec3 dir = a_g.normalized();
    return (p - p.dot(dir) * dir).norm();
  }
  return std::abs(p.dot(cross)) / cn;
}

double range_iou(Interval r_p, Interval r_g) {
  r_p = ordered(r_p);
  r_g = ordered(r_g);
  const Interval neg{-r_p.hi, -r_p.lo};
  return std::max(interval_iou(r_p, r_g), interval_iou(neg, r_g));
}

int graph_acc(const ArticulatedObject& pred, const ArticulatedObject& gt) {
  const KinematicGraph gp = build_graph(pred);
  const KinematicGraph gg = build_graph(gt);
  if (gp.nodes.size() != gg.nodes.size()) return 0;
  return canonical(gp, gp.root) == canonical(gg, gg.root) ? 1 : 0;
}

ObjectMetrics evaluate_object(const ArticulatedObject& pred_in, const ArticulatedObject& gt,
                              const UpAxisMap& up) {
  const ArticulatedObject pred = align(pred_in, gt, up);
  ObjectMetrics m;
  const PartMatching parts = match_parts(pred, gt);
  m.miou = part_miou(parts, pred, gt);
  const JointCorrespondence joints = match_joints(parts, pred, gt);
  m.type_acc = joint_type_acc(joints, pred, gt);
  std::vector<double> axis, pivot, range;
  for (const auto& [p, g] : joints.pairs) {
    const Joint& jp = pred.joints[p];
    const Joint& jg = gt.joints[g];
    axis.push_back(axis_angle_err(jp.axis_dir, jg.axis_dir));
    if (jp.axis_origin && jg.axis_origin) {
      pivot.push_back(pivot_err(*jp.axis_origin, jp.axis_dir, *jg.axis_origin, jg.axis_dir));
    }
    if (jp.kind == jg.kind && jp.limit && jg.limit) {
      range.push_back(range_iou(*jp.limit, *jg.limit));
    }
  }
  m.axis_err = mean(axis);
  m.pivot_err = mean(pivot);
  m.range_iou = mean(range);
  m.graph_acc = graph_acc(pred, gt);
  return m;
}

EvalReport evaluate(const std::vector<EvalCase>& cases, const UpAxisMap& up) {
  std::vector<ObjectMetrics> objects(cases.size());
  for (const EvalCase& c : cases) {
    for (const auto* o : {&c.pred, &c.gt}) {
      if (o->category && *o->category != c.category) {
        raise(ErrorCode::kCategoryMismatch, "object '" + c.id + "' is labeled '" + c.category +
                                                "' but carries category '" + *o->category + "'");
      }
    }
  }
  const int n = static_cast<int>(cases.size());
  std::vector<std::optional<Error>> failures(cases.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      objects[i] = evaluate_object(cases[i].pred, cases[i].gt, up);
    } catch (const Error& e) {
      failures[i] = e;
    }
    objects[i].id = cases[i].id;
    objects[i].category = cases[i].category;
  }
  for (int i = 0; i < n; ++i) {
    if (failures[i]) raise(failures[i]->code(), "object '" + cases[i].id + "': " + failures[i]->what());
  }
  return aggregate(std::move(objects));
}

namespace {

MetricSummary summarize(const std::vector<const ObjectMetrics*>& members) {
  MetricSummary s;
  s.count = static_cast<int>(members.size());
  std::vector<double> miou, type, axis, pivot, range, graph;
  for (const ObjectMetrics* m : members) {
    miou.push_back(m->miou);
    graph.push_back(m->graph_acc);
    if (m->type_acc) type.push_back(*m->type_acc);
    if (m->axis_err) axis.push_back(*m->axis_err);
    if (m->pivot_err) pivot.push_back(*m->pivot_err);
    if (m->range_iou) range.push_back(*m->range_iou);
  }
  s.miou = mean(miou);
  s.type_acc = mean(type);
  s.axis_err = mean(axis);
  s.pivot_err = mean(pivot);
  s.range_iou = mean(range);
  s.graph_acc = mean(graph);
  return s;
}

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json summary_json(const MetricSummary& s) {
  return {{"count", s.count},         {"miou", opt(s.miou)},
          {"type_acc", opt(s.type_acc)}, {"axis_err", opt(s.axis_err)},
          {"pivot_err", opt(s.pivot_err)}, {"range_iou", opt(s.range_iou)},
          {"graph_acc", opt(s.graph_acc)}};
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

}  // namespace

EvalReport aggregate(std::vector<ObjectMetrics> objects) {
  EvalReport report;
  std::stable_sort(objects.begin(), objects.end(), [](const auto& a, const auto& b) {
    return a.category != b.category ? a.category < b.category : a.id < b.id;
  });
  report.objects = std::move(objects);
  std::map<std::string, std::vector<const ObjectMetrics*>> groups;
  for (const ObjectMetrics& m : report.objects) groups[m.category].push_back(&m);
  std::vector<double> miou, type, axis, pivot, range, graph;
  for (const auto& [name, members] : groups) {
    const MetricSummary s = summarize(members);
    report.categories[name] = s;
    if (s.miou) miou.push_back(*s.miou);
    if (s.type_acc) type.push_back(*s.type_acc);
    if (s.axis_err) axis.push_back(*s.axis_err);
    if (s.pivot_err) pivot.push_back(*s.pivot_err);
    if (s.range_iou) range.push_back(*s.range_iou);
    if (s.graph_acc) graph.push_back(*s.graph_acc);
  }
  report.overall.count = static_cast<int>(report.objects.size());
  report.overall.miou = mean(miou);
  report.overall.type_acc = mean(type);
  report.overall.axis_err = mean(axis);
  report.overall.pivot_err = mean(pivot);
  report.overall.range_iou = mean(range);
  report.overall.graph_acc = mean(graph);
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["objects"] = nlohmann::json::array();
  for (const ObjectMetrics& m : objects) {
    j["objects"].push_back({{"id", m.id},
                            {"category", m.category},
                            {"miou", m.miou},
                            {"type_acc", opt(m.type_acc)},
                            {"axis_err", opt(m.axis_err)},
                            {"pivot_err", opt(m.pivot_err)},
                            {"range_iou", opt(m.range_iou)},
                            {"graph_acc", m.graph_acc}});
  }
  j["categories"] = nlohmann::json::object();
  for (const auto& [name, s] : categories) j["categories"][name] = summary_json(s);
  j["overall"] = summary_json(overall);
  return j.dump(2);
}

std::string EvalReport::to_table() const {
  std::ostringstream out;
  char buf[256];
  auto row = [&](const std::string& name, const MetricSummary& s) {
    std::snprintf(buf, sizeof(buf), "%-16s %5d %8s %8s %13s %14s %10s %9s\n", name.c_str(),
                  s.count, cell(s.miou).c_str(), cell(s.type_acc).c_str(),
                  cell(s.axis_err).c_str(), cell(s.pivot_err).c_str(),
                  cell(s.range_iou).c_str(), cell(s.graph_acc).c_str());
    out << buf;
  };
  std::snprintf(buf, sizeof(buf), "%-16s %5s %8s %8s %13s %14s %10s %9s\n", "Category", "N",
                "mIoU", "TypeAcc", "AxisErr(rad)", "PivotErr", "RangeIoU", "GraphAcc");
  out << buf;
  for (const auto& [name, s] : categories) row(name, s);
  row("Overall", overall);
  return out.str();
}

}  // namespace artkit
