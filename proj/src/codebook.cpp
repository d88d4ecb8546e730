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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "artkit/codec.hpp"

namespace artkit {
namespace {

constexpr int kCircleSamples = 24;
constexpr int kFibonacciCandidates = 512;
constexpr double kUnitTol = 1e-6;

// cos/sin of k * 15 degrees, exact at multiples of 90 degrees.
std::pair<double, double> circle_point(int k) {
  switch (k % kCircleSamples) {
    case 0:
      return {1.0, 0.0};
    case 6:
      return {0.0, 1.0};
    case 12:
      return {-1.0, 0.0};
    case 18:
      return {0.0, -1.0};
    default: {
      const double a = 2.0 * kPi * k / kCircleSamples;
      return {std::cos(a), std::sin(a)};
    }
  }
}

bool is_coordinate_axis(int k) { return k % (kCircleSamples / 4) == 0; }

}  // namespace

std::string_view to_string(AxisSource source) {
  switch (source) {
    case AxisSource::kCircleXY:
      return "circle-xy";
    case AxisSource::kCircleYZ:
      return "circle-yz";
    case AxisSource::kCircleXZ:
      return "circle-xz";
    case AxisSource::kFibonacci:
      return "fibonacci";
  }
  return "unknown";
}

AxisCodebook AxisCodebook::build() {
  AxisCodebook book;
  auto add = [&](const Vec3& v, AxisSource s) {
    book.entries_.push_back(v);
    book.sources_.push_back(s);
  };
  // Signed axes first, tagged with the first circle that contains them.
  add(Vec3::UnitX(), AxisSource::kCircleXY);
  add(-Vec3::UnitX(), AxisSource::kCircleXY);
  add(Vec3::UnitY(), AxisSource::kCircleXY);
  add(-Vec3::UnitY(), AxisSource::kCircleXY);
  add(Vec3::UnitZ(), AxisSource::kCircleYZ);
  add(-Vec3::UnitZ(), AxisSource::kCircleYZ);
  for (int k = 0; k < kCircleSamples; ++k) {
    if (is_coordinate_axis(k)) continue;
    const auto [c, s] = circle_point(k);
    add(Vec3(c, s, 0.0), AxisSource::kCircleXY);
  }
  for (int k = 0; k < kCircleSamples; ++k) {
    if (is_coordinate_axis(k)) continue;
    const auto [c, s] = circle_point(k);
    add(Vec3(0.0, c, s), AxisSource::kCircleYZ);
  }
  for (int k = 0; k < kCircleSamples; ++k) {
    if (is_coordinate_axis(k)) continue;
    const auto [c, s] = circle_point(k);
    add(Vec3(c, 0.0, s), AxisSource::kCircleXZ);
  }

  std::vector<Vec3> candidates;
  candidates.reserve(kFibonacciCandidates);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < kFibonacciCandidates; ++i) {
    const double y = 1.0 - (i + 0.5) * 2.0 / kFibonacciCandidates;
    const double r = std::sqrt(1.0 - y * y);
    const double phi = golden * i;
    candidates.emplace_back(r * std::cos(phi), y, r * std::sin(phi));
  }

  // Farthest-point sampling by angle. Tracking the largest dot product to
  // the selected set is equivalent to tracking the smallest angle.
  std::vector<double> nearest(candidates.size(), -1.0);
  auto absorb = [&](const Vec3& v) {
    for (size_t i = 0; i < candidates.size(); ++i) {
      nearest[i] = std::max(nearest[i], candidates[i].dot(v));
    }
  };
  for (const Vec3& e : book.entries_) absorb(e);
  while (book.size() < kDirectionCount) {
    size_t best = 0;
    for (size_t i = 1; i < candidates.size(); ++i) {
      if (nearest[i] < nearest[best]) best = i;
    }
    add(candidates[best], AxisSource::kFibonacci);
    absorb(candidates[best]);
    nearest[best] = std::numeric_limits<double>::infinity();
  }
  return book;
}

const AxisCodebook& AxisCodebook::standard() {
  static const AxisCodebook book = build();
  return book;
}

const Vec3& AxisCodebook::entry(int code) const {
  if (code < 0 || code >= size()) {
    raise(ErrorCode::kBinOutOfRange,
          "direction code " + std::to_string(code) + " outside [0, " +
              std::to_string(size() - 1) + "]");
  }
  return entries_[code];
}

int AxisCodebook::encode(const Vec3& dir) const {
  const double n = dir.norm();
  if (!(std::abs(n - 1.0) <= kUnitTol)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "direction has norm %.9g", n);
    raise(ErrorCode::kNonUnitVector, buf);
  }
  int best = 0;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) {
    const double d = entries_[i].dot(dir);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

std::string AxisCodebook::to_csv() const {
  std::string out = "index,x,y,z,source\n";
  char buf[128];
  for (int i = 0; i < size(); ++i) {
    const Vec3& e = entries_[i];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,", i, e.x(), e.y(), e.z());
    out += buf;
    out += to_string(sources_[i]);
    out += '\n';
  }
  return out;
}

int encode_axis(const Vec3& dir, const AxisCodebook& codebook) {
  return codebook.encode(dir);
}

}  // namespace artkit
