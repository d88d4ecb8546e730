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

#include "artkit/codec.hpp"

namespace artkit {
namespace {

double clamp_with_warning(double v, double lo, double hi, const char* what,
                          Warnings* warnings) {
  if (v >= lo && v <= hi) return v;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s %.6g clamped to [%g, %g]", what, v, lo, hi);
  warn(warnings, buf);
  if (std::isnan(v)) return lo;
  return std::clamp(v, lo, hi);
}

double position_of(int bin) { return bin * 2.0 / kPositionBins - 1.0; }

}  // namespace

QuantBox quantize_box(const Aabb& box, Warnings* warnings) {
  QuantBox q;
  for (int a = 0; a < 3; ++a) {
    const double lo = clamp_with_warning(box.min[a], -1.0, 1.0, "box coordinate", warnings);
    const double hi = clamp_with_warning(box.max[a], -1.0, 1.0, "box coordinate", warnings);
    int kmin = static_cast<int>(std::floor((lo + 1.0) / 2.0 * kPositionBins));
    int kmax = static_cast<int>(std::ceil((hi + 1.0) / 2.0 * kPositionBins));
    // (c + 1) can round across a bin edge; keep the dequantized box
    // enclosing the input.
    if (kmin > 0 && position_of(kmin) > lo) --kmin;
    if (kmax < kPositionBins && position_of(kmax) < hi) ++kmax;
    q.min_bins[a] = std::clamp(kmin, 0, kPositionBins);
    q.max_bins[a] = std::clamp(kmax, 0, kPositionBins);
  }
  return q;
}

Aabb dequantize_box(const QuantBox& q) {
  Aabb box;
  for (int a = 0; a < 3; ++a) {
    box.min[a] = position_of(q.min_bins[a]);
    box.max[a] = position_of(q.max_bins[a]);
  }
  return box;
}

Bins3 quantize_origin(const Vec3& p, Warnings* warnings) {
  Bins3 bins;
  for (int a = 0; a < 3; ++a) {
    const double c = clamp_with_warning(p[a], -1.0, 1.0, "joint origin", warnings);
    bins[a] = std::clamp(static_cast<int>(std::round((c + 1.0) / 2.0 * kPositionBins)), 0,
                         kPositionBins);
  }
  return bins;
}

Vec3 dequantize_origin(const Bins3& bins) {
  return {position_of(bins[0]), position_of(bins[1]), position_of(bins[2])};
}

int quantize_rot_limit(double theta, Warnings* warnings) {
  const double t = clamp_with_warning(theta, -2.0 * kPi, 2.0 * kPi, "rotation limit", warnings);
  return std::clamp(
      static_cast<int>(std::round((t + 2.0 * kPi) / (4.0 * kPi) * kRotationBins)), 0,
      kRotationBins);
}

double dequantize_rot_limit(int bin) {
  return -2.0 * kPi + bin * (4.0 * kPi / kRotationBins);
}

int quantize_trans_limit(double d, Warnings* warnings) {
  const double t = clamp_with_warning(d, -2.0, 2.0, "translation limit", warnings);
  return std::clamp(static_cast<int>(std::round((t + 2.0) / 4.0 * kTranslationBins)), 0,
                    kTranslationBins);
}

double dequantize_trans_limit(int bin) { return -2.0 + bin * 4.0 / kTranslationBins; }

}  // namespace artkit
