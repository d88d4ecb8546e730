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

// Quantized articulation scripts.
//
// Boxes and joint origins live on a 128-bin grid over [-1, 1] (box minima
// floor, maxima ceil, origins round). Rotation limits use 48 bins over
// [-2pi, 2pi], translation limits 64 bins over [-2, 2], and directions index
// a fixed 128-entry codebook. Token vocabularies:
//
//   <P_0>..<P_128>   <D_0>..<D_127>   <LR_0>..<LR_48>   <LT_0>..<LT_64>

#ifndef ARTKIT_CODEC_HPP_
#define ARTKIT_CODEC_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artkit/error.hpp"
#include "artkit/kinematics.hpp"

namespace artkit {

inline constexpr int kPositionBins = 128;
inline constexpr int kDirectionCount = 128;
inline constexpr int kRotationBins = 48;
inline constexpr int kTranslationBins = 64;
inline constexpr int kMaxScriptParts = 128;

using Bins3 = std::array<int, 3>;
using Bins2 = std::array<int, 2>;

struct QuantBox {
  Bins3 min_bins{};
  Bins3 max_bins{};

  bool operator==(const QuantBox&) const = default;
};

struct QuantJoint {
  JointKind kind = JointKind::kRevolute;
  int parent = 0;
  int child = 0;
  int axis_code = 0;
  std::optional<Bins3> origin_bins;
  /// Rotation bins for revolute joints, translation bins for prismatic and
  /// screw joints. Always ordered lo <= hi.
  std::optional<Bins2> limit_bins;

  bool operator==(const QuantJoint&) const = default;
};

// ---- scalar quantizers ----------------------------------------------------
// Inputs outside the representable range are clamped and a warning is
// recorded.

QuantBox quantize_box(const Aabb& box, Warnings* warnings = nullptr);
Aabb dequantize_box(const QuantBox& q);

Bins3 quantize_origin(const Vec3& p, Warnings* warnings = nullptr);
Vec3 dequantize_origin(const Bins3& bins);

int quantize_rot_limit(double theta, Warnings* warnings = nullptr);
double dequantize_rot_limit(int bin);

int quantize_trans_limit(double d, Warnings* warnings = nullptr);
double dequantize_trans_limit(int bin);

// ---- axis codebook --------------------------------------------------------

enum class AxisSource { kCircleXY, kCircleYZ, kCircleXZ, kFibonacci };

std::string_view to_string(AxisSource source);

class AxisCodebook {
 public:
  /// Entries 0..5 are +X, -X, +Y, -Y, +Z, -Z. Then the remaining samples of
  /// the XY, YZ and XZ circles at 15 degree pitch, then farthest-point picks
  /// from a 512-point Fibonacci sphere until 128 entries exist.
  static AxisCodebook build();
  /// Process-wide instance, built on first use.
  static const AxisCodebook& standard();

  int size() const { return static_cast<int>(entries_.size()); }
  const Vec3& entry(int code) const;
  AxisSource source(int code) const { return sources_.at(code); }
  const std::vector<Vec3>& entries() const { return entries_; }

  /// Index of the entry with the largest dot product; lowest index on ties.
  /// Raises NonUnitVector when |dir| is not 1 within 1e-6.
  int encode(const Vec3& dir) const;
  /// Raises BinOutOfRange.
  const Vec3& decode(int code) const { return entry(code); }

  /// `index,x,y,z,source` lines with a header row.
  std::string to_csv() const;

 private:
  std::vector<Vec3> entries_;
  std::vector<AxisSource> sources_;
};

int encode_axis(const Vec3& dir, const AxisCodebook& codebook);

// ---- scripts --------------------------------------------------------------

struct ArticulationScript {
  std::vector<QuantBox> boxes;
  std::vector<QuantJoint> joints;
  /// Clamping diagnostics from encoding; not part of value equality.
  std::vector<std::string> warnings;

  bool operator==(const ArticulationScript& other) const {
    return boxes == other.boxes && joints == other.joints;
  }
};

/// Token form uses `<P_k>`-style tokens and `<|layout_start|>` delimiters;
/// human form uses bare integers and `<|layout_s|>` delimiters.
enum class ScriptForm { kTokens, kHuman };

/// Quantizes every part and joint. Boxes are ordered by quantized minimum
/// (z, then y, then x) and re-indexed; joints are ordered by child index.
/// Raises TooManyParts above 128 parts and UnsupportedJointType for fixed
/// joints.
ArticulationScript encode_object(const ArticulatedObject& object,
                                 const AxisCodebook& codebook = AxisCodebook::standard());

std::string render_layout(const ArticulationScript& script,
                          ScriptForm form = ScriptForm::kTokens);
std::string render_articulation(const ArticulationScript& script,
                                ScriptForm form = ScriptForm::kTokens);
/// Layout block, newline, articulation block.
std::string render(const ArticulationScript& script, ScriptForm form = ScriptForm::kTokens);

/// Grammar-level parse of either rendering; either block may be absent.
/// Raises SyntaxError (with line:column and the expected token),
/// BinOutOfRange or IndexOutOfRange.
ArticulationScript parse_script_text(std::string_view text);

/// Dequantizes into a validated object: box edges for parts, bin values for
/// origins and limits, codebook entries for axes. Graph failures are raised
/// as GraphInvalid.
ArticulatedObject decode_script(const ArticulationScript& script,
                                const AxisCodebook& codebook = AxisCodebook::standard());

ArticulatedObject parse_script(std::string_view text,
                               const AxisCodebook& codebook = AxisCodebook::standard());

}  // namespace artkit

#endif  // ARTKIT_CODEC_HPP_
