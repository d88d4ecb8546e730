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
#include <cctype>
#include <map>
#include <numeric>

#include "artkit/codec.hpp"

namespace artkit {
namespace {

// ---- encoding ---------------------------------------------------------------

QuantJoint quantize_joint(const Joint& j, const AxisCodebook& codebook,
                          Warnings* warnings) {
  QuantJoint q;
  q.kind = j.kind;
  q.axis_code = codebook.encode(j.axis_dir);
  if (has_axis_origin(j.kind) && j.axis_origin) {
    q.origin_bins = quantize_origin(*j.axis_origin, warnings);
  }
  if (has_limit(j.kind) && j.limit) {
    Bins2 bins;
    if (is_translational(j.kind)) {
      bins = {quantize_trans_limit(j.limit->lo, warnings),
              quantize_trans_limit(j.limit->hi, warnings)};
    } else {
      bins = {quantize_rot_limit(j.limit->lo, warnings),
              quantize_rot_limit(j.limit->hi, warnings)};
    }
    if (bins[0] > bins[1]) std::swap(bins[0], bins[1]);
    q.limit_bins = bins;
  }
  return q;
}

// Sort key for a part: quantized minimum in z, y, x order, then the maximum,
// then the quantized joint that attaches it (parent index excluded), so the
// order does not depend on the input list order unless parts are exact
// duplicates.
std::vector<int> part_key(const QuantBox& box, const QuantJoint* incoming) {
  std::vector<int> key = {box.min_bins[2], box.min_bins[1], box.min_bins[0],
                          box.max_bins[2], box.max_bins[1], box.max_bins[0]};
  if (incoming == nullptr) {
    key.push_back(-1);
    return key;
  }
  key.push_back(static_cast<int>(incoming->kind));
  key.push_back(incoming->axis_code);
  const Bins3 o = incoming->origin_bins.value_or(Bins3{-1, -1, -1});
  key.insert(key.end(), o.begin(), o.end());
  const Bins2 l = incoming->limit_bins.value_or(Bins2{-1, -1});
  key.insert(key.end(), l.begin(), l.end());
  return key;
}

// ---- rendering --------------------------------------------------------------

struct Style {
  const char* layout_open;
  const char* layout_close;
  const char* art_open;
  const char* art_close;
  const char* item_indent;   // before `bbox_i`
  const char* field_indent;  // before each field line
  const char* assign;        // between name and constructor
  const char* line_sep;      // between field lines
  bool tokens;
};

constexpr Style kTokenStyle{"<|layout_start|>", "<|layout_end|>", "<|art_start|>",
                            "<|art_end|>", "    ", "        ", " = ", ", \n", true};
constexpr Style kHumanStyle{"<|layout_s|>", "<|layout_e|>", "<|art_s|>", "<|art_e|>",
                            "", "    ", "=", ",\n", false};

const Style& style_of(ScriptForm form) {
  return form == ScriptForm::kTokens ? kTokenStyle : kHumanStyle;
}

std::string value(const Style& s, const char* prefix, int v) {
  if (!s.tokens) return std::to_string(v);
  return std::string("<") + prefix + "_" + std::to_string(v) + ">";
}

std::string joint_class(JointKind kind) {
  switch (kind) {
    case JointKind::kRevolute:
      return "RevoluteJoint";
    case JointKind::kContinuous:
      return "ContinuousJoint";
    case JointKind::kPrismatic:
      return "PrismaticJoint";
    case JointKind::kScrew:
      return "ScrewJoint";
    case JointKind::kFixed:
      break;
  }
  raise(ErrorCode::kUnsupportedJointType, "fixed joints have no script form");
}

std::string render_item(const Style& s, const std::string& name, const std::string& cls,
                        const std::vector<std::string>& lines) {
  std::string out = std::string(s.item_indent) + name + s.assign + cls + "(\n";
  for (size_t i = 0; i < lines.size(); ++i) {
    out += s.field_indent + lines[i];
    out += i + 1 < lines.size() ? s.line_sep : "\n";
  }
  out += std::string(s.item_indent) + ")\n";
  return out;
}

// ---- parsing ----------------------------------------------------------------

enum class Tok { kDelimiter, kValue, kIdent, kInt, kPunct, kEnd };

struct Token {
  Tok type = Tok::kEnd;
  std::string text;    // delimiter name, value prefix, identifier, or punct
  long long number = 0;
  int line = 1;
  int col = 1;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::kDelimiter:
      return "'<|" + t.text + "|>'";
    case Tok::kValue:
      return "'<" + t.text + "_" + std::to_string(t.number) + ">'";
    case Tok::kIdent:
      return "'" + t.text + "'";
    case Tok::kInt:
      return "'" + std::to_string(t.number) + "'";
    case Tok::kPunct:
      return "'" + t.text + "'";
    case Tok::kEnd:
      return "end of input";
  }
  return "?";
}

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  raise(ErrorCode::kSyntaxError,
        "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

// Integers are capped so that absurd literals still report as out of range.
constexpr long long kIntCap = 1000000000LL;

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto read_int = [&](size_t at, size_t* end) {
    long long v = 0;
    size_t k = at;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
      v = std::min(kIntCap, v * 10 + (text[k] - '0'));
      ++k;
    }
    *end = k;
    return v;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '|') {
      const size_t close = text.find("|>", i + 2);
      if (close == std::string_view::npos) syntax_error(line, col, "unterminated '<|'");
      t.type = Tok::kDelimiter;
      t.text = std::string(text.substr(i + 2, close - i - 2));
      out.push_back(t);
      advance(close + 2 - i);
      continue;
    }
    if (c == '<') {
      size_t k = i + 1;
      while (k < text.size() && std::isupper(static_cast<unsigned char>(text[k]))) ++k;
      if (k == i + 1 || k >= text.size() || text[k] != '_') {
        syntax_error(line, col, "malformed value token");
      }
      size_t end = 0;
      t.number = read_int(k + 1, &end);
      if (end == k + 1 || end >= text.size() || text[end] != '>') {
        syntax_error(line, col, "malformed value token");
      }
      t.type = Tok::kValue;
      t.text = std::string(text.substr(i + 1, k - i - 1));
      out.push_back(t);
      advance(end + 1 - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t end = 0;
      t.type = Tok::kInt;
      t.number = read_int(i, &end);
      out.push_back(t);
      advance(end - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t k = i;
      while (k < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[k])) || text[k] == '_')) {
        ++k;
      }
      t.type = Tok::kIdent;
      t.text = std::string(text.substr(i, k - i));
      out.push_back(t);
      advance(k - i);
      continue;
    }
    if (std::string_view("=(),[]").find(c) != std::string_view::npos) {
      t.type = Tok::kPunct;
      t.text = std::string(1, c);
      out.push_back(t);
      advance(1);
      continue;
    }
    syntax_error(line, col, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

struct FieldSpec {
  const char* prefix;
  int max;
};
constexpr FieldSpec kPos{"P", kPositionBins};
constexpr FieldSpec kDir{"D", kDirectionCount - 1};
constexpr FieldSpec kRot{"LR", kRotationBins};
constexpr FieldSpec kTrans{"LT", kTranslationBins};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ArticulationScript run() {
    ArticulationScript script;
    bool saw_layout = false;
    bool saw_art = false;
    if (at_delimiter("layout_s", "layout_start")) {
      ++pos_;
      saw_layout = true;
      while (peek().type == Tok::kIdent) script.boxes.push_back(box(script.boxes.size()));
      expect_delimiter("layout_e", "layout_end");
    }
    if (at_delimiter("art_s", "art_start")) {
      ++pos_;
      saw_art = true;
      while (peek().type == Tok::kIdent) {
        script.joints.push_back(joint(script.joints.size()));
      }
      expect_delimiter("art_e", "art_end");
    }
    if (peek().type != Tok::kEnd || (!saw_layout && !saw_art)) {
      fail(saw_layout ? "'<|art_start|>' or end of input" : "'<|layout_start|>' or '<|art_start|>'");
    }
    if (saw_layout) {
      for (const auto& [j, where] : joint_sites_) {
        const QuantJoint& q = script.joints[j];
        for (int idx : {q.parent, q.child}) {
          if (idx >= static_cast<int>(script.boxes.size())) {
            raise(ErrorCode::kIndexOutOfRange,
                  where + ": box index " + std::to_string(idx) + " but only " +
                      std::to_string(script.boxes.size()) + " boxes");
          }
        }
      }
    }
    return script;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    syntax_error(t.line, t.col, "expected " + expected + ", found " + describe(t));
  }

  std::string here() const {
    return "line " + std::to_string(peek().line) + ", column " + std::to_string(peek().col);
  }

  bool at_delimiter(const char* a, const char* b) const {
    return peek().type == Tok::kDelimiter && (peek().text == a || peek().text == b);
  }

  void expect_delimiter(const char* a, const char* b) {
    if (!at_delimiter(a, b)) fail(std::string("'<|") + b + "|>'");
    ++pos_;
  }

  void expect_punct(char c) {
    if (peek().type != Tok::kPunct || peek().text[0] != c) {
      fail(std::string("'") + c + "'");
    }
    ++pos_;
  }

  void expect_ident(const std::string& name) {
    if (peek().type != Tok::kIdent || peek().text != name) fail("'" + name + "'");
    ++pos_;
  }

  int field(const FieldSpec& spec) {
    const Token& t = peek();
    const bool typed = t.type == Tok::kValue && t.text == spec.prefix;
    if (!typed && t.type != Tok::kInt) {
      fail(std::string("'<") + spec.prefix + "_k>' or an integer");
    }
    if (t.number > spec.max) {
      raise(ErrorCode::kBinOutOfRange, here() + ": " + describe(t) + " outside [0, " +
                                           std::to_string(spec.max) + "]");
    }
    ++pos_;
    return static_cast<int>(t.number);
  }

  int index() {
    if (peek().type != Tok::kInt) fail("a box index");
    const long long v = peek().number;
    if (v >= kIntCap) raise(ErrorCode::kIndexOutOfRange, here() + ": box index too large");
    ++pos_;
    return static_cast<int>(v);
  }

  template <size_t N>
  std::array<int, N> bracketed(const FieldSpec& spec) {
    std::array<int, N> out{};
    expect_punct('[');
    for (size_t i = 0; i < N; ++i) {
      if (i > 0) expect_punct(',');
      out[i] = field(spec);
    }
    expect_punct(']');
    return out;
  }

  QuantBox box(size_t n) {
    expect_ident("bbox_" + std::to_string(n));
    expect_punct('=');
    expect_ident("BBox");
    expect_punct('(');
    QuantBox b;
    for (int i = 0; i < 6; ++i) {
      if (i > 0) expect_punct(',');
      (i < 3 ? b.min_bins[i] : b.max_bins[i - 3]) = field(kPos);
    }
    expect_punct(')');
    for (int a = 0; a < 3; ++a) {
      if (b.min_bins[a] > b.max_bins[a]) {
        raise(ErrorCode::kBinOutOfRange,
              "bbox_" + std::to_string(n) + ": minimum bin above maximum bin");
      }
    }
    return b;
  }

  QuantJoint joint(size_t n) {
    const std::string name = "joint_" + std::to_string(n);
    const std::string where = here();
    expect_ident(name);
    expect_punct('=');
    QuantJoint q;
    const Token& cls = peek();
    if (cls.type != Tok::kIdent) fail("a joint class");
    if (cls.text == "RevoluteJoint") {
      q.kind = JointKind::kRevolute;
    } else if (cls.text == "ContinuousJoint") {
      q.kind = JointKind::kContinuous;
    } else if (cls.text == "PrismaticJoint") {
      q.kind = JointKind::kPrismatic;
    } else if (cls.text == "ScrewJoint") {
      q.kind = JointKind::kScrew;
    } else {
      fail("'RevoluteJoint', 'ContinuousJoint', 'ScrewJoint' or 'PrismaticJoint'");
    }
    ++pos_;
    expect_punct('(');
    q.parent = index();
    expect_punct(',');
    q.child = index();
    expect_punct(',');
    q.axis_code = field(kDir);
    if (has_axis_origin(q.kind)) {
      expect_punct(',');
      q.origin_bins = bracketed<3>(kPos);
    }
    if (has_limit(q.kind)) {
      expect_punct(',');
      q.limit_bins = bracketed<2>(is_translational(q.kind) ? kTrans : kRot);
    }
    expect_punct(')');
    joint_sites_.emplace_back(n, where);
    return q;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::pair<size_t, std::string>> joint_sites_;
};

}  // namespace

ArticulationScript encode_object(const ArticulatedObject& object,
                                 const AxisCodebook& codebook) {
  if (object.links.size() > static_cast<size_t>(kMaxScriptParts)) {
    raise(ErrorCode::kTooManyParts, std::to_string(object.links.size()) +
                                        " parts exceed the " +
                                        std::to_string(kMaxScriptParts) + "-part vocabulary");
  }
  ArticulationScript script;
  std::map<int, size_t> pos_of_id;
  std::vector<QuantBox> boxes;
  for (size_t i = 0; i < object.links.size(); ++i) {
    pos_of_id[object.links[i].id] = i;
    boxes.push_back(quantize_box(object.links[i].aabb, &script.warnings));
  }

  std::vector<QuantJoint> joints;
  std::vector<const QuantJoint*> incoming(object.links.size(), nullptr);
  joints.reserve(object.joints.size());
  for (const Joint& j : object.joints) {
    if (j.kind == JointKind::kFixed) {
      raise(ErrorCode::kUnsupportedJointType,
            "joint " + std::to_string(j.id) + " is fixed; simplify the object first");
    }
    auto p = pos_of_id.find(j.parent);
    auto c = pos_of_id.find(j.child);
    if (p == pos_of_id.end() || c == pos_of_id.end()) {
      raise(ErrorCode::kDanglingReference,
            "joint " + std::to_string(j.id) + " references a missing link");
    }
    QuantJoint q = quantize_joint(j, codebook, &script.warnings);
    q.parent = static_cast<int>(p->second);
    q.child = static_cast<int>(c->second);
    joints.push_back(q);
  }
  for (const QuantJoint& q : joints) incoming[q.child] = &q;

  std::vector<size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> keys;
  for (size_t i = 0; i < boxes.size(); ++i) keys.push_back(part_key(boxes[i], incoming[i]));
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return object.links[a].id < object.links[b].id;
  });
  std::vector<int> new_index(boxes.size());
  for (size_t k = 0; k < order.size(); ++k) {
    new_index[order[k]] = static_cast<int>(k);
    script.boxes.push_back(boxes[order[k]]);
  }
  for (QuantJoint& q : joints) {
    q.parent = new_index[q.parent];
    q.child = new_index[q.child];
  }
  std::stable_sort(joints.begin(), joints.end(), [](const QuantJoint& a, const QuantJoint& b) {
    return a.child != b.child ? a.child < b.child : a.parent < b.parent;
  });
  script.joints = std::move(joints);
  return script;
}

std::string render_layout(const ArticulationScript& script, ScriptForm form) {
  const Style& s = style_of(form);
  std::string out = std::string(s.layout_open) + "\n";
  for (size_t i = 0; i < script.boxes.size(); ++i) {
    const QuantBox& b = script.boxes[i];
    auto row = [&](const Bins3& v) {
      return value(s, "P", v[0]) + ", " + value(s, "P", v[1]) + ", " + value(s, "P", v[2]);
    };
    out += render_item(s, "bbox_" + std::to_string(i), "BBox", {row(b.min_bins), row(b.max_bins)});
  }
  out += s.layout_close;
  return out;
}

std::string render_articulation(const ArticulationScript& script, ScriptForm form) {
  const Style& s = style_of(form);
  std::string out = std::string(s.art_open) + "\n";
  for (size_t i = 0; i < script.joints.size(); ++i) {
    const QuantJoint& q = script.joints[i];
    std::vector<std::string> lines;
    lines.push_back(std::to_string(q.parent) + ", " + std::to_string(q.child) + ", " +
                    value(s, "D", q.axis_code));
    if (q.origin_bins) {
      const Bins3& o = *q.origin_bins;
      lines.push_back("[" + value(s, "P", o[0]) + ", " + value(s, "P", o[1]) + ", " +
                      value(s, "P", o[2]) + "]");
    }
    if (q.limit_bins) {
      const char* prefix = is_translational(q.kind) ? "LT" : "LR";
      lines.push_back("[" + value(s, prefix, (*q.limit_bins)[0]) + ", " +
                      value(s, prefix, (*q.limit_bins)[1]) + "]");
    }
    out += render_item(s, "joint_" + std::to_string(i), joint_class(q.kind), lines);
  }
  out += s.art_close;
  return out;
}

std::string render(const ArticulationScript& script, ScriptForm form) {
  return render_layout(script, form) + "\n" + render_articulation(script, form);
}

ArticulationScript parse_script_text(std::string_view text) {
  return Parser(tokenize(text)).run();
}

ArticulatedObject decode_script(const ArticulationScript& script,
                                const AxisCodebook& codebook) {
  ArticulatedObject object;
  for (size_t i = 0; i < script.boxes.size(); ++i) {
    Link link;
    link.id = static_cast<int>(i);
    link.name = "bbox_" + std::to_string(i);
    link.aabb = dequantize_box(script.boxes[i]);
    object.links.push_back(std::move(link));
  }
  for (size_t i = 0; i < script.joints.size(); ++i) {
    const QuantJoint& q = script.joints[i];
    for (int idx : {q.parent, q.child}) {
      if (idx < 0 || idx >= static_cast<int>(script.boxes.size())) {
        raise(ErrorCode::kIndexOutOfRange, "joint_" + std::to_string(i) + " references box " +
                                               std::to_string(idx));
      }
    }
    Joint j;
    j.id = static_cast<int>(i);
    j.name = "joint_" + std::to_string(i);
    j.kind = q.kind;
    j.parent = q.parent;
    j.child = q.child;
    j.axis_dir = codebook.decode(q.axis_code);
    if (has_axis_origin(q.kind)) {
      j.axis_origin = dequantize_origin(q.origin_bins.value_or(Bins3{64, 64, 64}));
    }
    if (has_limit(q.kind)) {
      const Bins2 b = q.limit_bins.value_or(is_translational(q.kind) ? Bins2{32, 32}
                                                                      : Bins2{24, 24});
      j.limit = is_translational(q.kind)
                    ? Interval{dequantize_trans_limit(b[0]), dequantize_trans_limit(b[1])}
                    : Interval{dequantize_rot_limit(b[0]), dequantize_rot_limit(b[1])};
    }
    object.joints.push_back(std::move(j));
  }
  try {
    validate(object);
  } catch (const Error& e) {
    raise(ErrorCode::kGraphInvalid, e.what());
  }
  return object;
}

ArticulatedObject parse_script(std::string_view text, const AxisCodebook& codebook) {
  return decode_script(parse_script_text(text), codebook);
}

}  // namespace artkit
