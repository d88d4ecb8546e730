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

#include "artkit/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "artkit/error.hpp"

namespace artkit {
namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

[[noreturn]] void fail(const std::string& what) {
  raise(ErrorCode::kMeshLoadFailed, what);
}

// --- PLY -------------------------------------------------------------------

enum class PlyFormat { kAscii, kBinaryLittle, kBinaryBig };

struct PlyProperty {
  std::string name;
  std::string type;        // scalar type, or item type for lists
  std::string count_type;  // empty for scalars
};

struct PlyElement {
  std::string name;
  size_t count = 0;
  std::vector<PlyProperty> properties;
};

struct PlyHeader {
  PlyFormat format = PlyFormat::kAscii;
  std::vector<PlyElement> elements;
};

size_t ply_type_size(const std::string& type) {
  if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
  if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
  if (type == "int" || type == "uint" || type == "int32" || type == "uint32" ||
      type == "float" || type == "float32") {
    return 4;
  }
  if (type == "double" || type == "float64") return 8;
  fail("unknown PLY property type '" + type + "'");
}

PlyHeader read_ply_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("ply", 0) != 0) fail("missing PLY magic");
  PlyHeader header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii") {
        header.format = PlyFormat::kAscii;
      } else if (fmt == "binary_little_endian") {
        header.format = PlyFormat::kBinaryLittle;
      } else if (fmt == "binary_big_endian") {
        header.format = PlyFormat::kBinaryBig;
      } else {
        fail("unsupported PLY format '" + fmt + "'");
      }
    } else if (word == "element") {
      PlyElement e;
      ls >> e.name >> e.count;
      header.elements.push_back(e);
    } else if (word == "property") {
      if (header.elements.empty()) fail("PLY property before element");
      PlyProperty p;
      std::string type;
      ls >> type;
      if (type == "list") {
        ls >> p.count_type >> p.type >> p.name;
      } else {
        p.type = type;
        ls >> p.name;
      }
      header.elements.back().properties.push_back(p);
    } else if (word == "end_header") {
      return header;
    }
  }
  fail("PLY header has no end_header");
}

double read_binary_value(std::istream& in, const std::string& type, bool swap) {
  unsigned char buf[8];
  const size_t n = ply_type_size(type);
  if (!in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n))) {
    fail("truncated binary PLY body");
  }
  if (swap) std::reverse(buf, buf + n);
  auto as = [&](auto v) {
    std::memcpy(&v, buf, sizeof(v));
    return static_cast<double>(v);
  };
  if (type == "char" || type == "int8") return as(int8_t{});
  if (type == "uchar" || type == "uint8") return as(uint8_t{});
  if (type == "short" || type == "int16") return as(int16_t{});
  if (type == "ushort" || type == "uint16") return as(uint16_t{});
  if (type == "int" || type == "int32") return as(int32_t{});
  if (type == "uint" || type == "uint32") return as(uint32_t{});
  if (type == "float" || type == "float32") return as(float{});
  return as(double{});
}

// Reads all elements; each element becomes rows of values (lists flattened
// after their count).
struct PlyData {
  PlyHeader header;
  std::vector<std::vector<std::vector<double>>> rows;  // element -> row -> values
};

PlyData read_ply(std::istream& in) {
  PlyData data;
  data.header = read_ply_header(in);
  const bool binary = data.header.format != PlyFormat::kAscii;
  const bool swap = (data.header.format == PlyFormat::kBinaryBig) ==
                    (std::endian::native == std::endian::little);
  for (const PlyElement& e : data.header.elements) {
    auto& rows = data.rows.emplace_back();
    rows.reserve(e.count);
    for (size_t r = 0; r < e.count; ++r) {
      std::vector<double> values;
      auto next = [&](const std::string& type) {
        if (binary) return read_binary_value(in, type, swap);
        double v;
        if (!(in >> v)) fail("truncated ASCII PLY body");
        return v;
      };
      for (const PlyProperty& p : e.properties) {
        if (p.count_type.empty()) {
          values.push_back(next(p.type));
        } else {
          const double n = next(p.count_type);
          values.push_back(n);
          for (int i = 0; i < static_cast<int>(n); ++i) values.push_back(next(p.type));
        }
      }
      rows.push_back(std::move(values));
    }
  }
  return data;
}

// Position of a scalar property inside a row, assuming all preceding
// properties are scalars.
int scalar_slot(const PlyElement& e, const std::string& name) {
  for (size_t i = 0; i < e.properties.size(); ++i) {
    if (!e.properties[i].count_type.empty()) return -1;
    if (e.properties[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int find_element(const PlyHeader& h, const std::string& name) {
  for (size_t i = 0; i < h.elements.size(); ++i) {
    if (h.elements[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

TriangleMesh read_obj(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x() >> p.y() >> p.z())) {
        fail("bad vertex on OBJ line " + std::to_string(line_no));
      }
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string ref;
      while (ls >> ref) {
        const int idx = std::stoi(ref.substr(0, ref.find('/')));
        const int n = static_cast<int>(mesh.vertices.size());
        const int resolved = idx < 0 ? n + idx : idx - 1;
        if (resolved < 0 || resolved >= n) {
          fail("face index out of range on OBJ line " + std::to_string(line_no));
        }
        poly.push_back(resolved);
      }
      for (size_t i = 2; i < poly.size(); ++i) {
        mesh.triangles.push_back({poly[0], poly[i - 1], poly[i]});
      }
    }
  }
  return mesh;
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

TriangleMesh read_ply_mesh(std::istream& in) {
  const PlyData data = read_ply(in);
  const int ve = find_element(data.header, "vertex");
  if (ve < 0) fail("PLY has no vertex element");
  const PlyElement& vel = data.header.elements[ve];
  const int sx = scalar_slot(vel, "x");
  const int sy = scalar_slot(vel, "y");
  const int sz = scalar_slot(vel, "z");
  if (sx < 0 || sy < 0 || sz < 0) fail("PLY vertex lacks x/y/z");

  TriangleMesh mesh;
  for (const auto& row : data.rows[ve]) mesh.vertices.emplace_back(row[sx], row[sy], row[sz]);

  const int fe = find_element(data.header, "face");
  if (fe >= 0) {
    const PlyElement& fel = data.header.elements[fe];
    // Locate the index list: walk the properties, tracking the flattened
    // offset of each.
    for (const auto& row : data.rows[fe]) {
      size_t offset = 0;
      for (const PlyProperty& p : fel.properties) {
        if (p.count_type.empty()) {
          ++offset;
          continue;
        }
        const int n = static_cast<int>(row[offset]);
        if (p.name == "vertex_indices" || p.name == "vertex_index") {
          const int nv = static_cast<int>(mesh.vertices.size());
          std::vector<int> poly;
          for (int i = 0; i < n; ++i) {
            const int idx = static_cast<int>(row[offset + 1 + i]);
            if (idx < 0 || idx >= nv) fail("PLY face index out of range");
            poly.push_back(idx);
          }
          for (size_t i = 2; i < poly.size(); ++i) {
            mesh.triangles.push_back({poly[0], poly[i - 1], poly[i]});
          }
        }
        offset += 1 + n;
      }
    }
  }
  return mesh;
}

PointCloud read_ply_cloud(std::istream& in) {
  const PlyData data = read_ply(in);
  const int ve = find_element(data.header, "vertex");
  if (ve < 0) fail("PLY has no vertex element");
  const PlyElement& vel = data.header.elements[ve];
  const int s[6] = {scalar_slot(vel, "x"),  scalar_slot(vel, "y"),
                    scalar_slot(vel, "z"),  scalar_slot(vel, "nx"),
                    scalar_slot(vel, "ny"), scalar_slot(vel, "nz")};
  if (s[0] < 0 || s[1] < 0 || s[2] < 0) fail("PLY vertex lacks x/y/z");
  const bool has_normals = s[3] >= 0 && s[4] >= 0 && s[5] >= 0;
  PointCloud cloud;
  for (const auto& row : data.rows[ve]) {
    cloud.points.emplace_back(row[s[0]], row[s[1]], row[s[2]]);
    if (has_normals) cloud.normals.emplace_back(row[s[3]], row[s[4]], row[s[5]]);
  }
  return cloud;
}

void write_ply_cloud(std::ostream& out, const PointCloud& cloud, bool ascii) {
  const bool normals = cloud.normals.size() == cloud.points.size();
  out << "ply\nformat " << (ascii ? "ascii" : "binary_little_endian")
      << " 1.0\nelement vertex " << cloud.points.size()
      << "\nproperty float x\nproperty float y\nproperty float z\n";
  if (normals) out << "property float nx\nproperty float ny\nproperty float nz\n";
  out << "end_header\n";
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    float v[6];
    int n = 0;
    for (int a = 0; a < 3; ++a) v[n++] = static_cast<float>(cloud.points[i][a]);
    if (normals) {
      for (int a = 0; a < 3; ++a) v[n++] = static_cast<float>(cloud.normals[i][a]);
    }
    if (ascii) {
      char buf[32];
      for (int a = 0; a < n; ++a) {
        std::snprintf(buf, sizeof(buf), a ? " %.9g" : "%.9g", v[a]);
        out << buf;
      }
      out << '\n';
    } else {
      for (int a = 0; a < n; ++a) {
        uint32_t bits = std::bit_cast<uint32_t>(v[a]);
        if constexpr (std::endian::native == std::endian::big) {
          bits = ((bits & 0xffu) << 24) | ((bits & 0xff00u) << 8) |
                 ((bits >> 8) & 0xff00u) | (bits >> 24);
        }
        out.write(reinterpret_cast<const char*>(&bits), 4);
      }
    }
  }
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext != ".obj" && ext != ".ply") {
    raise(ErrorCode::kUnsupportedMeshFormat,
          "'" + path.string() + "' is not an OBJ or PLY mesh");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path.string() + "'");
  return ext == ".obj" ? read_obj(in) : read_ply_mesh(in);
}

void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::kIoFailure, "cannot write '" + path.string() + "'");
  write_obj(out, mesh);
  if (!out) raise(ErrorCode::kIoFailure, "write failed for '" + path.string() + "'");
}

PointCloud load_ply_cloud(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path.string() + "'");
  return read_ply_cloud(in);
}

void save_ply_cloud(const std::filesystem::path& path, const PointCloud& cloud,
                    bool ascii) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIoFailure, "cannot write '" + path.string() + "'");
  write_ply_cloud(out, cloud, ascii);
  if (!out) raise(ErrorCode::kIoFailure, "write failed for '" + path.string() + "'");
}

}  // namespace artkit
