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


#include "artkit/asset_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "artkit/mesh_io.hpp"

namespace artkit {
namespace {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIoFailure, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) raise(ErrorCode::kIoFailure, "cannot write " + path.string());
}

std::string strip_scheme(std::string name) {
  for (std::string_view scheme : {"package://", "file://"}) {
    if (name.rfind(scheme, 0) == 0) name.erase(0, scheme.size());
  }
  return name;
}

}  // namespace

fs::path sidecar_path(const fs::path& urdf_path) {
  fs::path p = urdf_path;
  p.replace_extension(".meta.json");
  return p;
}

ArticulatedObject load_urdf_file(const fs::path& urdf_path, Warnings* warnings) {
  const fs::path dir = urdf_path.parent_path();
  MeshResolver resolver = [dir](const std::string& filename) {
    fs::path p = strip_scheme(filename);
    if (p.is_relative()) p = dir / p;
    return load_mesh(p);
  };
  RawUrdfModel model;
  try {
    model = parse_urdf(read_text(urdf_path), resolver);
  } catch (const Error& e) {
    raise(e.code(), urdf_path.string() + ": " + e.what());
  }
  if (warnings != nullptr) {
    for (const std::string& w : model.warnings) warnings->push_back(urdf_path.string() + ": " + w);
  }
  return simplify(globalize(model, warnings));
}

Asset load_asset(const fs::path& urdf_path, Warnings* warnings) {
  Asset asset;
  asset.object = load_urdf_file(urdf_path, warnings);
  asset.meta.id = urdf_path.stem().string();
  const fs::path meta_path = sidecar_path(urdf_path);
  if (fs::exists(meta_path)) {
    try {
      const nlohmann::json j = nlohmann::json::parse(read_text(meta_path));
      asset.meta.id = j.value("id", asset.meta.id);
      if (j.contains("category") && j["category"].is_string()) {
        asset.meta.category = j["category"].get<std::string>();
      }
      asset.meta.source = j.value("source", std::string());
      if (j.contains("normalization")) {
        const auto& n = j["normalization"];
        asset.meta.normalization.scale = n.at("scale").get<double>();
        const auto off = n.at("offset").get<std::vector<double>>();
        if (off.size() != 3) raise(ErrorCode::kConfigError, "offset needs 3 values");
        asset.meta.normalization.offset = Vec3(off[0], off[1], off[2]);
      }
    } catch (const nlohmann::json::exception& e) {
      raise(ErrorCode::kConfigError, meta_path.string() + ": " + e.what());
    }
  }
  if (asset.meta.category) asset.object.category = asset.meta.category;
  return asset;
}

void save_asset(const fs::path& urdf_path, const ArticulatedObject& object,
                const AssetMeta& meta) {
  const fs::path dir = urdf_path.parent_path();
  const std::string mesh_dir = urdf_path.stem().string() + "_meshes";
  std::error_code ec;
  if (!dir.empty()) fs::create_directories(dir, ec);
  bool made_mesh_dir = false;
  MeshWriter writer = [&](const Link& link) {
    if (!made_mesh_dir) {
      fs::create_directories(dir / mesh_dir, ec);
      made_mesh_dir = true;
    }
    const std::string rel = mesh_dir + "/link_" + std::to_string(link.id) + ".obj";
    save_obj(dir / rel, *link.mesh);
    return rel;
  };
  const std::string name = meta.id.empty() ? urdf_path.stem().string() : meta.id;
  write_text(urdf_path, emit_urdf(object, writer, name));

  nlohmann::json j;
  j["id"] = name;
  j["category"] = meta.category ? nlohmann::json(*meta.category) : nlohmann::json(nullptr);
  j["source"] = meta.source;
  const Vec3& o = meta.normalization.offset;
  j["normalization"] = {{"scale", meta.normalization.scale}, {"offset", {o.x(), o.y(), o.z()}}};
  write_text(sidecar_path(urdf_path), j.dump(2) + "\n");
}

}  // namespace artkit
