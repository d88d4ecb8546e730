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

#include "artkit/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace artkit {
namespace {

namespace pt = boost::property_tree;

void insert(KeyValues& kv, const std::string& key, const std::string& value) {
  if (!kv.emplace(key, value).second) {
    raise(ErrorCode::kConfigError, "duplicate key '" + key + "'");
  }
}

double as_double(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  raise(ErrorCode::kConfigError, "key '" + key + "' expects a number, got '" + v + "'");
}

int as_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  raise(ErrorCode::kConfigError, "key '" + key + "' expects an integer, got '" + v + "'");
}

bool as_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  raise(ErrorCode::kConfigError, "key '" + key + "' expects a boolean, got '" + v + "'");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string_view occupancy_name(Occupancy o) {
  switch (o) {
    case Occupancy::kSolidWithShell:
      return "solid";
    case Occupancy::kInteriorOnly:
      return "interior";
    case Occupancy::kSurfaceOnly:
      return "surface";
  }
  return "interior";
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    raise(ErrorCode::kConfigError, "line " + std::to_string(e.line()) + ": " + e.message());
  }
  KeyValues kv;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      insert(kv, key, node.data());
      continue;
    }
    for (const auto& [inner, leaf] : node) insert(kv, inner, leaf.data());
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kIoFailure, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_key_values(buf.str());
  } catch (const Error& e) {
    raise(e.code(), path.string() + ": " + e.what());
  }
}

RefinerConfig refiner_config_from(const KeyValues& kv, RefinerConfig c) {
  for (const auto& [key, v] : kv) {
    if (key == "steps") {
      c.steps = as_int(key, v);
    } else if (key == "grid_resolution") {
      c.grid_resolution = as_int(key, v);
    } else if (key == "tau") {
      c.tau = as_double(key, v);
    } else if (key == "eps_v") {
      c.eps_v = as_double(key, v);
    } else if (key == "rot_tolerance_deg") {
      c.rot_tolerance = deg_to_rad(as_double(key, v));
    } else if (key == "trans_tolerance") {
      c.trans_tolerance = as_double(key, v);
    } else if (key == "occupancy") {
      if (v == "solid") {
        c.occupancy = Occupancy::kSolidWithShell;
      } else if (v == "interior") {
        c.occupancy = Occupancy::kInteriorOnly;
      } else if (v == "surface") {
        c.occupancy = Occupancy::kSurfaceOnly;
      } else {
        raise(ErrorCode::kConfigError, "occupancy must be solid, interior or surface");
      }
    } else if (key == "parallel") {
      c.parallel = as_bool(key, v);
    } else {
      raise(ErrorCode::kConfigError, "unknown refiner key '" + key + "'");
    }
  }
  if (c.steps < 3) raise(ErrorCode::kConfigError, "steps must be at least 3");
  if (c.grid_resolution < 4) raise(ErrorCode::kConfigError, "grid_resolution must be at least 4");
  if (!(c.rot_tolerance > 0.0) || !(c.trans_tolerance > 0.0)) {
    raise(ErrorCode::kConfigError, "tolerances must be positive");
  }
  return c;
}

std::string to_key_values(const RefinerConfig& c) {
  std::ostringstream out;
  out << "steps = " << c.steps << "\n"
      << "grid_resolution = " << c.grid_resolution << "\n"
      << "tau = " << num(c.tau) << "\n"
      << "eps_v = " << num(c.eps_v) << "\n"
      << "rot_tolerance_deg = " << num(rad_to_deg(c.rot_tolerance)) << "\n"
      << "trans_tolerance = " << num(c.trans_tolerance) << "\n"
      << "occupancy = " << occupancy_name(c.occupancy) << "\n"
      << "parallel = " << (c.parallel ? "true" : "false") << "\n";
  return out.str();
}

FilterPolicy filter_policy_from(const KeyValues& kv, FilterPolicy p) {
  for (const auto& [key, v] : kv) {
    if (key == "max_joints") {
      p.max_joints = as_int(key, v);
    } else if (key == "min_part_volume_fraction") {
      p.min_part_volume_fraction = as_double(key, v);
    } else if (key == "excluded_categories") {
      p.excluded_categories.clear();
      std::stringstream in(v);
      std::string item;
      while (std::getline(in, item, ',')) {
        const size_t a = item.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const size_t b = item.find_last_not_of(" \t");
        p.excluded_categories.insert(item.substr(a, b - a + 1));
      }
    } else {
      raise(ErrorCode::kConfigError, "unknown filter key '" + key + "'");
    }
  }
  if (p.max_joints < 1) raise(ErrorCode::kConfigError, "max_joints must be at least 1");
  if (!(p.min_part_volume_fraction > 0.0 && p.min_part_volume_fraction < 1.0)) {
    raise(ErrorCode::kConfigError, "min_part_volume_fraction must lie in (0, 1)");
  }
  return p;
}

std::string to_key_values(const FilterPolicy& p) {
  std::string cats;
  for (const auto& c : p.excluded_categories) cats += (cats.empty() ? "" : ",") + c;
  return "max_joints = " + std::to_string(p.max_joints) + "\n" +
         "min_part_volume_fraction = " + num(p.min_part_volume_fraction) + "\n" +
         "excluded_categories = " + cats + "\n";
}

}  // namespace artkit
